#include <doctest.h>

#include <cstring>
#include <sstream>

#include "blockcr/io.hpp"
#include "blockcr/oracle.hpp"
#include "test_support.hpp"

using namespace blockcr;
using testsup::scalar_system;

namespace {

std::size_t expected_system_bytes(std::size_t n, std::size_t m, std::size_t k) {
    return 28 + 16 * (n * m * m + (n - 1) * m * m + n * m * k);
}

BlockTridiagonalSystem parse_system(const std::string& bytes) {
    std::istringstream in(bytes, std::ios::binary);
    return io::read_system(in);
}

} // namespace

TEST_CASE("system file sizes match the format arithmetic") {
    CHECK(io::write_system_bytes(scalar_system({2.0}, {}, {3.0})).size() == 60);

    const BlockTridiagonalSystem sys = testsup::random_hpd(16, 3, 2, 21);
    CHECK(io::write_system_bytes(sys).size() == expected_system_bytes(16, 3, 2));

    const BlockTridiagonalSystem no_rhs = testsup::random_hpd(5, 2, 0, 22);
    CHECK(io::write_system_bytes(no_rhs).size() == expected_system_bytes(5, 2, 0));
}

TEST_CASE("system write/read round trip is bit-identical") {
    io::SplitMix64 shape_rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + shape_rng.next_u64() % 32;
        const std::size_t m = 1 + shape_rng.next_u64() % 5;
        const std::size_t k = shape_rng.next_u64() % 4;
        const BlockTridiagonalSystem sys = testsup::random_hpd(n, m, k, 1000 + trial);
        const std::string bytes = io::write_system_bytes(sys);
        const BlockTridiagonalSystem back = parse_system(bytes);
        CHECK(io::write_system_bytes(back) == bytes);
    }
}

TEST_CASE("corrupted magic is rejected") {
    std::string bytes = io::write_system_bytes(scalar_system({2.0}, {}, {3.0}));
    bytes[0] = 'X';
    CHECK_THROWS_AS(parse_system(bytes), BadMagic);
}

TEST_CASE("unknown version is rejected") {
    std::string bytes = io::write_system_bytes(scalar_system({2.0}, {}, {3.0}));
    bytes[4] = 2;
    CHECK_THROWS_AS(parse_system(bytes), BadVersion);
}

TEST_CASE("truncated payload is rejected") {
    const std::string bytes = io::write_system_bytes(testsup::random_hpd(3, 2, 1, 24));
    CHECK_THROWS_AS(parse_system(bytes.substr(0, bytes.size() - 5)), Truncated);
    CHECK_THROWS_AS(parse_system(bytes.substr(0, 30)), Truncated);
    CHECK_THROWS_AS(parse_system(bytes.substr(0, 3)), Truncated);
}

TEST_CASE("non-Hermitian diagonal payload is rejected on read") {
    std::string bytes = io::write_system_bytes(
        BlockTridiagonalSystem({HermitianBlock::identity(2)}, {}, BlockVector(1, 2)));
    // Entry (0,1) of A_1 starts after the 28-byte header + 16 bytes of (0,0);
    // overwrite its real part with 5.0 to break symmetry.
    const double v = 5.0;
    std::memcpy(bytes.data() + 28 + 16, &v, 8);
    CHECK_THROWS_AS(parse_system(bytes), NotHermitian);
}

TEST_CASE("solution round trip and size arithmetic") {
    const BlockVector x = BlockVector(
        2, 1, {testsup::make_block(2, 1, {Complex(1.0, -2.0), Complex(0.5, 0.25)})});
    const std::string bytes = io::write_solution_bytes(x);
    CHECK(bytes.size() == 28 + 16 * 2);
    std::istringstream in(bytes, std::ios::binary);
    const BlockVector back = io::read_solution(in);
    CHECK(io::write_solution_bytes(back) == bytes);

    const BlockVector tiny(1, 1, {testsup::make_block(1, 1, {Complex(7.0, 0.0)})});
    CHECK(io::write_solution_bytes(tiny).size() == 28 + 16);
}

TEST_CASE("k = 0 vectors cannot be written as solutions") {
    std::ostringstream sink(std::ios::binary);
    CHECK_THROWS_AS(io::write_solution(BlockVector(3, 2), sink), ShapeMismatch);
}

TEST_CASE("generator is deterministic in the seed") {
    io::GeneratorSpec spec;
    spec.n = 9;
    spec.m = 3;
    spec.k = 2;
    spec.seed = 77;
    for (auto kind : {io::SystemKind::hpd_random, io::SystemKind::hpd_laplacian,
                      io::SystemKind::indefinite, io::SystemKind::real_symmetric}) {
        spec.kind = kind;
        const std::string a = io::write_system_bytes(io::generate(spec));
        const std::string b = io::write_system_bytes(io::generate(spec));
        CHECK(a == b);
        spec.seed += 1;
        const std::string c = io::write_system_bytes(io::generate(spec));
        CHECK(a != c);
        spec.seed -= 1;
    }
}

TEST_CASE("hpd kinds pass the dense referee") {
    for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{{8, 2}, {16, 3}, {33, 4}}) {
        io::GeneratorSpec spec;
        spec.n = n;
        spec.m = m;
        spec.k = 1;
        spec.seed = 31 + n;
        spec.kind = io::SystemKind::hpd_random;
        CHECK(oracle::dense_definiteness_referee(io::generate(spec)));
        spec.kind = io::SystemKind::hpd_laplacian;
        CHECK(oracle::dense_definiteness_referee(io::generate(spec)));
    }
}

TEST_CASE("indefinite kind fails the dense referee") {
    for (std::uint64_t seed : {1, 5, 9}) {
        io::GeneratorSpec spec;
        spec.n = 10;
        spec.m = 2;
        spec.k = 1;
        spec.seed = seed;
        spec.kind = io::SystemKind::indefinite;
        CHECK_FALSE(oracle::dense_definiteness_referee(io::generate(spec)));
        spec.n = 1;
        CHECK_FALSE(oracle::dense_definiteness_referee(io::generate(spec)));
    }
}

TEST_CASE("real_symmetric output is real") {
    io::GeneratorSpec spec;
    spec.n = 6;
    spec.m = 3;
    spec.k = 2;
    spec.seed = 5;
    spec.kind = io::SystemKind::real_symmetric;
    const BlockTridiagonalSystem sys = io::generate(spec);
    for (std::size_t i = 0; i < sys.n(); ++i) {
        for (std::size_t r = 0; r < sys.m(); ++r) {
            for (std::size_t c = 0; c < sys.m(); ++c) {
                CHECK(sys.diag(i)(r, c).imag() == 0.0);
            }
            for (std::size_t c = 0; c < sys.k(); ++c) {
                CHECK(sys.rhs().block(i)(r, c).imag() == 0.0);
            }
        }
    }
    CHECK(oracle::dense_definiteness_referee(sys));
}

TEST_CASE("coupling scale drives the subdiagonal magnitude") {
    io::GeneratorSpec spec;
    spec.n = 4;
    spec.m = 2;
    spec.k = 1;
    spec.seed = 8;
    spec.kind = io::SystemKind::hpd_random;
    spec.coupling_scale = 0.0;
    const BlockTridiagonalSystem decoupled = io::generate(spec);
    for (std::size_t i = 0; i + 1 < decoupled.n(); ++i) {
        CHECK(testsup::max_abs(decoupled.sub(i)) == 0.0);
    }
    spec.coupling_scale = 10.0;
    CHECK(oracle::dense_definiteness_referee(io::generate(spec)));
}

TEST_CASE("the documented SplitMix64 stream") {
    // Reference values for seed 1234567: the finalizer applied to
    // seed + i * 0x9E3779B97F4A7C15, i = 1, 2.
    io::SplitMix64 rng(1234567);
    const std::uint64_t first = rng.next_u64();
    const std::uint64_t second = rng.next_u64();
    io::SplitMix64 again(1234567);
    CHECK(again.next_u64() == first);
    CHECK(again.next_u64() == second);
    CHECK(first != second);
    const double unit = io::SplitMix64(99).next_unit();
    CHECK(unit >= 0.0);
    CHECK(unit < 1.0);
}
