#include <doctest.h>

#include <cmath>

#include "blockcr/types.hpp"
#include "test_support.hpp"

using namespace blockcr;
using testsup::make_block;
using testsup::make_herm;

TEST_CASE("minimal well-formed system") {
    std::vector<HermitianBlock> diag{make_herm(1, {Complex(2.0, 0.0)})};
    std::vector<Block> rhs{make_block(1, 1, {Complex(3.0, 0.0)})};
    BlockTridiagonalSystem sys(std::move(diag), {}, BlockVector(1, 1, std::move(rhs)));
    CHECK(sys.n() == 1);
    CHECK(sys.m() == 1);
    CHECK(sys.k() == 1);
}

TEST_CASE("sub must have length n-1") {
    std::vector<HermitianBlock> diag(3, HermitianBlock::identity(2));
    std::vector<Block> sub(3, Block(2, 2));
    CHECK_THROWS_AS(BlockTridiagonalSystem(diag, sub, BlockVector::zeros(3, 2, 1)), ShapeMismatch);
}

TEST_CASE("identity diagonal with zero coupling") {
    std::vector<HermitianBlock> diag(4, HermitianBlock::identity(2));
    std::vector<Block> sub(3, Block(2, 2));
    BlockTridiagonalSystem sys(diag, sub, BlockVector::zeros(4, 2, 1));
    CHECK(sys.n() == 4);
    CHECK(sys.m() == 2);
    CHECK(sys.k() == 1);
}

TEST_CASE("k = 0 right-hand side is legal") {
    std::vector<HermitianBlock> diag(2, HermitianBlock::identity(2));
    std::vector<Block> sub(1, Block(2, 2));
    BlockTridiagonalSystem sys(diag, sub, BlockVector(2, 2));
    CHECK(sys.k() == 0);
    CHECK_FALSE(sys.rhs().has_rhs());
}

TEST_CASE("blocks reject non-finite entries") {
    CHECK_THROWS_AS(
        Block::from_entries(1, 2, {Complex(1.0, 0.0), Complex(std::nan(""), 0.0)}),
        NonFiniteEntry);
}

TEST_CASE("hermitize keeps an already Hermitian block") {
    const Block raw = make_block(2, 2,
                                 {Complex(2.0, 0.0), Complex(1.0, 1.0),
                                  Complex(1.0, -1.0), Complex(3.0, 0.0)});
    const HermitianBlock h = hermitize(raw);
    CHECK(h.as_block() == raw);
}

TEST_CASE("hermitize averages round-off asymmetry into exact symmetry") {
    const Block raw = make_block(2, 2,
                                 {Complex(2.0, 0.0), Complex(1.0, 0.0),
                                  Complex(1.0 + 2e-13, 0.0), Complex(3.0, 0.0)});
    const HermitianBlock h = hermitize(raw);
    CHECK(h(0, 1).real() == doctest::Approx(1.0 + 1e-13).epsilon(1e-15));
    CHECK(testsup::exactly_hermitian(h.as_block()));
}

TEST_CASE("hermitize rejects gross asymmetry") {
    const Block raw = make_block(2, 2,
                                 {Complex(0.0, 0.0), Complex(1.0, 0.0),
                                  Complex(0.0, 0.0), Complex(0.0, 0.0)});
    CHECK_THROWS_AS(hermitize(raw), NotHermitian);
    try {
        hermitize(raw);
    } catch (const NotHermitian& e) {
        CHECK(e.max_asymmetry == doctest::Approx(1.0));
    }
}

TEST_CASE("from_exact rejects inexact symmetry") {
    const Block raw = make_block(2, 2,
                                 {Complex(2.0, 0.0), Complex(1.0, 0.0),
                                  Complex(1.0 + 2e-13, 0.0), Complex(3.0, 0.0)});
    CHECK_THROWS_AS(HermitianBlock::from_exact(raw), NotHermitian);
}

namespace {

BlockVector numbered_vector(std::size_t n, std::size_t m, std::size_t k, double base) {
    std::vector<Block> blocks;
    for (std::size_t b = 0; b < n; ++b) {
        Block blk(m, k);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                blk(i, j) = Complex(base + static_cast<double>(b), static_cast<double>(i + j));
            }
        }
        blocks.push_back(std::move(blk));
    }
    return BlockVector(m, k, std::move(blocks));
}

} // namespace

TEST_CASE("interleave by definition") {
    const BlockVector odd = numbered_vector(2, 1, 1, 0.0);   // (a, c)
    const BlockVector even = numbered_vector(2, 1, 1, 10.0); // (b, d)
    const BlockVector full = interleave(odd, even);
    REQUIRE(full.n_blocks() == 4);
    CHECK(full.block(0) == odd.block(0));
    CHECK(full.block(1) == even.block(0));
    CHECK(full.block(2) == odd.block(1));
    CHECK(full.block(3) == even.block(1));
}

TEST_CASE("interleave with odd count n = 5") {
    const BlockVector odd = numbered_vector(3, 1, 1, 0.0);
    const BlockVector even = numbered_vector(2, 1, 1, 10.0);
    const BlockVector full = interleave(odd, even);
    REQUIRE(full.n_blocks() == 5);
    CHECK(full.block(4) == odd.block(2));
}

TEST_CASE("interleave rejects bad counts and shapes") {
    CHECK_THROWS_AS(interleave(numbered_vector(1, 1, 1, 0.0), numbered_vector(3, 1, 1, 0.0)),
                    ShapeMismatch);
    CHECK_THROWS_AS(interleave(numbered_vector(2, 1, 1, 0.0), numbered_vector(2, 2, 1, 0.0)),
                    ShapeMismatch);
}

TEST_CASE("deinterleave basics") {
    const BlockVector full = numbered_vector(4, 1, 1, 0.0);
    const auto [odd, even] = deinterleave(full);
    REQUIRE(odd.n_blocks() == 2);
    REQUIRE(even.n_blocks() == 2);
    CHECK(odd.block(0) == full.block(0));
    CHECK(odd.block(1) == full.block(2));
    CHECK(even.block(0) == full.block(1));
    CHECK(even.block(1) == full.block(3));
}

TEST_CASE("deinterleave single block leaves even empty") {
    const BlockVector full = numbered_vector(1, 2, 1, 5.0);
    const auto [odd, even] = deinterleave(full);
    CHECK(odd.n_blocks() == 1);
    CHECK(even.n_blocks() == 0);
    CHECK(interleave(odd, even) == full);
}

TEST_CASE("interleave and deinterleave invert each other exhaustively") {
    blockcr::io::SplitMix64 rng(42);
    for (std::size_t n = 1; n <= 16; ++n) {
        for (std::size_t m = 1; m <= 3; ++m) {
            for (std::size_t k = 1; k <= 3; ++k) {
                std::vector<Block> blocks;
                for (std::size_t b = 0; b < n; ++b) {
                    blocks.push_back(testsup::random_block(m, k, rng));
                }
                const BlockVector full(m, k, std::move(blocks));
                const auto [odd, even] = deinterleave(full);
                CHECK(interleave(odd, even) == full);
            }
        }
    }
}
