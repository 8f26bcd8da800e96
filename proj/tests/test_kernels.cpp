#include <doctest.h>

#include <cmath>
#include <limits>

#include "blockcr/kernels.hpp"
#include "test_support.hpp"

using namespace blockcr;
using testsup::make_block;
using testsup::make_herm;

namespace {

// || L L^H - M ||_max
double reconstruction_error(const CholeskyFactor& l, const HermitianBlock& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            Complex sum(0.0, 0.0);
            for (std::size_t k = 0; k < m.dim(); ++k) {
                sum += l(i, k) * std::conj(l(j, k));
            }
            best = std::max(best, std::abs(sum - m(i, j)));
        }
    }
    return best;
}

double max_abs_herm(const HermitianBlock& m) {
    return testsup::max_abs(m.as_block());
}

// Orthonormal columns via modified Gram-Schmidt on a random complex matrix;
// test-only scaffolding for spectral constructions.
Block random_unitary(std::size_t m, io::SplitMix64& rng) {
    Block q = testsup::random_block(m, m, rng);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t prev = 0; prev < j; ++prev) {
            Complex proj(0.0, 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                proj += std::conj(q(i, prev)) * q(i, j);
            }
            for (std::size_t i = 0; i < m; ++i) {
                q(i, j) -= proj * q(i, prev);
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            norm += std::norm(q(i, j));
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < m; ++i) {
            q(i, j) /= norm;
        }
    }
    return q;
}

HermitianBlock from_spectrum(const Block& q, const std::vector<double>& eigs) {
    const std::size_t m = q.rows();
    HermitianBuilder a(m);
    for (std::size_t i = 0; i < m; ++i) {
        double d = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
            d += eigs[t] * std::norm(q(i, t));
        }
        a.set_diag(i, d);
        for (std::size_t j = 0; j < i; ++j) {
            Complex sum(0.0, 0.0);
            for (std::size_t t = 0; t < m; ++t) {
                sum += eigs[t] * q(i, t) * std::conj(q(j, t));
            }
            a.set_lower(i, j, sum);
        }
    }
    return a.finish();
}

} // namespace

TEST_CASE("cholesky of identity") {
    for (std::size_t m : {1, 2, 5}) {
        const CholeskyFactor l = cholesky(HermitianBlock::identity(m));
        CHECK(l.as_block() == Block::identity(m));
    }
}

TEST_CASE("cholesky of a diagonal matrix") {
    const CholeskyFactor l = cholesky(make_herm(2, {Complex(4.0, 0.0), Complex(0.0, 0.0),
                                                    Complex(0.0, 0.0), Complex(9.0, 0.0)}));
    CHECK(l(0, 0) == Complex(2.0, 0.0));
    CHECK(l(1, 1) == Complex(3.0, 0.0));
    CHECK(l(0, 1) == Complex(0.0, 0.0));
    CHECK(l(1, 0) == Complex(0.0, 0.0));
}

TEST_CASE("cholesky rejects a negative scalar") {
    try {
        cholesky(make_herm(1, {Complex(-1.0, 0.0)}));
        FAIL("expected Indefinite");
    } catch (const Indefinite& e) {
        CHECK(e.pivot_index == 0);
    }
}

TEST_CASE("cholesky reconstruction on random HPD blocks") {
    io::SplitMix64 rng(7);
    const HermitianBlock m = testsup::random_hpd_block(6, rng);
    const CholeskyFactor l = cholesky(m);
    CHECK(reconstruction_error(l, m) <= 1e-13 * max_abs_herm(m));
}

TEST_CASE("cholesky reconstruction bound up to m = 32") {
    io::SplitMix64 rng(11);
    for (std::size_t m : {2, 8, 17, 32}) {
        const HermitianBlock a = testsup::random_hpd_block(m, rng);
        const CholeskyFactor l = cholesky(a);
        const double eps = std::numeric_limits<double>::epsilon();
        CHECK(reconstruction_error(l, a) <=
              10.0 * eps * static_cast<double>(m) * max_abs_herm(a));
    }
}

TEST_CASE("cholesky flags every constructed negative eigenvalue") {
    io::SplitMix64 rng(13);
    for (std::size_t m : {2, 3, 5, 8}) {
        const Block q = random_unitary(m, rng);
        std::vector<double> eigs(m);
        for (std::size_t i = 0; i < m; ++i) {
            eigs[i] = 1.0 + rng.next_unit();
        }
        const std::size_t hole = rng.next_u64() % m;
        eigs[hole] = -1e-6 * 2.0; // margin well above 1e-6 * ||M||
        CHECK_THROWS_AS(cholesky(from_spectrum(q, eigs)), Indefinite);
        eigs[hole] = 1e-6;
        CHECK_NOTHROW(cholesky(from_spectrum(q, eigs)));
    }
}

TEST_CASE("solve_lower with identity factor") {
    const Block g = make_block(2, 2, {Complex(1.0, 2.0), Complex(3.0, 0.0),
                                      Complex(0.0, -1.0), Complex(4.0, 4.0)});
    CHECK(solve_lower(CholeskyFactor::identity(2), g) == g);
}

TEST_CASE("solve_lower 2x2 forward substitution by hand") {
    const CholeskyFactor l = CholeskyFactor::from_lower(
        make_block(2, 2, {Complex(2.0, 0.0), Complex(0.0, 0.0),
                          Complex(1.0, 0.0), Complex(1.0, 0.0)}));
    const Block g = make_block(2, 1, {Complex(2.0, 0.0), Complex(3.0, 0.0)});
    const Block x = solve_lower(l, g);
    CHECK(x(0, 0) == Complex(1.0, 0.0));
    CHECK(x(1, 0) == Complex(2.0, 0.0));
}

TEST_CASE("solve_lower residual on random data") {
    io::SplitMix64 rng(17);
    const HermitianBlock m = testsup::random_hpd_block(5, rng);
    const CholeskyFactor l = cholesky(m);
    const Block g = testsup::random_block(5, 3, rng);
    const Block x = solve_lower(l, g);
    const Block lx = matmul_acc(Complex(1.0, 0.0), l.as_block(), MatOp::plain, x, MatOp::plain,
                                Block(5, 3));
    CHECK(testsup::max_abs_diff(lx, g) <= 1e-13 * testsup::max_abs(g));
}

TEST_CASE("solve_hermitian basics") {
    const Block g = make_block(2, 1, {Complex(5.0, 1.0), Complex(-2.0, 0.0)});
    CHECK(solve_hermitian(CholeskyFactor::identity(2), g) == g);

    const CholeskyFactor l = cholesky(make_herm(1, {Complex(4.0, 0.0)}));
    const Block x = solve_hermitian(l, make_block(1, 1, {Complex(8.0, 0.0)}));
    CHECK(x(0, 0) == Complex(2.0, 0.0));
}

TEST_CASE("solve_hermitian residual on random HPD data") {
    io::SplitMix64 rng(19);
    const HermitianBlock m = testsup::random_hpd_block(6, rng);
    const CholeskyFactor l = cholesky(m);
    const Block g = testsup::random_block(6, 2, rng);
    const Block x = solve_hermitian(l, g);
    const Block mx = matmul_acc(Complex(1.0, 0.0), m.as_block(), MatOp::plain, x, MatOp::plain,
                                Block(6, 2));
    CHECK(testsup::max_abs_diff(mx, g) <= 1e-12 * max_abs_herm(m) * testsup::max_abs(x));
}

TEST_CASE("stable_schur_term with identity M") {
    io::SplitMix64 rng(23);
    const Block g = testsup::random_block(4, 2, rng);
    const HermitianBlock z = stable_schur_term(CholeskyFactor::identity(4), g);
    const Block ghg = matmul_acc(Complex(1.0, 0.0), g, MatOp::conj_transpose, g, MatOp::plain,
                                 Block(2, 2));
    CHECK(testsup::max_abs_diff(z.as_block(), ghg) <= 1e-14 * testsup::max_abs(ghg));
}

TEST_CASE("stable_schur_term scalar case") {
    const CholeskyFactor l = cholesky(make_herm(1, {Complex(4.0, 0.0)}));
    const HermitianBlock z = stable_schur_term(l, make_block(1, 1, {Complex(2.0, 0.0)}));
    CHECK(z(0, 0) == Complex(1.0, 0.0));
}

TEST_CASE("stable_schur_term matches the explicit product") {
    io::SplitMix64 rng(29);
    const HermitianBlock m = testsup::random_hpd_block(5, rng);
    const CholeskyFactor l = cholesky(m);
    const Block g = testsup::random_block(5, 3, rng);
    const HermitianBlock z = stable_schur_term(l, g);

    const Block minv_g = solve_hermitian(l, g);
    const Block explicit_z = matmul_acc(Complex(1.0, 0.0), g, MatOp::conj_transpose, minv_g,
                                        MatOp::plain, Block(3, 3));
    CHECK(testsup::max_abs_diff(z.as_block(), explicit_z) <= 1e-12 * testsup::max_abs(explicit_z));
    CHECK(testsup::exactly_hermitian(z.as_block()));
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(z(i, i).real() >= 0.0);
        CHECK(z(i, i).imag() == 0.0);
    }
}

TEST_CASE("matmul_acc identities") {
    io::SplitMix64 rng(31);
    const Block b = testsup::random_block(3, 2, rng);
    const Block r = matmul_acc(Complex(1.0, 0.0), Block::identity(3), MatOp::plain, b,
                               MatOp::plain, Block(3, 2));
    CHECK(r == b);

    const Block scalar = matmul_acc(Complex(-1.0, 0.0), make_block(1, 1, {Complex(2.0, 0.0)}),
                                    MatOp::plain, make_block(1, 1, {Complex(3.0, 0.0)}),
                                    MatOp::plain, make_block(1, 1, {Complex(10.0, 0.0)}));
    CHECK(scalar(0, 0) == Complex(4.0, 0.0));
}

TEST_CASE("matmul_acc against a naive reference over op combinations") {
    io::SplitMix64 rng(37);
    const std::size_t m = 4, inner = 3, p = 2;
    const Block a = testsup::random_block(m, inner, rng);
    const Block bt = testsup::random_block(p, inner, rng); // used conj-transposed
    const Block c = testsup::random_block(m, p, rng);
    const Complex alpha(0.7, -0.3);

    const Block got = matmul_acc(alpha, a, MatOp::plain, bt, MatOp::conj_transpose, c);

    Block want = c;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            Complex sum(0.0, 0.0);
            for (std::size_t t = 0; t < inner; ++t) {
                sum += a(i, t) * std::conj(bt(j, t));
            }
            want(i, j) += alpha * sum;
        }
    }
    CHECK(testsup::max_abs_diff(got, want) <= 1e-13 * testsup::max_abs(want));
}

TEST_CASE("matmul_acc rejects mismatched shapes") {
    CHECK_THROWS_AS(matmul_acc(Complex(1.0, 0.0), Block(2, 3), MatOp::plain, Block(2, 2),
                               MatOp::plain, Block(2, 2)),
                    ShapeMismatch);
    CHECK_THROWS_AS(matmul_acc(Complex(1.0, 0.0), Block(2, 3), MatOp::plain, Block(3, 2),
                               MatOp::plain, Block(3, 3)),
                    ShapeMismatch);
}
