#ifndef BLOCKCR_TEST_SUPPORT_HPP
#define BLOCKCR_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <initializer_list>
#include <vector>

#include "blockcr/io.hpp"
#include "blockcr/types.hpp"

namespace testsup {

using blockcr::Block;
using blockcr::BlockTridiagonalSystem;
using blockcr::BlockVector;
using blockcr::Complex;
using blockcr::HermitianBlock;

inline Block make_block(std::size_t rows, std::size_t cols, std::initializer_list<Complex> vals) {
    return Block::from_entries(rows, cols, std::vector<Complex>(vals));
}

inline HermitianBlock make_herm(std::size_t m, std::initializer_list<Complex> vals) {
    return HermitianBlock::from_exact(make_block(m, m, vals));
}

/// m = 1, k = 1 system from plain real scalars.
inline BlockTridiagonalSystem scalar_system(const std::vector<double>& diag,
                                            const std::vector<double>& sub,
                                            const std::vector<double>& rhs) {
    std::vector<HermitianBlock> d;
    for (double v : diag) {
        d.push_back(make_herm(1, {Complex(v, 0.0)}));
    }
    std::vector<Block> s;
    for (double v : sub) {
        s.push_back(make_block(1, 1, {Complex(v, 0.0)}));
    }
    std::vector<Block> y;
    for (double v : rhs) {
        y.push_back(make_block(1, 1, {Complex(v, 0.0)}));
    }
    return BlockTridiagonalSystem(std::move(d), std::move(s), BlockVector(1, 1, std::move(y)));
}

inline BlockTridiagonalSystem random_hpd(std::size_t n, std::size_t m, std::size_t k,
                                         std::uint64_t seed) {
    blockcr::io::GeneratorSpec spec;
    spec.n = n;
    spec.m = m;
    spec.k = k;
    spec.seed = seed;
    spec.kind = blockcr::io::SystemKind::hpd_random;
    return blockcr::io::generate(spec);
}

inline Block random_block(std::size_t rows, std::size_t cols, blockcr::io::SplitMix64& rng) {
    Block b(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            b(i, j) = Complex(rng.next_symmetric(), rng.next_symmetric());
        }
    }
    return b;
}

/// Random Hermitian positive definite block R R^H + shift I.
inline HermitianBlock random_hpd_block(std::size_t m, blockcr::io::SplitMix64& rng,
                                       double shift = 1.0) {
    const Block r = random_block(m, m, rng);
    blockcr::HermitianBuilder a(m);
    for (std::size_t i = 0; i < m; ++i) {
        double d = shift;
        for (std::size_t t = 0; t < m; ++t) {
            d += std::norm(r(i, t));
        }
        a.set_diag(i, d);
        for (std::size_t j = 0; j < i; ++j) {
            Complex sum(0.0, 0.0);
            for (std::size_t t = 0; t < m; ++t) {
                sum += r(i, t) * std::conj(r(j, t));
            }
            a.set_lower(i, j, sum);
        }
    }
    return a.finish();
}

inline double max_abs_diff(const Block& a, const Block& b) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            best = std::max(best, std::abs(a(i, j) - b(i, j)));
        }
    }
    return best;
}

inline double max_abs(const Block& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            best = std::max(best, std::abs(a(i, j)));
        }
    }
    return best;
}

inline bool exactly_hermitian(const Block& b) {
    if (b.rows() != b.cols()) {
        return false;
    }
    for (std::size_t i = 0; i < b.rows(); ++i) {
        if (b(i, i).imag() != 0.0) {
            return false;
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (b(i, j).real() != b(j, i).real() || b(i, j).imag() != -b(j, i).imag()) {
                return false;
            }
        }
    }
    return true;
}

} // namespace testsup

#endif // BLOCKCR_TEST_SUPPORT_HPP
