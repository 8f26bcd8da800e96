/*
 * Copyright 2026 the blockcr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "blockcr/residual.hpp"

#include <cmath>

#include "blockcr/kernels.hpp"

namespace blockcr {

BlockVector block_tridiagonal_matvec(const BlockTridiagonalSystem& system, const BlockVector& x) {
    const std::size_t n = system.n();
    if (x.n_blocks() != n || x.block_rows() != system.m() || !x.has_rhs()) {
        throw ShapeMismatch("matvec: x does not match the system shape");
    }
    std::vector<Block> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Block r = matmul_acc(Complex(1.0, 0.0), system.diag(i).as_block(), MatOp::plain,
                             x.block(i), MatOp::plain, Block(system.m(), x.block_cols()));
        if (i >= 1) {
            r = matmul_acc(Complex(1.0, 0.0), system.sub(i - 1), MatOp::plain, x.block(i - 1),
                           MatOp::plain, std::move(r));
        }
        if (i + 1 < n) {
            r = matmul_acc(Complex(1.0, 0.0), system.sub(i), MatOp::conj_transpose, x.block(i + 1),
                           MatOp::plain, std::move(r));
        }
        out.push_back(std::move(r));
    }
    return BlockVector(x.block_rows(), x.block_cols(), std::move(out));
}

namespace {

double squared_frobenius(const Block& b) {
    double s = 0.0;
    for (const Complex& z : b.entries()) {
        s += std::norm(z);
    }
    return s;
}

} // namespace

double frobenius_norm(const BlockVector& v) {
    if (!v.has_rhs()) {
        return 0.0;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < v.n_blocks(); ++i) {
        s += squared_frobenius(v.block(i));
    }
    return std::sqrt(s);
}

double frobenius_norm(const BlockTridiagonalSystem& system) {
    double s = 0.0;
    for (std::size_t i = 0; i < system.n(); ++i) {
        s += squared_frobenius(system.diag(i).as_block());
    }
    for (std::size_t i = 0; i + 1 < system.n(); ++i) {
        s += 2.0 * squared_frobenius(system.sub(i)); // B_i and B_i^H
    }
    return std::sqrt(s);
}

double relative_residual(const BlockTridiagonalSystem& system, const BlockVector& x) {
    if (system.k() < 1) {
        throw ShapeMismatch("relative_residual requires a right-hand side");
    }
    const BlockVector ax = block_tridiagonal_matvec(system, x);
    double rnorm_sq = 0.0;
    for (std::size_t i = 0; i < system.n(); ++i) {
        const Block& a = ax.block(i);
        const Block& y = system.rhs().block(i);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            for (std::size_t c = 0; c < a.cols(); ++c) {
                rnorm_sq += std::norm(a(r, c) - y(r, c));
            }
        }
    }
    const double denom = frobenius_norm(system) * frobenius_norm(x) +
                         frobenius_norm(system.rhs());
    if (denom == 0.0) {
        return std::sqrt(rnorm_sq);
    }
    return std::sqrt(rnorm_sq) / denom;
}

} // namespace blockcr
