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

#include "blockcr/oracle.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace blockcr::oracle {

namespace {

// Dense in-place lower Cholesky. Returns the pivot row on breakdown,
// rows() on success. Written against DenseMatrix on purpose: this routine
// must not share code with the production kernels it referees.
std::size_t dense_cholesky_in_place(DenseMatrix& a) {
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Complex sum = a(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                sum -= a(i, k) * std::conj(a(j, k));
            }
            a(i, j) = sum / a(j, j).real();
        }
        double pivot = a(i, i).real();
        for (std::size_t k = 0; k < i; ++k) {
            pivot -= std::norm(a(i, k));
        }
        if (!(pivot > 0.0) || !std::isfinite(pivot)) {
            return i;
        }
        a(i, i) = Complex(std::sqrt(pivot), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = Complex(0.0, 0.0);
        }
    }
    return n;
}

// Solves L L^H x = b for all columns, overwriting b.
void dense_cholesky_solve(const DenseMatrix& l, DenseMatrix& b) {
    const std::size_t n = l.rows();
    const std::size_t k = b.cols();
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            Complex sum = b(i, c);
            for (std::size_t t = 0; t < i; ++t) {
                sum -= l(i, t) * b(t, c);
            }
            b(i, c) = sum / l(i, i).real();
        }
        for (std::size_t ii = n; ii-- > 0;) {
            Complex sum = b(ii, c);
            for (std::size_t t = ii + 1; t < n; ++t) {
                sum -= std::conj(l(t, ii)) * b(t, c);
            }
            b(ii, c) = sum / l(ii, ii).real();
        }
    }
}

DenseMatrix extract(const DenseMatrix& a, std::size_t row0, std::size_t col0, std::size_t rows,
                    std::size_t cols) {
    DenseMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            out(i, j) = a(row0 + i, col0 + j);
        }
    }
    return out;
}

} // namespace

DenseMatrix assemble_dense(const BlockTridiagonalSystem& system) {
    const std::size_t n = system.n();
    const std::size_t m = system.m();
    DenseMatrix out(n * m, n * m);
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                out(b * m + i, b * m + j) = system.diag(b)(i, j);
            }
        }
    }
    for (std::size_t b = 0; b + 1 < n; ++b) {
        const Block& s = system.sub(b);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                out((b + 1) * m + i, b * m + j) = s(i, j);
                out(b * m + j, (b + 1) * m + i) = std::conj(s(i, j));
            }
        }
    }
    return out;
}

DenseMatrix stack_blocks(const BlockVector& v) {
    if (!v.has_rhs()) {
        throw ShapeMismatch("stack_blocks: vector has no stored blocks (k = 0)");
    }
    const std::size_t m = v.block_rows();
    const std::size_t k = v.block_cols();
    DenseMatrix out(v.n_blocks() * m, k);
    for (std::size_t b = 0; b < v.n_blocks(); ++b) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t c = 0; c < k; ++c) {
                out(b * m + i, c) = v.block(b)(i, c);
            }
        }
    }
    return out;
}

namespace {

// Block order 1,3,5,...,2,4,6,... as 0-based source indices.
std::vector<std::size_t> odd_even_order(std::size_t n_blocks) {
    std::vector<std::size_t> order;
    order.reserve(n_blocks);
    for (std::size_t b = 0; b < n_blocks; b += 2) {
        order.push_back(b);
    }
    for (std::size_t b = 1; b < n_blocks; b += 2) {
        order.push_back(b);
    }
    return order;
}

} // namespace

DenseMatrix odd_even_permutation_matrix(std::size_t n_blocks, std::size_t m) {
    const std::vector<std::size_t> order = odd_even_order(n_blocks);
    DenseMatrix p(n_blocks * m, n_blocks * m);
    for (std::size_t b = 0; b < n_blocks; ++b) {
        for (std::size_t i = 0; i < m; ++i) {
            p(b * m + i, order[b] * m + i) = Complex(1.0, 0.0);
        }
    }
    return p;
}

OddEvenPartition permute_odd_even(const DenseMatrix& dense, std::size_t n_blocks, std::size_t m) {
    if (dense.rows() != n_blocks * m || dense.cols() != n_blocks * m) {
        throw ShapeMismatch("permute_odd_even: matrix is not n_blocks*m square");
    }
    const std::vector<std::size_t> order = odd_even_order(n_blocks);
    DenseMatrix permuted(n_blocks * m, n_blocks * m);
    for (std::size_t bi = 0; bi < n_blocks; ++bi) {
        for (std::size_t bj = 0; bj < n_blocks; ++bj) {
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) {
                    permuted(bi * m + i, bj * m + j) = dense(order[bi] * m + i, order[bj] * m + j);
                }
            }
        }
    }
    const std::size_t odd_dim = ((n_blocks + 1) / 2) * m;
    const std::size_t even_dim = (n_blocks / 2) * m;
    return OddEvenPartition{
        permuted,
        extract(permuted, 0, 0, odd_dim, odd_dim),
        extract(permuted, odd_dim, odd_dim, even_dim, even_dim),
        extract(permuted, odd_dim, 0, even_dim, odd_dim),
    };
}

DenseSchur dense_schur(const BlockTridiagonalSystem& system) {
    const std::size_t n = system.n();
    const std::size_t m = system.m();
    if (n < 2) {
        throw ShapeMismatch("dense_schur requires at least 2 blocks");
    }
    OddEvenPartition part = permute_odd_even(assemble_dense(system), n, m);
    const DenseMatrix ct = conj_transpose(part.c);

    DenseMatrix l1 = part.d1;
    std::size_t pivot = dense_cholesky_in_place(l1);
    if (pivot != l1.rows()) {
        std::ostringstream os;
        os << "dense factorization of D1 failed at pivot " << pivot;
        throw DenseFactorizationFailed(os.str(), pivot);
    }
    DenseMatrix l2 = part.d2;
    pivot = dense_cholesky_in_place(l2);
    if (pivot != l2.rows()) {
        std::ostringstream os;
        os << "dense factorization of D2 failed at pivot " << pivot;
        throw DenseFactorizationFailed(os.str(), pivot);
    }

    // U = D1 - C^H D2^-1 C
    DenseMatrix d2inv_c = part.c;
    dense_cholesky_solve(l2, d2inv_c);
    DenseMatrix odd_matrix = subtract(part.d1, multiply(ct, d2inv_c));

    // V = D2 - C D1^-1 C^H
    DenseMatrix d1inv_ct = ct;
    dense_cholesky_solve(l1, d1inv_ct);
    DenseMatrix even_matrix = subtract(part.d2, multiply(part.c, d1inv_ct));

    const std::size_t k = system.k();
    DenseMatrix odd_rhs(odd_matrix.rows(), k);
    DenseMatrix even_rhs(even_matrix.rows(), k);
    if (k > 0) {
        auto [odd_vec, even_vec] = deinterleave(system.rhs());
        const DenseMatrix yo = stack_blocks(odd_vec);
        const DenseMatrix ye = stack_blocks(even_vec);
        DenseMatrix d2inv_ye = ye;
        dense_cholesky_solve(l2, d2inv_ye);
        odd_rhs = subtract(yo, multiply(ct, d2inv_ye));
        DenseMatrix d1inv_yo = yo;
        dense_cholesky_solve(l1, d1inv_yo);
        even_rhs = subtract(ye, multiply(part.c, d1inv_yo));
    }
    return DenseSchur{odd_matrix, odd_rhs, even_matrix, even_rhs};
}

BlockVector dense_solve(const BlockTridiagonalSystem& system) {
    if (system.k() < 1) {
        throw ShapeMismatch("dense_solve requires a right-hand side");
    }
    const std::size_t n = system.n();
    const std::size_t m = system.m();
    const std::size_t k = system.k();
    DenseMatrix l = assemble_dense(system);
    const std::size_t pivot = dense_cholesky_in_place(l);
    if (pivot != l.rows()) {
        std::ostringstream os;
        os << "assembled matrix is not positive definite (pivot row " << pivot << ")";
        throw DenseIndefinite(os.str(), pivot);
    }
    DenseMatrix x = stack_blocks(system.rhs());
    dense_cholesky_solve(l, x);
    std::vector<Block> blocks;
    blocks.reserve(n);
    for (std::size_t b = 0; b < n; ++b) {
        Block xb(m, k);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t c = 0; c < k; ++c) {
                xb(i, c) = x(b * m + i, c);
            }
        }
        blocks.push_back(std::move(xb));
    }
    return BlockVector(m, k, std::move(blocks));
}

bool dense_definiteness_referee(const BlockTridiagonalSystem& system) {
    DenseMatrix l = assemble_dense(system);
    return dense_cholesky_in_place(l) == l.rows();
}

bool dense_cholesky_succeeds(const DenseMatrix& a) {
    DenseMatrix l = a;
    return dense_cholesky_in_place(l) == l.rows();
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeMismatch("dense multiply: inner dimensions differ");
    }
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex sum(0.0, 0.0);
            for (std::size_t k = 0; k < a.cols(); ++k) {
                sum += a(i, k) * b(k, j);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

DenseMatrix conj_transpose(const DenseMatrix& a) {
    DenseMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatch("dense subtract: shapes differ");
    }
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j) - b(i, j);
        }
    }
    return out;
}

double max_abs(const DenseMatrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            best = std::max(best, std::abs(a(i, j)));
        }
    }
    return best;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatch("max_abs_diff: shapes differ");
    }
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            best = std::max(best, std::abs(a(i, j) - b(i, j)));
        }
    }
    return best;
}

} // namespace blockcr::oracle
