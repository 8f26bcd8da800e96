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

#ifndef BLOCKCR_ORACLE_HPP
#define BLOCKCR_ORACLE_HPP

#include "blockcr/types.hpp"

// Dense brute-force reference implementations, used only for testing and
// verification. Deliberately naive O((Nm)^3) routines written independently
// of the production kernels: the only shared code is the scalar type and the
// container definitions.

namespace blockcr::oracle {

class DenseMatrix {
public:
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

/// Dense Nm x Nm layout of the system: A_j on the block diagonal, B_j on the
/// block subdiagonal, B_j^H on the block superdiagonal, zeros elsewhere.
DenseMatrix assemble_dense(const BlockTridiagonalSystem& system);

/// Stacks the right-hand side (or any block vector) into an Nm x k matrix.
DenseMatrix stack_blocks(const BlockVector& v);

/// The block permutation matrix P for the odd/even reordering 1,3,5,...,2,4,6,...
DenseMatrix odd_even_permutation_matrix(std::size_t n_blocks, std::size_t m);

struct OddEvenPartition {
    DenseMatrix permuted; // P * A * P^T
    DenseMatrix d1;       // odd-odd quadrant, ceil(N/2)*m square
    DenseMatrix d2;       // even-even quadrant, floor(N/2)*m square
    DenseMatrix c;        // even-odd quadrant
};

/// Applies the block odd/even permutation and cuts the four quadrants. Pure
/// data movement: the quadrants reassemble the permuted matrix exactly.
OddEvenPartition permute_odd_even(const DenseMatrix& dense, std::size_t n_blocks, std::size_t m);

struct DenseSchur {
    DenseMatrix odd_matrix;  // D1 - C^H * D2^-1 * C
    DenseMatrix odd_rhs;     // y_o - C^H * D2^-1 * y_e
    DenseMatrix even_matrix; // D2 - C * D1^-1 * C^H
    DenseMatrix even_rhs;    // y_e - C * D1^-1 * y_o
};

/// Computes both half-size Schur-complement systems by dense factorization.
/// Throws DenseFactorizationFailed if D1 or D2 cannot be factored.
DenseSchur dense_schur(const BlockTridiagonalSystem& system);

/// Dense Cholesky solve of the full system, all k columns. Throws
/// DenseIndefinite{pivot_row} when the assembled matrix is not positive
/// definite.
BlockVector dense_solve(const BlockTridiagonalSystem& system);

/// True iff the assembled dense matrix passes dense Cholesky. This is the
/// referee used to certify generator output.
bool dense_definiteness_referee(const BlockTridiagonalSystem& system);

/// True iff the given Hermitian matrix passes dense Cholesky.
bool dense_cholesky_succeeds(const DenseMatrix& a);

// Small helpers for test code.
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix conj_transpose(const DenseMatrix& a);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
double max_abs(const DenseMatrix& a);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

} // namespace blockcr::oracle

#endif // BLOCKCR_ORACLE_HPP
