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

#ifndef BLOCKCR_KERNELS_HPP
#define BLOCKCR_KERNELS_HPP

#include "blockcr/types.hpp"

namespace blockcr {

/// Lower-triangular Cholesky factor L with L * L^H equal to the factored
/// Hermitian matrix. Diagonal entries are real and strictly positive;
/// strictly-upper entries are exactly zero.
class CholeskyFactor {
public:
    /// Wraps an explicit lower-triangular factor (tests and callers that
    /// build L by hand). Validates triangularity and positive real diagonal.
    static CholeskyFactor from_lower(Block lower);

    static CholeskyFactor identity(std::size_t m);

    std::size_t dim() const { return lower_.rows(); }
    const Complex& operator()(std::size_t i, std::size_t j) const { return lower_(i, j); }
    const Block& as_block() const { return lower_; }

private:
    friend CholeskyFactor cholesky(const HermitianBlock& matrix);
    explicit CholeskyFactor(Block lower) : lower_(std::move(lower)) {}
    Block lower_;
};

/// Factors the Hermitian matrix as L * L^H. Throws Indefinite{pivot_index}
/// at the first row whose pivot, after subtraction of prior contributions,
/// is <= 0 or non-finite -- strictly, with no tolerance. A breakdown here is
/// the certificate that the matrix is not positive definite.
CholeskyFactor cholesky(const HermitianBlock& matrix);

/// Forward substitution: returns X with L * X = rhs (all columns).
Block solve_lower(const CholeskyFactor& factor, const Block& rhs);

/// Full solve through the factorization: returns M^-1 * rhs via forward
/// substitution with L and backward substitution with L^H.
Block solve_hermitian(const CholeskyFactor& factor, const Block& rhs);

/// The numerically stable evaluation of Z = G^H * M^-1 * G given M = L*L^H:
/// computes Gt = L \ G and returns Gt^H * Gt. Only the lower triangle is
/// computed; the mirror makes Z exactly Hermitian, and Z is positive
/// semidefinite by construction.
HermitianBlock stable_schur_term(const CholeskyFactor& factor, const Block& g);

enum class MatOp {
    plain,
    conj_transpose,
};

/// General multiply-accumulate: returns alpha * op_a(a) * op_b(b) + c.
/// Inner dimensions must agree after the requested transpositions and c must
/// already have the result shape.
Block matmul_acc(Complex alpha, const Block& a, MatOp op_a, const Block& b, MatOp op_b,
                 Block c);

} // namespace blockcr

#endif // BLOCKCR_KERNELS_HPP
