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

#ifndef BLOCKCR_REDUCTION_HPP
#define BLOCKCR_REDUCTION_HPP

#include <span>
#include <vector>

#include "blockcr/kernels.hpp"
#include "blockcr/types.hpp"

namespace blockcr {

/// Factors every diagonal block A_i of the parent exactly once; the factors
/// are shared between all odd-side and even-side formulas that apply A_i^-1.
/// Throws NotPositiveDefinite{level = 0, block_index} for the lowest-indexed
/// (1-based) block whose Cholesky breaks down; the report does not depend on
/// the parallel schedule.
std::vector<CholeskyFactor> factor_level(const BlockTridiagonalSystem& parent,
                                         unsigned budget = 1);

/// One reduction level: builds the odd system (U_j, E_j, u_j) and the even
/// system (V_j, F_j, v_j) of half size from the parent, with out-of-range
/// subdiagonal blocks treated as zero. Requires parent.n() >= 2. The two
/// Hermitian subtraction terms inside every U_j and V_j go through
/// stable_schur_term, so the child diagonal blocks are exactly Hermitian.
/// Per-j outputs are independent: results are bit-identical for any budget.
SplitSystems split_with_factors(const BlockTridiagonalSystem& parent,
                                std::span<const CholeskyFactor> factors, unsigned budget = 1);

/// Convenience form that factors the level itself.
SplitSystems split(const BlockTridiagonalSystem& parent, unsigned budget = 1);

} // namespace blockcr

#endif // BLOCKCR_REDUCTION_HPP
