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

#ifndef BLOCKCR_RESIDUAL_HPP
#define BLOCKCR_RESIDUAL_HPP

#include "blockcr/types.hpp"

namespace blockcr {

/// Banded multiply A * x using the block structure; never assembles the
/// dense matrix, so it scales to large N.
BlockVector block_tridiagonal_matvec(const BlockTridiagonalSystem& system, const BlockVector& x);

double frobenius_norm(const BlockVector& v);
double frobenius_norm(const BlockTridiagonalSystem& system);

/// Scale-invariant residual ||Ax - y||_F / (||A||_F ||x||_F + ||y||_F).
double relative_residual(const BlockTridiagonalSystem& system, const BlockVector& x);

} // namespace blockcr

#endif // BLOCKCR_RESIDUAL_HPP
