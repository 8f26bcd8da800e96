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

#ifndef BLOCKCR_SOLVER_HPP
#define BLOCKCR_SOLVER_HPP

#include <cstddef>
#include <optional>
#include <utility>

#include "blockcr/types.hpp"

namespace blockcr {

struct SolveOptions {
    /// Recursion stops and a dense solve takes over once a system has at
    /// most this many blocks.
    std::size_t base_threshold = 4;
    /// Fork-join recursion and parallel block maps on/off. Output is
    /// bit-identical either way.
    bool parallel = true;
    /// When false, the returned SolveStats is left zeroed.
    bool collect_stats = true;
};

/// Counters describing the recursion. `levels` and `block_factorizations`
/// are critical-path quantities: sibling subtrees run concurrently, so the
/// children's contributions merge by maximum, giving block_factorizations
/// the bound n + n/2 + n/4 + ... <= 2n.
struct SolveStats {
    std::size_t levels = 0;
    std::size_t block_factorizations = 0;
    std::size_t base_case_dim = 0;
};

struct DefinitenessReport {
    bool positive_definite = false;
    /// (level, 1-based block index) of the first factorization failure;
    /// empty when positive_definite.
    std::optional<std::pair<std::size_t, std::size_t>> failure;
};

/// Recursive cyclic-reduction solve: splits into odd/even half systems until
/// the base threshold, dense-Cholesky-solves the leaves, solves the two
/// halves as a fork-join pair, and interleaves the partial solutions.
/// Requires k >= 1. Throws NotPositiveDefinite{level, block} when any
/// level's factorization (or a base-case pivot) breaks down.
std::pair<BlockVector, SolveStats> solve(const BlockTridiagonalSystem& system,
                                         const SolveOptions& opts = {});

/// Runs the same recursive factorization cascade with the right-hand side
/// stripped; indefiniteness is a result here, not an error. Returns true iff
/// every factorization at every level and every base case succeeds.
DefinitenessReport check_positive_definite(const BlockTridiagonalSystem& system,
                                           const SolveOptions& opts = {});

/// Dense direct solve of a small system: assembles the Nm x Nm Hermitian
/// matrix and runs dense Cholesky with forward/backward substitution over
/// all k columns (factorization only when k == 0). A nonpositive pivot p
/// (0-based) is reported as NotPositiveDefinite{0, p/m + 1}.
BlockVector base_solve(const BlockTridiagonalSystem& system);

} // namespace blockcr

#endif // BLOCKCR_SOLVER_HPP
