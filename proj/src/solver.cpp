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

#include "blockcr/solver.hpp"

#include <algorithm>
#include <exception>
#include <future>
#include <sstream>
#include <vector>

#include "blockcr/kernels.hpp"
#include "blockcr/parallel.hpp"
#include "blockcr/reduction.hpp"

namespace blockcr {

namespace {

struct RecOut {
    BlockVector x;
    SolveStats stats;
};

// Assembles the full Nm x Nm matrix with exact hermiticity: the lower block
// triangle is placed, the strict upper triangle is mirrored.
HermitianBlock assemble_hermitian(const BlockTridiagonalSystem& sys) {
    const std::size_t n = sys.n();
    const std::size_t m = sys.m();
    HermitianBuilder dense(n * m);
    for (std::size_t b = 0; b < n; ++b) {
        const HermitianBlock& a = sys.diag(b);
        for (std::size_t i = 0; i < m; ++i) {
            dense.set_diag(b * m + i, a(i, i).real());
            for (std::size_t j = 0; j < i; ++j) {
                dense.set_lower(b * m + i, b * m + j, a(i, j));
            }
        }
        if (b >= 1) {
            const Block& s = sys.sub(b - 1);
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) {
                    dense.set_lower(b * m + i, (b - 1) * m + j, s(i, j));
                }
            }
        }
    }
    return dense.finish();
}

BlockVector base_solve_at(const BlockTridiagonalSystem& sys, std::size_t level) {
    const std::size_t n = sys.n();
    const std::size_t m = sys.m();
    const std::size_t k = sys.k();
    const HermitianBlock dense = assemble_hermitian(sys);
    CholeskyFactor factor = [&] {
        try {
            return cholesky(dense);
        } catch (const Indefinite& e) {
            std::ostringstream os;
            os << "base case of " << n << " blocks is not positive definite (pivot row "
               << e.pivot_index << ")";
            throw NotPositiveDefinite(os.str(), level, e.pivot_index / m + 1);
        }
    }();
    if (k == 0) {
        return BlockVector(n, m);
    }
    Block stacked(n * m, k);
    for (std::size_t b = 0; b < n; ++b) {
        const Block& y = sys.rhs().block(b);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t c = 0; c < k; ++c) {
                stacked(b * m + i, c) = y(i, c);
            }
        }
    }
    const Block solution = solve_hermitian(factor, stacked);
    std::vector<Block> blocks;
    blocks.reserve(n);
    for (std::size_t b = 0; b < n; ++b) {
        Block xb(m, k);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t c = 0; c < k; ++c) {
                xb(i, c) = solution(b * m + i, c);
            }
        }
        blocks.push_back(std::move(xb));
    }
    return BlockVector(m, k, std::move(blocks));
}

RecOut solve_rec(const BlockTridiagonalSystem& sys, const SolveOptions& opts, std::size_t depth,
                 unsigned budget) {
    const std::size_t n = sys.n();
    if (n == 1 || n <= opts.base_threshold) {
        RecOut out{base_solve_at(sys, depth), SolveStats{}};
        out.stats.levels = 1;
        out.stats.block_factorizations = 0;
        out.stats.base_case_dim = n * sys.m();
        return out;
    }

    std::vector<CholeskyFactor> factors;
    try {
        factors = factor_level(sys, budget);
    } catch (const NotPositiveDefinite& e) {
        throw NotPositiveDefinite(e.what(), depth, e.block_index);
    }
    const SplitSystems halves = split_with_factors(sys, factors, budget);
    factors.clear();

    std::optional<RecOut> odd_out;
    std::optional<RecOut> even_out;
    std::exception_ptr odd_error;
    std::exception_ptr even_error;
    if (budget > 1) {
        const unsigned odd_budget = (budget + 1) / 2;
        const unsigned even_budget = budget - odd_budget;
        auto odd_future = std::async(std::launch::async, [&] {
            return solve_rec(halves.odd, opts, depth + 1, odd_budget);
        });
        try {
            even_out = solve_rec(halves.even, opts, depth + 1, even_budget > 0 ? even_budget : 1);
        } catch (...) {
            even_error = std::current_exception();
        }
        try {
            odd_out = odd_future.get();
        } catch (...) {
            odd_error = std::current_exception();
        }
    } else {
        try {
            odd_out = solve_rec(halves.odd, opts, depth + 1, 1);
        } catch (...) {
            odd_error = std::current_exception();
        }
        if (!odd_error) {
            try {
                even_out = solve_rec(halves.even, opts, depth + 1, 1);
            } catch (...) {
                even_error = std::current_exception();
            }
        }
    }
    // The odd half's failure wins when both halves fail, so the report does
    // not depend on scheduling.
    if (odd_error) {
        std::rethrow_exception(odd_error);
    }
    if (even_error) {
        std::rethrow_exception(even_error);
    }

    RecOut out{interleave(odd_out->x, even_out->x), SolveStats{}};
    out.stats.levels = 1 + std::max(odd_out->stats.levels, even_out->stats.levels);
    out.stats.block_factorizations =
        n + std::max(odd_out->stats.block_factorizations, even_out->stats.block_factorizations);
    out.stats.base_case_dim =
        std::max(odd_out->stats.base_case_dim, even_out->stats.base_case_dim);
    return out;
}

void validate_options(const SolveOptions& opts) {
    if (opts.base_threshold < 1) {
        throw ShapeMismatch("base_threshold must be at least 1");
    }
}

} // namespace

std::pair<BlockVector, SolveStats> solve(const BlockTridiagonalSystem& system,
                                         const SolveOptions& opts) {
    validate_options(opts);
    if (system.k() < 1) {
        throw ShapeMismatch("solve requires a right-hand side (k >= 1)");
    }
    RecOut out = solve_rec(system, opts, 0, par::default_budget(opts.parallel));
    if (!opts.collect_stats) {
        out.stats = SolveStats{};
    }
    return {std::move(out.x), out.stats};
}

DefinitenessReport check_positive_definite(const BlockTridiagonalSystem& system,
                                           const SolveOptions& opts) {
    validate_options(opts);
    const BlockTridiagonalSystem probe = system.k() == 0 ? system : system.without_rhs();
    try {
        solve_rec(probe, opts, 0, par::default_budget(opts.parallel));
    } catch (const NotPositiveDefinite& e) {
        return DefinitenessReport{false, std::make_pair(e.level, e.block_index)};
    }
    return DefinitenessReport{true, std::nullopt};
}

BlockVector base_solve(const BlockTridiagonalSystem& system) {
    return base_solve_at(system, 0);
}

} // namespace blockcr
