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

#include "blockcr/reduction.hpp"

#include <optional>
#include <sstream>

#include "blockcr/parallel.hpp"

namespace blockcr {

namespace {

// A - t1 - t2 on the lower triangle, mirrored: exactly Hermitian by
// construction, evaluated left to right as the formulas are written.
HermitianBlock hermitian_sub(const HermitianBlock& a, const HermitianBlock* t1,
                             const HermitianBlock* t2) {
    const std::size_t m = a.dim();
    HermitianBuilder out(m);
    for (std::size_t i = 0; i < m; ++i) {
        double d = a(i, i).real();
        if (t1 != nullptr) {
            d -= (*t1)(i, i).real();
        }
        if (t2 != nullptr) {
            d -= (*t2)(i, i).real();
        }
        out.set_diag(i, d);
        for (std::size_t j = 0; j < i; ++j) {
            Complex v = a(i, j);
            if (t1 != nullptr) {
                v -= (*t1)(i, j);
            }
            if (t2 != nullptr) {
                v -= (*t2)(i, j);
            }
            out.set_lower(i, j, v);
        }
    }
    return out.finish();
}

} // namespace

std::vector<CholeskyFactor> factor_level(const BlockTridiagonalSystem& parent, unsigned budget) {
    const std::size_t n = parent.n();
    std::vector<std::optional<CholeskyFactor>> slots(n);
    std::vector<unsigned char> failed(n, 0);
    par::parallel_for(n, budget, [&](std::size_t i) {
        try {
            slots[i] = cholesky(parent.diag(i));
        } catch (const Indefinite&) {
            failed[i] = 1;
        }
    });
    for (std::size_t i = 0; i < n; ++i) {
        if (failed[i]) {
            std::ostringstream os;
            os << "diagonal block " << (i + 1) << " is not positive definite";
            throw NotPositiveDefinite(os.str(), 0, i + 1);
        }
    }
    std::vector<CholeskyFactor> factors;
    factors.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        factors.push_back(std::move(*slots[i]));
    }
    return factors;
}

SplitSystems split_with_factors(const BlockTridiagonalSystem& parent,
                                std::span<const CholeskyFactor> factors, unsigned budget) {
    const std::size_t n = parent.n();
    if (n < 2) {
        throw ShapeMismatch("split requires a parent with at least 2 blocks");
    }
    if (factors.size() != n) {
        throw ShapeMismatch("split: factor count does not match parent block count");
    }
    const std::size_t m = parent.m();
    const std::size_t k = parent.k();
    const std::size_t n_odd = (n + 1) / 2;
    const std::size_t n_even = n / 2;

    std::vector<std::optional<HermitianBlock>> odd_diag(n_odd);
    std::vector<std::optional<Block>> odd_sub(n_odd - 1);
    std::vector<std::optional<Block>> odd_rhs(k > 0 ? n_odd : 0);
    std::vector<std::optional<HermitianBlock>> even_diag(n_even);
    std::vector<std::optional<Block>> even_sub(n_even - 1);
    std::vector<std::optional<Block>> even_rhs(k > 0 ? n_even : 0);

    // One task per output block row; odd rows come first, then even rows.
    // Parent index of odd row j is 2j, of even row j is 2j+1 (0-based).
    par::parallel_for(n_odd + n_even, budget, [&](std::size_t t) {
        if (t < n_odd) {
            const std::size_t j = t;
            const std::size_t i = 2 * j;
            const bool has_left = i >= 1;        // B_{2j-2} exists
            const bool has_right = i + 1 < n;    // B_{2j-1} exists

            std::optional<HermitianBlock> t1;
            std::optional<HermitianBlock> t2;
            if (has_left) {
                t1 = stable_schur_term(factors[i - 1], conj_transpose(parent.sub(i - 1)));
            }
            if (has_right) {
                t2 = stable_schur_term(factors[i + 1], parent.sub(i));
            }
            odd_diag[j] = hermitian_sub(parent.diag(i), t1 ? &*t1 : nullptr,
                                        t2 ? &*t2 : nullptr);

            if (j + 1 < n_odd) {
                // E_j = -B_{2j} * A_{2j}^-1 * B_{2j-1}
                Block w = solve_hermitian(factors[i + 1], parent.sub(i));
                odd_sub[j] = matmul_acc(Complex(-1.0, 0.0), parent.sub(i + 1), MatOp::plain, w,
                                        MatOp::plain, Block(m, m));
            }

            if (k > 0) {
                Block u = parent.rhs().block(i);
                if (has_left) {
                    Block w = solve_hermitian(factors[i - 1], parent.rhs().block(i - 1));
                    u = matmul_acc(Complex(-1.0, 0.0), parent.sub(i - 1), MatOp::plain, w,
                                   MatOp::plain, std::move(u));
                }
                if (has_right) {
                    Block w = solve_hermitian(factors[i + 1], parent.rhs().block(i + 1));
                    u = matmul_acc(Complex(-1.0, 0.0), parent.sub(i), MatOp::conj_transpose, w,
                                   MatOp::plain, std::move(u));
                }
                odd_rhs[j] = std::move(u);
            }
        } else {
            const std::size_t j = t - n_odd;
            const std::size_t i = 2 * j + 1;
            const bool has_right = i + 1 < n;    // B_{2j} exists

            std::optional<HermitianBlock> t1 =
                stable_schur_term(factors[i - 1], conj_transpose(parent.sub(i - 1)));
            std::optional<HermitianBlock> t2;
            if (has_right) {
                t2 = stable_schur_term(factors[i + 1], parent.sub(i));
            }
            even_diag[j] = hermitian_sub(parent.diag(i), &*t1, t2 ? &*t2 : nullptr);

            if (j + 1 < n_even) {
                // F_j = -B_{2j+1} * A_{2j+1}^-1 * B_{2j}
                Block w = solve_hermitian(factors[i + 1], parent.sub(i));
                even_sub[j] = matmul_acc(Complex(-1.0, 0.0), parent.sub(i + 1), MatOp::plain, w,
                                         MatOp::plain, Block(m, m));
            }

            if (k > 0) {
                Block v = parent.rhs().block(i);
                Block w = solve_hermitian(factors[i - 1], parent.rhs().block(i - 1));
                v = matmul_acc(Complex(-1.0, 0.0), parent.sub(i - 1), MatOp::plain, w,
                               MatOp::plain, std::move(v));
                if (has_right) {
                    Block w2 = solve_hermitian(factors[i + 1], parent.rhs().block(i + 1));
                    v = matmul_acc(Complex(-1.0, 0.0), parent.sub(i), MatOp::conj_transpose, w2,
                                   MatOp::plain, std::move(v));
                }
                even_rhs[j] = std::move(v);
            }
        }
    });

    auto collect_diag = [](std::vector<std::optional<HermitianBlock>>& slots) {
        std::vector<HermitianBlock> out;
        out.reserve(slots.size());
        for (auto& s : slots) {
            out.push_back(std::move(*s));
        }
        return out;
    };
    auto collect_blocks = [](std::vector<std::optional<Block>>& slots) {
        std::vector<Block> out;
        out.reserve(slots.size());
        for (auto& s : slots) {
            out.push_back(std::move(*s));
        }
        return out;
    };

    BlockVector odd_rhs_vec = k > 0 ? BlockVector(m, k, collect_blocks(odd_rhs))
                                    : BlockVector(n_odd, m);
    BlockVector even_rhs_vec = k > 0 ? BlockVector(m, k, collect_blocks(even_rhs))
                                     : BlockVector(n_even, m);

    return SplitSystems{
        BlockTridiagonalSystem(collect_diag(odd_diag), collect_blocks(odd_sub),
                               std::move(odd_rhs_vec)),
        BlockTridiagonalSystem(collect_diag(even_diag), collect_blocks(even_sub),
                               std::move(even_rhs_vec)),
    };
}

SplitSystems split(const BlockTridiagonalSystem& parent, unsigned budget) {
    const std::vector<CholeskyFactor> factors = factor_level(parent, budget);
    return split_with_factors(parent, factors, budget);
}

} // namespace blockcr
