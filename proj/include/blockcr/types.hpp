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

#ifndef BLOCKCR_TYPES_HPP
#define BLOCKCR_TYPES_HPP

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "blockcr/errors.hpp"

namespace blockcr {

using Complex = std::complex<double>;

/// Dense complex matrix block, row-major. Immutable once handed to a
/// container type; kernels build blocks through the mutable accessors and
/// then stop touching them.
class Block {
public:
    /// Zero-initialized rows x cols block. Both dimensions must be >= 1.
    Block(std::size_t rows, std::size_t cols);

    /// Validating constructor: checks the entry count and rejects NaN/Inf.
    static Block from_entries(std::size_t rows, std::size_t cols,
                              std::vector<Complex> entries);

    static Block identity(std::size_t m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return entries_; }

    bool same_shape(const Block& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    /// True iff every entry is finite.
    bool all_finite() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

Block conj_transpose(const Block& a);

/// Exact value equality, entry by entry (used by tests; -0.0 == 0.0 here,
/// byte-level comparisons go through the serializer instead).
bool operator==(const Block& a, const Block& b);

/// Square block carrying the exact conjugate-symmetry invariant:
/// entry(i,j) == conj(entry(j,i)) bit-wise, diagonal imaginary parts are
/// exactly +0.0. Every constructor path enforces this.
class HermitianBlock {
public:
    /// Wraps a block that is already exactly Hermitian; throws NotHermitian
    /// if any entry pair violates exact conjugate symmetry. Diagonal
    /// imaginary parts are normalized to +0.0.
    static HermitianBlock from_exact(Block b);

    static HermitianBlock identity(std::size_t m);
    static HermitianBlock zero(std::size_t m);

    std::size_t dim() const { return block_.rows(); }
    const Complex& operator()(std::size_t i, std::size_t j) const { return block_(i, j); }
    const Block& as_block() const { return block_; }

private:
    friend HermitianBlock hermitize(const Block& raw);
    friend class HermitianBuilder;
    explicit HermitianBlock(Block b) : block_(std::move(b)) {}
    Block block_;
};

bool operator==(const HermitianBlock& a, const HermitianBlock& b);

/// Ingest guard for nearly-Hermitian data: averages raw with its conjugate
/// transpose and mirrors the lower triangle so the result is exactly
/// Hermitian. Rejects input whose asymmetry exceeds
/// 1e-12 * (1 + max|entry|) with NotHermitian.
HermitianBlock hermitize(const Block& raw);

/// Builds an exactly Hermitian block from its lower triangle; the upper
/// triangle is mirrored with conjugation and diagonal imaginary parts are
/// forced to +0.0. Used by kernels that compute only the lower triangle.
class HermitianBuilder {
public:
    explicit HermitianBuilder(std::size_t m) : block_(m, m) {}

    /// Set entry (i, j) with i >= j. The mirror entry is written on finish().
    void set_lower(std::size_t i, std::size_t j, Complex v) { block_(i, j) = v; }
    void set_diag(std::size_t i, double re) { block_(i, i) = Complex(re, 0.0); }

    HermitianBlock finish();

private:
    Block block_;
};

/// N stacked blocks of identical shape m x k. k == 0 is the legal
/// "no right-hand side" state: no blocks are stored, only the counts.
class BlockVector {
public:
    /// k >= 1 form. n_blocks = blocks.size() (may be zero); every block must
    /// be block_rows x block_cols.
    BlockVector(std::size_t block_rows, std::size_t block_cols, std::vector<Block> blocks);

    /// k == 0 form: shape bookkeeping only.
    BlockVector(std::size_t n_blocks, std::size_t block_rows);

    static BlockVector zeros(std::size_t n_blocks, std::size_t block_rows, std::size_t block_cols);

    std::size_t n_blocks() const { return n_blocks_; }
    std::size_t block_rows() const { return block_rows_; }
    std::size_t block_cols() const { return block_cols_; }
    bool has_rhs() const { return block_cols_ > 0; }

    const Block& block(std::size_t i) const;

    bool same_shape(const BlockVector& other) const {
        return block_rows_ == other.block_rows_ && block_cols_ == other.block_cols_;
    }

private:
    std::size_t n_blocks_;
    std::size_t block_rows_;
    std::size_t block_cols_;
    std::vector<Block> blocks_;
};

bool operator==(const BlockVector& a, const BlockVector& b);

/// Merge the odd-position and even-position halves back into one vector:
/// result block 2j-1 = odd block j, result block 2j = even block j (1-based).
BlockVector interleave(const BlockVector& odd, const BlockVector& even);

/// Exact inverse of interleave: odd gets blocks 1,3,5,..., even gets 2,4,6,...
std::pair<BlockVector, BlockVector> deinterleave(const BlockVector& full);

/// The Hermitian block-tridiagonal system: diagonal blocks A_1..A_N,
/// subdiagonal blocks B_1..B_{N-1} (the superdiagonal is implicitly B_j^H),
/// and N right-hand-side blocks of shape m x k (k == 0 means none).
class BlockTridiagonalSystem {
public:
    BlockTridiagonalSystem(std::vector<HermitianBlock> diag, std::vector<Block> sub,
                           BlockVector rhs);

    std::size_t n() const { return diag_.size(); }
    std::size_t m() const { return diag_.front().dim(); }
    std::size_t k() const { return rhs_.block_cols(); }

    const HermitianBlock& diag(std::size_t i) const { return diag_[i]; }
    const Block& sub(std::size_t i) const { return sub_[i]; }
    const BlockVector& rhs() const { return rhs_; }

    /// Copy of the system with the right-hand side stripped (k = 0).
    BlockTridiagonalSystem without_rhs() const;

private:
    std::vector<HermitianBlock> diag_;
    std::vector<Block> sub_;
    BlockVector rhs_;
};

/// The two half-size systems produced by one reduction level.
struct SplitSystems {
    BlockTridiagonalSystem odd;  // size ceil(N/2), diag U_j, sub E_j, rhs u_j
    BlockTridiagonalSystem even; // size floor(N/2), diag V_j, sub F_j, rhs v_j
};

} // namespace blockcr

#endif // BLOCKCR_TYPES_HPP
