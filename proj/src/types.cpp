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

#include "blockcr/types.hpp"

#include <cmath>
#include <sstream>

namespace blockcr {

namespace {

std::string shape_msg(const char* what, std::size_t got, std::size_t want) {
    std::ostringstream os;
    os << what << ": got " << got << ", expected " << want;
    return os.str();
}

} // namespace

Block::Block(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {
    if (rows == 0 || cols == 0) {
        throw ShapeMismatch("Block dimensions must be positive");
    }
}

Block Block::from_entries(std::size_t rows, std::size_t cols, std::vector<Complex> entries) {
    Block b(rows, cols);
    if (entries.size() != rows * cols) {
        throw ShapeMismatch(shape_msg("Block entry count", entries.size(), rows * cols));
    }
    b.entries_ = std::move(entries);
    if (!b.all_finite()) {
        throw NonFiniteEntry("Block contains a NaN or infinite entry");
    }
    return b;
}

Block Block::identity(std::size_t m) {
    Block b(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        b(i, i) = Complex(1.0, 0.0);
    }
    return b;
}

bool Block::all_finite() const {
    for (const Complex& z : entries_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

Block conj_transpose(const Block& a) {
    Block out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

bool operator==(const Block& a, const Block& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.entries() == b.entries();
}

HermitianBlock HermitianBlock::from_exact(Block b) {
    if (b.rows() != b.cols()) {
        throw ShapeMismatch("HermitianBlock requires a square block");
    }
    const std::size_t m = b.rows();
    for (std::size_t i = 0; i < m; ++i) {
        if (b(i, i).imag() != 0.0) {
            throw NotHermitian("diagonal imaginary part is not exactly zero",
                               std::abs(2.0 * b(i, i).imag()));
        }
        b(i, i) = Complex(b(i, i).real(), 0.0); // normalize -0.0 to +0.0
        for (std::size_t j = 0; j < i; ++j) {
            if (b(i, j).real() != b(j, i).real() || b(i, j).imag() != -b(j, i).imag()) {
                throw NotHermitian("block is not exactly Hermitian",
                                   std::abs(b(i, j) - std::conj(b(j, i))));
            }
        }
    }
    if (!b.all_finite()) {
        throw NonFiniteEntry("HermitianBlock contains a NaN or infinite entry");
    }
    return HermitianBlock(std::move(b));
}

HermitianBlock HermitianBlock::identity(std::size_t m) {
    return HermitianBlock(Block::identity(m));
}

HermitianBlock HermitianBlock::zero(std::size_t m) {
    return HermitianBlock(Block(m, m));
}

bool operator==(const HermitianBlock& a, const HermitianBlock& b) {
    return a.as_block() == b.as_block();
}

HermitianBlock hermitize(const Block& raw) {
    if (raw.rows() != raw.cols()) {
        throw ShapeMismatch("hermitize requires a square block");
    }
    const std::size_t m = raw.rows();
    double max_entry = 0.0;
    double max_asym = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            max_entry = std::max(max_entry, std::abs(raw(i, j)));
            if (j <= i) {
                max_asym = std::max(max_asym, std::abs(raw(i, j) - std::conj(raw(j, i))));
            }
        }
    }
    const double gate = 1e-12 * (1.0 + max_entry);
    if (!(max_asym <= gate)) {
        std::ostringstream os;
        os << "block asymmetry " << max_asym << " exceeds gate " << gate;
        throw NotHermitian(os.str(), max_asym);
    }
    Block out(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        out(i, i) = Complex(raw(i, i).real(), 0.0);
        for (std::size_t j = 0; j < i; ++j) {
            const Complex v = 0.5 * (raw(i, j) + std::conj(raw(j, i)));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    if (!out.all_finite()) {
        throw NonFiniteEntry("hermitize input contains a NaN or infinite entry");
    }
    return HermitianBlock(std::move(out));
}

HermitianBlock HermitianBuilder::finish() {
    const std::size_t m = block_.rows();
    for (std::size_t i = 0; i < m; ++i) {
        block_(i, i) = Complex(block_(i, i).real(), 0.0);
        for (std::size_t j = 0; j < i; ++j) {
            block_(j, i) = std::conj(block_(i, j));
        }
    }
    return HermitianBlock(std::move(block_));
}

BlockVector::BlockVector(std::size_t block_rows, std::size_t block_cols,
                         std::vector<Block> blocks)
    : n_blocks_(blocks.size()), block_rows_(block_rows), block_cols_(block_cols),
      blocks_(std::move(blocks)) {
    if (block_rows_ == 0 || block_cols_ == 0) {
        throw ShapeMismatch("BlockVector block shape must be positive; use the k=0 constructor "
                            "for right-hand-side-free vectors");
    }
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].rows() != block_rows_ || blocks_[i].cols() != block_cols_) {
            std::ostringstream os;
            os << "BlockVector block " << i << " has shape " << blocks_[i].rows() << "x"
               << blocks_[i].cols() << ", expected " << block_rows_ << "x" << block_cols_;
            throw ShapeMismatch(os.str());
        }
    }
}

BlockVector::BlockVector(std::size_t n_blocks, std::size_t block_rows)
    : n_blocks_(n_blocks), block_rows_(block_rows), block_cols_(0) {
    if (block_rows_ == 0) {
        throw ShapeMismatch("BlockVector block rows must be positive");
    }
}

BlockVector BlockVector::zeros(std::size_t n_blocks, std::size_t block_rows,
                               std::size_t block_cols) {
    std::vector<Block> blocks;
    blocks.reserve(n_blocks);
    for (std::size_t i = 0; i < n_blocks; ++i) {
        blocks.emplace_back(block_rows, block_cols);
    }
    return BlockVector(block_rows, block_cols, std::move(blocks));
}

const Block& BlockVector::block(std::size_t i) const {
    if (block_cols_ == 0) {
        throw ShapeMismatch("BlockVector has no stored blocks (k = 0)");
    }
    return blocks_[i];
}

bool operator==(const BlockVector& a, const BlockVector& b) {
    if (a.n_blocks() != b.n_blocks() || !a.same_shape(b)) {
        return false;
    }
    if (!a.has_rhs()) {
        return true;
    }
    for (std::size_t i = 0; i < a.n_blocks(); ++i) {
        if (!(a.block(i) == b.block(i))) {
            return false;
        }
    }
    return true;
}

BlockVector interleave(const BlockVector& odd, const BlockVector& even) {
    if (!odd.same_shape(even)) {
        throw ShapeMismatch("interleave: odd and even block shapes differ");
    }
    const std::size_t no = odd.n_blocks();
    const std::size_t ne = even.n_blocks();
    if (no != ne && no != ne + 1) {
        std::ostringstream os;
        os << "interleave: odd count " << no << " must equal even count " << ne
           << " or exceed it by one";
        throw ShapeMismatch(os.str());
    }
    if (!odd.has_rhs()) {
        return BlockVector(no + ne, odd.block_rows());
    }
    std::vector<Block> blocks;
    blocks.reserve(no + ne);
    for (std::size_t j = 0; j < no + ne; ++j) {
        blocks.push_back(j % 2 == 0 ? odd.block(j / 2) : even.block(j / 2));
    }
    return BlockVector(odd.block_rows(), odd.block_cols(), std::move(blocks));
}

std::pair<BlockVector, BlockVector> deinterleave(const BlockVector& full) {
    const std::size_t n = full.n_blocks();
    const std::size_t no = (n + 1) / 2;
    const std::size_t ne = n / 2;
    if (!full.has_rhs()) {
        return {BlockVector(no, full.block_rows()), BlockVector(ne, full.block_rows())};
    }
    std::vector<Block> odd;
    std::vector<Block> even;
    odd.reserve(no);
    even.reserve(ne);
    for (std::size_t j = 0; j < n; ++j) {
        (j % 2 == 0 ? odd : even).push_back(full.block(j));
    }
    return {BlockVector(full.block_rows(), full.block_cols(), std::move(odd)),
            BlockVector(full.block_rows(), full.block_cols(), std::move(even))};
}

BlockTridiagonalSystem::BlockTridiagonalSystem(std::vector<HermitianBlock> diag,
                                               std::vector<Block> sub, BlockVector rhs)
    : diag_(std::move(diag)), sub_(std::move(sub)), rhs_(std::move(rhs)) {
    if (diag_.empty()) {
        throw ShapeMismatch("system needs at least one diagonal block");
    }
    const std::size_t n = diag_.size();
    const std::size_t m = diag_.front().dim();
    if (sub_.size() != n - 1) {
        throw ShapeMismatch(shape_msg("sub length", sub_.size(), n - 1));
    }
    if (rhs_.n_blocks() != n) {
        throw ShapeMismatch(shape_msg("rhs block count", rhs_.n_blocks(), n));
    }
    if (rhs_.block_rows() != m) {
        throw ShapeMismatch(shape_msg("rhs block rows", rhs_.block_rows(), m));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (diag_[i].dim() != m) {
            std::ostringstream os;
            os << "diag block " << i << " has dim " << diag_[i].dim() << ", expected " << m;
            throw ShapeMismatch(os.str());
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (sub_[i].rows() != m || sub_[i].cols() != m) {
            std::ostringstream os;
            os << "sub block " << i << " has shape " << sub_[i].rows() << "x" << sub_[i].cols()
               << ", expected " << m << "x" << m;
            throw ShapeMismatch(os.str());
        }
    }
}

BlockTridiagonalSystem BlockTridiagonalSystem::without_rhs() const {
    return BlockTridiagonalSystem(diag_, sub_, BlockVector(n(), m()));
}

} // namespace blockcr
