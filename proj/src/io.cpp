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

#include "blockcr/io.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

namespace blockcr::io {

namespace {

constexpr std::uint32_t kFormatVersion = 1;

void put_u32(std::ostream& sink, std::uint32_t v) {
    char bytes[4];
    for (int i = 0; i < 4; ++i) {
        bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    }
    sink.write(bytes, 4);
}

void put_u64(std::ostream& sink, std::uint64_t v) {
    char bytes[8];
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    }
    sink.write(bytes, 8);
}

void put_f64(std::ostream& sink, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(sink, bits);
}

void read_exact(std::istream& source, char* buf, std::size_t count) {
    source.read(buf, static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(source.gcount()) != count) {
        throw Truncated("unexpected end of stream");
    }
}

std::uint32_t get_u32(std::istream& source) {
    char bytes[4];
    read_exact(source, bytes, 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[i])) << (8 * i);
    }
    return v;
}

std::uint64_t get_u64(std::istream& source) {
    char bytes[8];
    read_exact(source, bytes, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])) << (8 * i);
    }
    return v;
}

double get_f64(std::istream& source) {
    const std::uint64_t bits = get_u64(source);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

void write_header(std::ostream& sink, const char* magic, std::size_t n, std::size_t m,
                  std::size_t k) {
    sink.write(magic, 4);
    put_u32(sink, kFormatVersion);
    put_u64(sink, n);
    put_u64(sink, m);
    put_u32(sink, static_cast<std::uint32_t>(k));
    if (!sink) {
        throw SinkFailure("failed to write header");
    }
}

struct Header {
    std::size_t n;
    std::size_t m;
    std::size_t k;
};

Header read_header(std::istream& source, const char* magic) {
    char got[4];
    read_exact(source, got, 4);
    if (std::memcmp(got, magic, 4) != 0) {
        throw BadMagic(std::string("bad magic, expected ") + magic);
    }
    const std::uint32_t version = get_u32(source);
    if (version != kFormatVersion) {
        std::ostringstream os;
        os << "unsupported format version " << version;
        throw BadVersion(os.str());
    }
    Header h{};
    h.n = static_cast<std::size_t>(get_u64(source));
    h.m = static_cast<std::size_t>(get_u64(source));
    h.k = static_cast<std::size_t>(get_u32(source));
    if (h.n == 0 || h.m == 0) {
        throw Truncated("header declares empty system dimensions");
    }
    return h;
}

void write_block(std::ostream& sink, const Block& b) {
    for (const Complex& z : b.entries()) {
        put_f64(sink, z.real());
        put_f64(sink, z.imag());
    }
    if (!sink) {
        throw SinkFailure("failed to write block data");
    }
}

Block read_block(std::istream& source, std::size_t rows, std::size_t cols) {
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (std::size_t i = 0; i < rows * cols; ++i) {
        const double re = get_f64(source);
        const double im = get_f64(source);
        entries.emplace_back(re, im);
    }
    return Block::from_entries(rows, cols, std::move(entries));
}

} // namespace

std::optional<SystemKind> parse_kind(std::string_view name) {
    if (name == "hpd_random") return SystemKind::hpd_random;
    if (name == "hpd_laplacian") return SystemKind::hpd_laplacian;
    if (name == "indefinite") return SystemKind::indefinite;
    if (name == "real_symmetric") return SystemKind::real_symmetric;
    return std::nullopt;
}

std::string_view kind_name(SystemKind kind) {
    switch (kind) {
    case SystemKind::hpd_random: return "hpd_random";
    case SystemKind::hpd_laplacian: return "hpd_laplacian";
    case SystemKind::indefinite: return "indefinite";
    case SystemKind::real_symmetric: return "real_symmetric";
    }
    return "unknown";
}

void write_system(const BlockTridiagonalSystem& system, std::ostream& sink) {
    write_header(sink, "BTHP", system.n(), system.m(), system.k());
    for (std::size_t i = 0; i < system.n(); ++i) {
        write_block(sink, system.diag(i).as_block());
    }
    for (std::size_t i = 0; i + 1 < system.n(); ++i) {
        write_block(sink, system.sub(i));
    }
    if (system.k() > 0) {
        for (std::size_t i = 0; i < system.n(); ++i) {
            write_block(sink, system.rhs().block(i));
        }
    }
    sink.flush();
    if (!sink) {
        throw SinkFailure("failed to flush system data");
    }
}

BlockTridiagonalSystem read_system(std::istream& source) {
    const Header h = read_header(source, "BTHP");
    std::vector<HermitianBlock> diag;
    diag.reserve(h.n);
    for (std::size_t i = 0; i < h.n; ++i) {
        diag.push_back(hermitize(read_block(source, h.m, h.m)));
    }
    std::vector<Block> sub;
    sub.reserve(h.n - 1);
    for (std::size_t i = 0; i + 1 < h.n; ++i) {
        sub.push_back(read_block(source, h.m, h.m));
    }
    if (h.k == 0) {
        return BlockTridiagonalSystem(std::move(diag), std::move(sub),
                                      BlockVector(h.n, h.m));
    }
    std::vector<Block> rhs;
    rhs.reserve(h.n);
    for (std::size_t i = 0; i < h.n; ++i) {
        rhs.push_back(read_block(source, h.m, h.k));
    }
    return BlockTridiagonalSystem(std::move(diag), std::move(sub),
                                  BlockVector(h.m, h.k, std::move(rhs)));
}

void write_solution(const BlockVector& x, std::ostream& sink) {
    if (!x.has_rhs()) {
        throw ShapeMismatch("a solution requires k >= 1");
    }
    write_header(sink, "BTHX", x.n_blocks(), x.block_rows(), x.block_cols());
    for (std::size_t i = 0; i < x.n_blocks(); ++i) {
        write_block(sink, x.block(i));
    }
    sink.flush();
    if (!sink) {
        throw SinkFailure("failed to flush solution data");
    }
}

BlockVector read_solution(std::istream& source) {
    const Header h = read_header(source, "BTHX");
    if (h.k == 0) {
        throw Truncated("solution file declares k = 0");
    }
    std::vector<Block> blocks;
    blocks.reserve(h.n);
    for (std::size_t i = 0; i < h.n; ++i) {
        blocks.push_back(read_block(source, h.m, h.k));
    }
    return BlockVector(h.m, h.k, std::move(blocks));
}

std::string write_system_bytes(const BlockTridiagonalSystem& system) {
    std::ostringstream os(std::ios::binary);
    write_system(system, os);
    return os.str();
}

std::string write_solution_bytes(const BlockVector& x) {
    std::ostringstream os(std::ios::binary);
    write_solution(x, os);
    return os.str();
}

namespace {

// Draw order (see README): every complex entry consumes two symmetric draws,
// re then im; real_symmetric consumes both but zeroes the imaginary part.
Complex draw_complex(SplitMix64& rng, bool real_only, double scale) {
    const double re = scale * rng.next_symmetric();
    const double im = scale * rng.next_symmetric();
    return Complex(re, real_only ? 0.0 : im);
}

Block draw_block(SplitMix64& rng, std::size_t rows, std::size_t cols, bool real_only,
                 double scale) {
    Block b(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            b(i, j) = draw_complex(rng, real_only, scale);
        }
    }
    return b;
}

double max_abs_row_sum(const Block& b) {
    double best = 0.0;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < b.cols(); ++j) {
            s += std::abs(b(i, j));
        }
        best = std::max(best, s);
    }
    return best;
}

// A = R * R^H + shift * I via the lower triangle, exactly Hermitian.
HermitianBlock gram_plus_shift(const Block& r, double shift) {
    const std::size_t m = r.rows();
    HermitianBuilder a(m);
    for (std::size_t i = 0; i < m; ++i) {
        double d = shift;
        for (std::size_t t = 0; t < m; ++t) {
            d += std::norm(r(i, t));
        }
        a.set_diag(i, d);
        for (std::size_t j = 0; j < i; ++j) {
            Complex sum(0.0, 0.0);
            for (std::size_t t = 0; t < m; ++t) {
                sum += r(i, t) * std::conj(r(j, t));
            }
            a.set_lower(i, j, sum);
        }
    }
    return a.finish();
}

// The m x m diagonal stencil of the shifted discrete Laplacian:
// tridiag(-1, 2, -1) + (2 + delta) I, positive definite alongside B_j = -I
// for every delta > 0.
HermitianBlock laplacian_stencil(std::size_t m, double delta) {
    HermitianBuilder a(m);
    for (std::size_t i = 0; i < m; ++i) {
        a.set_diag(i, 4.0 + delta);
        if (i >= 1) {
            a.set_lower(i, i - 1, Complex(-1.0, 0.0));
        }
    }
    return a.finish();
}

} // namespace

BlockTridiagonalSystem generate(const GeneratorSpec& spec) {
    if (spec.n == 0 || spec.m == 0) {
        throw ShapeMismatch("generator sizes must satisfy n >= 1, m >= 1");
    }
    const std::size_t n = spec.n;
    const std::size_t m = spec.m;
    const bool real_only = spec.kind == SystemKind::real_symmetric;
    SplitMix64 rng(spec.seed);

    std::vector<Block> sub;
    std::vector<HermitianBlock> diag;
    sub.reserve(n > 0 ? n - 1 : 0);
    diag.reserve(n);

    if (spec.kind == SystemKind::hpd_laplacian) {
        constexpr double kDelta = 1e-2;
        Block minus_identity(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            minus_identity(i, i) = Complex(-1.0, 0.0);
        }
        for (std::size_t j = 0; j + 1 < n; ++j) {
            sub.push_back(minus_identity);
        }
        for (std::size_t j = 0; j < n; ++j) {
            diag.push_back(laplacian_stencil(m, kDelta));
        }
    } else {
        for (std::size_t j = 0; j + 1 < n; ++j) {
            sub.push_back(draw_block(rng, m, m, real_only, spec.coupling_scale));
        }
        // sigma_j = largest absolute row sum of B_j, sigma_0 = sigma_N = 0;
        // the shift makes the assembled matrix block-diagonally dominant.
        std::vector<double> sigma(n + 1, 0.0);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            sigma[j + 1] = max_abs_row_sum(sub[j]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            const Block r = draw_block(rng, m, m, real_only, 1.0);
            diag.push_back(gram_plus_shift(r, sigma[j] + sigma[j + 1] + 1.0));
        }
    }

    BlockVector rhs = spec.k == 0
                          ? BlockVector(n, m)
                          : [&] {
                                std::vector<Block> blocks;
                                blocks.reserve(n);
                                for (std::size_t j = 0; j < n; ++j) {
                                    blocks.push_back(draw_block(rng, m, spec.k, real_only, 1.0));
                                }
                                return BlockVector(m, spec.k, std::move(blocks));
                            }();

    if (spec.kind == SystemKind::indefinite) {
        // Shift one seeded block down by more than the total trace: the
        // assembled matrix then has an eigenvalue <= -1.
        const std::size_t target = static_cast<std::size_t>(rng.next_u64() % n);
        double trace = 0.0;
        for (const HermitianBlock& a : diag) {
            for (std::size_t i = 0; i < m; ++i) {
                trace += a(i, i).real();
            }
        }
        const double shift = 1.0 + trace;
        const HermitianBlock& old = diag[target];
        HermitianBuilder shifted(m);
        for (std::size_t i = 0; i < m; ++i) {
            shifted.set_diag(i, old(i, i).real() - shift);
            for (std::size_t j = 0; j < i; ++j) {
                shifted.set_lower(i, j, old(i, j));
            }
        }
        diag[target] = shifted.finish();
    }

    return BlockTridiagonalSystem(std::move(diag), std::move(sub), std::move(rhs));
}

} // namespace blockcr::io
