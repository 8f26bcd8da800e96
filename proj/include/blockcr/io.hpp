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

#ifndef BLOCKCR_IO_HPP
#define BLOCKCR_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "blockcr/types.hpp"

// Bit-exact binary interchange (the BTHP system format and BTHX solution
// format) plus seeded test-system generators. Both formats share a 28-byte
// header:
//
//   bytes 0..3    magic, "BTHP" (system) or "BTHX" (solution)
//   bytes 4..7    version, u32 little-endian, currently 1
//   bytes 8..15   n, u64 little-endian
//   bytes 16..23  m, u64 little-endian
//   bytes 24..27  k, u32 little-endian
//
// followed by entries as IEEE-754 little-endian doubles, 16 bytes per complex
// entry (re then im), each block row-major. BTHP payload order: A_1..A_N,
// B_1..B_{N-1}, y_1..y_N (y absent when k = 0); BTHX payload: x_1..x_N.

namespace blockcr::io {

/// The fixed counter-based random source behind every generator: SplitMix64.
/// The i-th output is mix(seed + (i+1) * 0x9E3779B97F4A7C15) with the
/// standard finalizer; any implementation of the documented stream produces
/// identical systems from identical GeneratorSpecs.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1): top 53 bits scaled by 2^-53.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

private:
    std::uint64_t state_;
};

enum class SystemKind {
    hpd_random,
    hpd_laplacian,
    indefinite,
    real_symmetric,
};

std::optional<SystemKind> parse_kind(std::string_view name);
std::string_view kind_name(SystemKind kind);

struct GeneratorSpec {
    std::size_t n = 1;
    std::size_t m = 1;
    std::size_t k = 1; // 0 is legal: no right-hand side
    std::uint64_t seed = 0;
    SystemKind kind = SystemKind::hpd_random;
    double coupling_scale = 1.0;
};

/// Deterministic seeded system construction; see the README for the exact
/// draw order. hpd_* kinds are Hermitian positive definite by construction,
/// indefinite subtracts a trace-sized diagonal shift from one seeded block.
BlockTridiagonalSystem generate(const GeneratorSpec& spec);

void write_system(const BlockTridiagonalSystem& system, std::ostream& sink);
BlockTridiagonalSystem read_system(std::istream& source);

void write_solution(const BlockVector& x, std::ostream& sink);
BlockVector read_solution(std::istream& source);

// String round-trips, convenient for byte-level tests.
std::string write_system_bytes(const BlockTridiagonalSystem& system);
std::string write_solution_bytes(const BlockVector& x);

} // namespace blockcr::io

#endif // BLOCKCR_IO_HPP
