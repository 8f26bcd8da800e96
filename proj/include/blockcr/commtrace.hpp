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

#ifndef BLOCKCR_COMMTRACE_HPP
#define BLOCKCR_COMMTRACE_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

// Static analysis of the data movement the parallel reduction needs on a
// machine with one node per block row, nodes laid out on a line with unit
// spacing. No timing is simulated; the cost of an edge is the node distance.

namespace blockcr::commtrace {

/// What a sender contributes along an edge. Senders ship their whole row:
/// the diagonal block, the subdiagonal block (absent for the last row), and
/// the right-hand-side block. Sizes are symbolic (m*m or m*k entries).
enum PayloadBits : unsigned {
    payload_diag = 1u << 0,
    payload_sub = 1u << 1,
    payload_rhs = 1u << 2,
};

struct CommEdge {
    std::size_t level;    // recursion depth, 0 = top
    std::size_t receiver; // node index, 1-based within the level's node range
    std::size_t sender;
    unsigned payload;     // PayloadBits union
    bool self_edge;       // sender == receiver (retained, distance 0)
    std::size_t distance; // |sender - receiver|
};

/// Receive sets for one reduction level of n block rows (n >= 2):
/// odd-side receiver j pulls from {2j-2, 2j-1, 2j}, even-side receiver
/// ceil(n/2)+j pulls from {2j-1, 2j, 2j+1}, all clipped to [1, n].
std::vector<CommEdge> trace_level(std::size_t n);

struct TraceSummary {
    std::size_t total_edges = 0;
    std::size_t total_line_distance = 0; // sum of |sender - receiver|
};

struct Trace {
    std::vector<CommEdge> edges;
    TraceSummary summary;
};

/// Applies trace_level to every subsystem of the recursion tree (level sizes
/// ceil(n/2) and floor(n/2), recursing on both halves) until sizes reach the
/// threshold. Sub-level node indices map into the half's node range: the odd
/// half keeps the low indices, the even half is offset past them. Edges are
/// emitted level by level.
Trace trace_full(std::size_t n, std::size_t threshold);

std::string payload_name(unsigned payload);

/// CSV rows `level,receiver,sender,payload,distance` under a header line,
/// with a trailing `# total_edges=<E> total_line_distance=<D>` summary.
void write_csv(const Trace& trace, std::ostream& sink);

std::string summary_line(const TraceSummary& summary);

} // namespace blockcr::commtrace

#endif // BLOCKCR_COMMTRACE_HPP
