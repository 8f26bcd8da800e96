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

#include "blockcr/commtrace.hpp"

#include <deque>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace blockcr::commtrace {

namespace {

CommEdge make_edge(std::size_t level, std::size_t receiver, std::size_t sender, std::size_t n,
                   std::size_t offset) {
    unsigned payload = payload_diag | payload_rhs;
    if (sender < n) { // the last row owns no subdiagonal block
        payload |= payload_sub;
    }
    CommEdge e{};
    e.level = level;
    e.receiver = offset + receiver;
    e.sender = offset + sender;
    e.payload = payload;
    e.self_edge = sender == receiver;
    e.distance = receiver > sender ? receiver - sender : sender - receiver;
    return e;
}

void append_level(std::vector<CommEdge>& out, std::size_t n, std::size_t level,
                  std::size_t offset) {
    const std::size_t n_odd = (n + 1) / 2;
    const std::size_t n_even = n / 2;
    for (std::size_t j = 1; j <= n_odd; ++j) {
        for (std::size_t s = 2 * j - 2; s <= 2 * j; ++s) {
            if (s >= 1 && s <= n) {
                out.push_back(make_edge(level, j, s, n, offset));
            }
        }
    }
    for (std::size_t j = 1; j <= n_even; ++j) {
        for (std::size_t s = 2 * j - 1; s <= 2 * j + 1; ++s) {
            if (s >= 1 && s <= n) {
                out.push_back(make_edge(level, n_odd + j, s, n, offset));
            }
        }
    }
}

} // namespace

std::vector<CommEdge> trace_level(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("trace_level requires n >= 2");
    }
    std::vector<CommEdge> edges;
    append_level(edges, n, 0, 0);
    return edges;
}

Trace trace_full(std::size_t n, std::size_t threshold) {
    if (n < 2) {
        throw std::invalid_argument("trace_full requires n >= 2");
    }
    if (threshold < 1) {
        throw std::invalid_argument("trace_full requires threshold >= 1");
    }
    Trace trace;
    struct Node {
        std::size_t size;
        std::size_t offset;
        std::size_t level;
    };
    std::deque<Node> queue{{n, 0, 0}};
    while (!queue.empty()) {
        const Node node = queue.front();
        queue.pop_front();
        if (node.size <= threshold || node.size < 2) {
            continue;
        }
        append_level(trace.edges, node.size, node.level, node.offset);
        const std::size_t n_odd = (node.size + 1) / 2;
        const std::size_t n_even = node.size / 2;
        queue.push_back({n_odd, node.offset, node.level + 1});
        queue.push_back({n_even, node.offset + n_odd, node.level + 1});
    }
    for (const CommEdge& e : trace.edges) {
        trace.summary.total_edges += 1;
        if (!e.self_edge) {
            trace.summary.total_line_distance += e.distance;
        }
    }
    return trace;
}

std::string payload_name(unsigned payload) {
    std::string out;
    auto add = [&](const char* name) {
        if (!out.empty()) {
            out += '+';
        }
        out += name;
    };
    if (payload & payload_diag) add("diag_block");
    if (payload & payload_sub) add("sub_block");
    if (payload & payload_rhs) add("rhs_block");
    return out;
}

std::string summary_line(const TraceSummary& summary) {
    std::ostringstream os;
    os << "# total_edges=" << summary.total_edges
       << " total_line_distance=" << summary.total_line_distance;
    return os.str();
}

void write_csv(const Trace& trace, std::ostream& sink) {
    sink << "level,receiver,sender,payload,distance\n";
    for (const CommEdge& e : trace.edges) {
        sink << e.level << ',' << e.receiver << ',' << e.sender << ',' << payload_name(e.payload)
             << ',' << e.distance << '\n';
    }
    sink << summary_line(trace.summary) << '\n';
}

} // namespace blockcr::commtrace
