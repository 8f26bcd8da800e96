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

#ifndef BLOCKCR_PARALLEL_HPP
#define BLOCKCR_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <future>
#include <thread>
#include <utility>
#include <vector>

namespace blockcr::par {

/// Number of concurrent tasks a solve may use. A budget of 1 means strictly
/// serial execution; parallel mode always grants at least 2 so the fork-join
/// machinery is exercised even on a single hardware thread.
inline unsigned default_budget(bool parallel) {
    if (!parallel) {
        return 1;
    }
    return std::max(2u, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, count). With budget > 1 the index range is cut
/// into at most `budget` contiguous chunks executed as concurrent tasks.
/// Callers guarantee disjoint writes per index, so results do not depend on
/// the schedule. Exceptions surface in chunk order.
template <typename F>
void parallel_for(std::size_t count, unsigned budget, F&& fn) {
    if (budget <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    const std::size_t tasks = std::min<std::size_t>(budget, count);
    std::vector<std::future<void>> futures;
    futures.reserve(tasks - 1);
    for (std::size_t t = 1; t < tasks; ++t) {
        const std::size_t begin = t * count / tasks;
        const std::size_t end = (t + 1) * count / tasks;
        futures.push_back(std::async(std::launch::async, [&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) {
                fn(i);
            }
        }));
    }
    for (std::size_t i = 0; i < count / tasks; ++i) {
        fn(i);
    }
    for (auto& f : futures) {
        f.get();
    }
}

} // namespace blockcr::par

#endif // BLOCKCR_PARALLEL_HPP
