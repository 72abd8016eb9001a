// Copyright 2026 The shorsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHORSIM_PARALLEL_H
#define SHORSIM_PARALLEL_H

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace shorsim::detail {

inline thread_local bool in_parallel_region = false;

/// Calls fn(i) for every i in [0, n) on up to hardware_concurrency threads.
///
/// Each index is visited exactly once and fn must only write to state owned by
/// that index. Below `min_parallel` indices, or when already on a worker thread,
/// everything runs inline. The first exception thrown by any worker is
/// rethrown on the caller's thread.
template <typename Fn>
void parallel_for(size_t n, Fn &&fn, size_t min_parallel = 64) {
    size_t workers = std::max<size_t>(1, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1 || n < min_parallel || in_parallel_region) {
        for (size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            in_parallel_region = true;
            try {
                for (size_t i = w; i < n; i += workers) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace shorsim::detail

#endif
