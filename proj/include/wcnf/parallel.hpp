// Copyright 2026 The wcnf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace wcnf
{
/// Runs body(i) for i in [0, n) on up to hardware_concurrency threads.
/// Indices are statically partitioned; the body must only write to
/// per-index storage. The first exception (lowest thread) is rethrown.
template <typename Body>
void parallel_for(const std::size_t n, Body&& body)
{
        const std::size_t threads =
                std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
        if (threads <= 1)
        {
                for (std::size_t i = 0; i < n; ++i)
                {
                        body(i);
                }
                return;
        }

        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t)
        {
                pool.emplace_back(
                        [&, t]
                        {
                                try
                                {
                                        for (std::size_t i = t; i < n; i += threads)
                                        {
                                                body(i);
                                        }
                                }
                                catch (...)
                                {
                                        errors[t] = std::current_exception();
                                }
                        });
        }
        for (std::thread& th : pool)
        {
                th.join();
        }
        for (const std::exception_ptr& e : errors)
        {
                if (e)
                {
                        std::rethrow_exception(e);
                }
        }
}
}
