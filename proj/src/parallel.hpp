// SPDX-License-Identifier: Apache-2.0
//
// plcsynth - top-down statistical modeling and synthesis of PLC channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace plcsynth::detail
{

// Static block split of [0, count) over `threads` workers. Each index is
// processed exactly once and writes only its own output slot, so results
// do not depend on the thread count. Exceptions are rethrown on the
// calling thread.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn &&fn)
{
    if (threads <= 1 || count < 2)
    {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    const std::size_t n_workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    std::exception_ptr error;
    std::mutex error_mutex;

    const std::size_t chunk = (count + n_workers - 1) / n_workers;
    for (std::size_t w = 0; w < n_workers; ++w)
    {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end)
            break;
        workers.emplace_back([&, begin, end]() {
            try
            {
                for (std::size_t i = begin; i < end; ++i)
                    fn(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto &worker : workers)
        worker.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace plcsynth::detail
