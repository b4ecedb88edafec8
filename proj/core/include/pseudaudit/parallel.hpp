// Copyright 2026 The pseudaudit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace pseudaudit {

/// Runs fn(task, worker) for every task in [0, n) on `workers` threads
/// (0 means one per hardware thread). Tasks are claimed in increasing order.
/// The first exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t task, unsigned worker)>& fn);

/// `workers`, or the hardware concurrency when zero.
unsigned resolve_workers(unsigned workers) noexcept;

}  // namespace pseudaudit
