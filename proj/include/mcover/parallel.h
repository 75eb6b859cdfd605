// Copyright 2026 The MutualCover Authors
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

#ifndef MCOVER_PARALLEL_H_
#define MCOVER_PARALLEL_H_

#include <cstddef>
#include <exception>
#include <vector>

namespace mcover {

// Selects between the OpenMP kernels and the serial reference loops. Both
// produce bit-identical results; the serial path is kept for testing.
enum class Execution { kSerial, kParallel };

int MaxThreads();

// Calls body(i) for i in [0, n). Iterations must write disjoint state. Under
// kParallel they are spread over OpenMP threads with dynamic scheduling;
// the exception of the lowest failing index is rethrown afterwards.
template <typename Body>
void ParallelFor(std::size_t n, Execution execution, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (execution == Execution::kParallel) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) run(i);
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace mcover

#endif  // MCOVER_PARALLEL_H_
