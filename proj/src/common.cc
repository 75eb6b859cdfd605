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

#include "mcover/error.h"
#include "mcover/parallel.h"
#include "mcover/rng.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mcover {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kMissingColumn:
      return "missing-column";
    case ErrorCode::kDomainViolation:
      return "domain-violation";
    case ErrorCode::kInfeasiblePartition:
      return "infeasible-partition";
    case ErrorCode::kShapeMismatch:
      return "shape-mismatch";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kInternal:
      return "internal";
  }
  return "unknown";
}

std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream RngStream::Derive(std::uint64_t master, StreamTag tag,
                            std::initializer_list<std::uint64_t> coords) {
  std::uint64_t h = Mix64(master ^ Mix64(static_cast<std::uint64_t>(tag)));
  for (std::uint64_t c : coords) h = Mix64(h ^ Mix64(c + 0x632be59bd9b4e019ULL));
  return RngStream(h);
}

int MaxThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace mcover
