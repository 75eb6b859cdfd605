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

#ifndef MCOVER_SYNTHETIC_H_
#define MCOVER_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>

#include "mcover/table.h"

namespace mcover {

// Census-shaped schema: seven quasi-identifiers (gender, age, relationship,
// marital_status, race, education, hours_per_week) with domain sizes
// 2/55/13/6/9/10/95 and a salary sensitive attribute with 851 values.
Schema CensusSchema();

// Draws rows with census-like marginals and correlations (salary rises
// with education, age and hours; marital status follows age; most people
// work 40 hours). Deterministic in the seed.
Table GenerateCensusLike(std::size_t rows, std::uint64_t seed);

}  // namespace mcover

#endif  // MCOVER_SYNTHETIC_H_
