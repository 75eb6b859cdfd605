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


#ifndef MCOVER_METRICS_H_
#define MCOVER_METRICS_H_

#include "mcover/baselines.h"
#include "mcover/table.h"

namespace mcover {

// Sum over rows and QI attributes of distance(original, published) / |D_A|.
// Throws kShapeMismatch unless both tables have the same row count and
// quasi-identifier count.
double ILoss(const Table& original, const Table& published);

// Generalized counterpart: each cell costs (hi - lo) / |D_A| for intervals
// and (|set| - 1) / |D_A| for label sets, so an ungeneralized value costs
// nothing.
double GeneralizedILoss(const GeneralizedTable& table);

}  // namespace mcover

#endif  // MCOVER_METRICS_H_
