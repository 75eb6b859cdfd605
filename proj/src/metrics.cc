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


#include "mcover/metrics.h"

#include "mcover/error.h"

namespace mcover {

double ILoss(const Table& original, const Table& published) {
  const Schema& schema = original.schema();
  if (original.size() != published.size() ||
      schema.num_qi() != published.schema().num_qi()) {
    Fail(ErrorCode::kShapeMismatch, "tables differ in shape");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < schema.num_qi(); ++k) {
    const AttributeSchema& attr = schema.qi(k);
    const auto domain = static_cast<double>(attr.domain_size());
    double sum = 0.0;
    for (std::size_t r = 0; r < original.size(); ++r) {
      sum += attr.Distance(original.qi(r, k), published.qi(r, k));
    }
    total += sum / domain;
  }
  return total;
}

double GeneralizedILoss(const GeneralizedTable& table) {
  const Schema& schema = table.schema;
  double total = 0.0;
  for (const GeneralizedGroup& group : table.groups) {
    for (std::size_t k = 0; k < schema.num_qi(); ++k) {
      const auto domain = static_cast<double>(schema.qi(k).domain_size());
      total += static_cast<double>(group.rows.size()) *
               static_cast<double>(group.cells[k].Width() - 1) / domain;
    }
  }
  return total;
}

}  // namespace mcover
