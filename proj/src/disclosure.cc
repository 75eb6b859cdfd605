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


#include "mcover/disclosure.h"

#include <algorithm>
#include <array>
#include <bit>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mcover/error.h"
#include "mcover/rng.h"

namespace mcover {

namespace {

using Mask = std::uint64_t;

void CheckInputs(const Table& original, std::size_t published_rows,
                 double p_match, const DisclosureOptions& options) {
  if (!(p_match >= 0.0 && p_match <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "p_match must lie in [0, 1]");
  }
  if (options.trials == 0) {
    Fail(ErrorCode::kInvalidArgument, "trials must be positive");
  }
  if (published_rows != original.size()) {
    Fail(ErrorCode::kShapeMismatch, "published view has " +
                                        std::to_string(published_rows) +
                                        " rows, original " +
                                        std::to_string(original.size()));
  }
  if (original.schema().num_qi() > 64) {
    Fail(ErrorCode::kInvalidArgument,
         "disclosure simulation supports at most 64 quasi-identifiers");
  }
}

// Known-attribute masks, row-major by (row, trial). Each row draws from its
// own stream so results do not depend on scheduling.
std::vector<Mask> DrawMasks(std::size_t rows, std::size_t d, double p_match,
                            const DisclosureOptions& options) {
  std::vector<Mask> masks(rows * options.trials);
  for (std::size_t r = 0; r < rows; ++r) {
    RngStream rng =
        RngStream::Derive(options.seed, StreamTag::kDisclosure, {r});
    for (std::size_t t = 0; t < options.trials; ++t) {
      Mask mask = 0;
      for (std::size_t k = 0; k < d; ++k) {
        if (rng.Bernoulli(p_match)) mask |= Mask{1} << k;
      }
      masks[r * options.trials + t] = mask;
    }
  }
  return masks;
}

std::vector<Mask> DistinctMasks(std::vector<Mask> masks) {
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  if (!masks.empty() && masks.front() == 0) masks.erase(masks.begin());
  return masks;
}

DisclosureReport Summarize(const std::vector<double>& identity,
                           const std::vector<double>& attribute,
                           double p_match, const DisclosureOptions& options) {
  DisclosureReport report;
  report.p_match = p_match;
  report.trials = options.trials;
  report.seed = options.seed;
  double id = 0.0;
  double attr = 0.0;
  for (std::size_t r = 0; r < identity.size(); ++r) {
    id += identity[r];
    attr += attribute[r];
  }
  const double cells =
      static_cast<double>(identity.size()) * static_cast<double>(options.trials);
  report.identity = cells > 0.0 ? id / cells : 0.0;
  report.attribute = cells > 0.0 ? attr / cells : 0.0;
  return report;
}

std::vector<Value> Project(std::span<const Value> qi, Mask mask) {
  std::vector<Value> key;
  key.reserve(static_cast<std::size_t>(std::popcount(mask)));
  for (std::size_t k = 0; k < qi.size(); ++k) {
    if ((mask >> k) & 1) key.push_back(qi[k]);
  }
  return key;
}

struct KeyHash {
  std::size_t operator()(const std::vector<Value>& key) const {
    std::uint64_t h = key.size();
    for (Value v : key) h = Mix64(h ^ static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
  }
};

// Published rows sharing one projection.
struct MatchClass {
  double count = 0.0;
  std::unordered_map<Value, double> sensitive_mass;
};

using MaskIndex = std::unordered_map<std::vector<Value>, MatchClass, KeyHash>;

// Core of the exact-value schemes. qi[r] is row r's published QI vector and
// carries(r) lists (sensitive value, share) pairs summing to 1.
template <typename Carries>
DisclosureReport SimulateExact(const Table& original,
                               const std::vector<const std::vector<Value>*>& qi,
                               Carries carries, double p_match,
                               const DisclosureOptions& options) {
  const std::size_t n = original.size();
  const std::size_t d = original.schema().num_qi();
  std::vector<Mask> masks = DrawMasks(n, d, p_match, options);
  std::vector<Mask> used = DistinctMasks(masks);

  std::vector<MaskIndex> indexes(used.size());
  ParallelFor(used.size(), options.execution, [&](std::size_t m) {
    MaskIndex& index = indexes[m];
    for (std::size_t r = 0; r < n; ++r) {
      MatchClass& cls = index[Project(*qi[r], used[m])];
      cls.count += 1.0;
      for (const auto& [value, share] : carries(r)) {
        cls.sensitive_mass[value] += share;
      }
    }
  });

  std::vector<double> identity(n, 0.0);
  std::vector<double> attribute(n, 0.0);
  ParallelFor(n, options.execution, [&](std::size_t r) {
    const Row& target = original.row(r);
    for (std::size_t t = 0; t < options.trials; ++t) {
      const Mask mask = masks[r * options.trials + t];
      if (mask == 0) continue;
      const std::size_t m = static_cast<std::size_t>(
          std::lower_bound(used.begin(), used.end(), mask) - used.begin());
      std::vector<Value> key = Project(target.qi, mask);
      auto it = indexes[m].find(key);
      if (it == indexes[m].end()) continue;
      const MatchClass& cls = it->second;
      if (Project(*qi[r], mask) == key) identity[r] += 1.0 / cls.count;
      auto mass = cls.sensitive_mass.find(target.sensitive);
      if (mass != cls.sensitive_mass.end()) {
        attribute[r] += mass->second / cls.count;
      }
    }
  });
  return Summarize(identity, attribute, p_match, options);
}

}  // namespace

DisclosureReport SimulateDisclosure(const Table& original,
                                    const Table& published, double p_match,
                                    const DisclosureOptions& options) {
  CheckInputs(original, published.size(), p_match, options);
  if (published.schema().num_qi() != original.schema().num_qi()) {
    Fail(ErrorCode::kShapeMismatch, "tables differ in quasi-identifiers");
  }
  std::vector<const std::vector<Value>*> qi;
  for (const Row& row : published.rows()) qi.push_back(&row.qi);
  auto carries = [&](std::size_t r) {
    return std::array<std::pair<Value, double>, 1>{
        {{published.row(r).sensitive, 1.0}}};
  };
  return SimulateExact(original, qi, carries, p_match, options);
}

DisclosureReport SimulateDisclosure(const Table& original,
                                    const BucketizedTables& published,
                                    double p_match,
                                    const DisclosureOptions& options) {
  CheckInputs(original, published.size(), p_match, options);
  std::vector<const std::vector<Value>*> qi;
  for (const std::vector<Value>& row : published.qi) qi.push_back(&row);
  std::vector<std::vector<std::pair<Value, double>>> shares;
  for (const std::vector<Value>& values : published.bucket_values) {
    std::vector<std::pair<Value, double>> bucket;
    const double share = 1.0 / static_cast<double>(values.size());
    for (Value v : values) bucket.emplace_back(v, share);
    shares.push_back(std::move(bucket));
  }
  auto carries = [&](std::size_t r) -> const auto& {
    return shares[published.row_bucket[r]];
  };
  return SimulateExact(original, qi, carries, p_match, options);
}

DisclosureReport SimulateDisclosure(const Table& original,
                                    const GeneralizedTable& published,
                                    double p_match,
                                    const DisclosureOptions& options) {
  CheckInputs(original, published.size(), p_match, options);
  const std::size_t n = original.size();
  const std::size_t d = original.schema().num_qi();
  const std::size_t groups = published.groups.size();
  const std::size_t words = (groups + 63) / 64;

  // For every attribute and every value a target can know, the groups
  // whose cell contains it.
  std::vector<std::vector<Value>> known(d);
  std::vector<std::vector<std::uint64_t>> bits(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (const Row& row : original.rows()) known[k].push_back(row.qi[k]);
    std::sort(known[k].begin(), known[k].end());
    known[k].erase(std::unique(known[k].begin(), known[k].end()),
                   known[k].end());
    bits[k].assign(known[k].size() * words, 0);
    for (std::size_t v = 0; v < known[k].size(); ++v) {
      for (std::size_t g = 0; g < groups; ++g) {
        if (published.groups[g].cells[k].Contains(known[k][v])) {
          bits[k][v * words + g / 64] |= std::uint64_t{1} << (g % 64);
        }
      }
    }
  }
  std::vector<std::vector<Value>> group_sensitive(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t r : published.groups[g].rows) {
      group_sensitive[g].push_back(published.sensitive[r]);
    }
    std::sort(group_sensitive[g].begin(), group_sensitive[g].end());
  }

  std::vector<Mask> masks = DrawMasks(n, d, p_match, options);
  std::vector<double> identity(n, 0.0);
  std::vector<double> attribute(n, 0.0);
  ParallelFor(n, options.execution, [&](std::size_t r) {
    const Row& target = original.row(r);
    const std::size_t own = published.row_group[r];
    std::vector<std::uint64_t> hit(words);
    for (std::size_t t = 0; t < options.trials; ++t) {
      const Mask mask = masks[r * options.trials + t];
      if (mask == 0) continue;
      std::fill(hit.begin(), hit.end(), ~std::uint64_t{0});
      for (std::size_t k = 0; k < d; ++k) {
        if (!((mask >> k) & 1)) continue;
        const std::size_t v = static_cast<std::size_t>(
            std::lower_bound(known[k].begin(), known[k].end(), target.qi[k]) -
            known[k].begin());
        for (std::size_t w = 0; w < words; ++w) hit[w] &= bits[k][v * words + w];
      }
      double count = 0.0;
      double same = 0.0;
      for (std::size_t w = 0; w < words; ++w) {
        for (std::uint64_t word = hit[w]; word != 0; word &= word - 1) {
          const std::size_t g = w * 64 + static_cast<std::size_t>(
                                             std::countr_zero(word));
          if (g >= groups) break;
          const std::vector<Value>& values = group_sensitive[g];
          count += static_cast<double>(values.size());
          auto range = std::equal_range(values.begin(), values.end(),
                                        target.sensitive);
          same += static_cast<double>(range.second - range.first);
        }
      }
      if (count == 0.0) continue;
      if ((hit[own / 64] >> (own % 64)) & 1) identity[r] += 1.0 / count;
      attribute[r] += same / count;
    }
  });
  return Summarize(identity, attribute, p_match, options);
}

}  // namespace mcover
