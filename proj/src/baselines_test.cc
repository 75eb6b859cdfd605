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


#include "mcover/baselines.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "mcover/error.h"
#include "testing/fixtures.h"

namespace mcover {
namespace {

using ::mcover::testing::CodeOf;
using ::mcover::testing::MakeTable;
using ::mcover::testing::NumericSchema;
using ::mcover::testing::RandomTable;

Schema MixedSchema() {
  return Schema({AttributeSchema::ContinuousInteger("age", 17, 71),
                 AttributeSchema::Categorical("sex", {"F", "M"})},
                AttributeSchema::Categorical("disease", {"a", "b", "c", "d"}));
}

TEST(MondrianGeneralizeTest, SingleGroupCoversRange) {
  Table t = MakeTable(MixedSchema(), {{25, 0}, {27, 1}, {29, 0}}, {0, 1, 2});
  GeneralizedTable g = MondrianGeneralize(t, 3);
  ASSERT_EQ(g.groups.size(), 1u);
  const GeneralizedCell& age = g.cell(0, 0);
  EXPECT_EQ(age.lo, 25);
  EXPECT_EQ(age.hi, 29);
  EXPECT_EQ(age.Width(), 5);
  EXPECT_TRUE(age.Contains(26));
  EXPECT_FALSE(age.Contains(30));
  EXPECT_EQ(g.cell(2, 1).members, (std::vector<Value>{0, 1}));
  EXPECT_EQ(g.cell(2, 1).Width(), 2);
  EXPECT_EQ(g.sensitive, (std::vector<Value>{0, 1, 2}));

  std::ostringstream out;
  WriteGeneralizedCsv(g, out);
  EXPECT_EQ(out.str(),
            "age,sex,disease\n25-29,{F|M},a\n25-29,{F|M},b\n25-29,{F|M},c\n");
}

TEST(MondrianGeneralizeTest, CellsContainTheirRows) {
  Table t = MakeTable(NumericSchema({{1, 8}}),
                      {{1}, {2}, {3}, {4}, {5}, {6}, {7}, {8}},
                      {0, 1, 0, 1, 0, 1, 0, 1});
  GeneralizedTable g = MondrianGeneralize(t, 2);
  EXPECT_EQ(g.groups.size(), 4u);
  for (std::size_t r = 0; r < t.size(); ++r) {
    EXPECT_TRUE(g.cell(r, 0).Contains(t.qi(r, 0)));
    EXPECT_EQ(g.cell(r, 0).Width(), 2);
  }

  Table big = RandomTable(NumericSchema({{0, 99}, {0, 20}}), 300, 5, 8);
  GeneralizedTable gb = MondrianGeneralize(big, 5);
  std::size_t covered = 0;
  for (const GeneralizedGroup& group : gb.groups) {
    std::set<Value> s;
    for (std::size_t r : group.rows) {
      s.insert(big.row(r).sensitive);
      EXPECT_EQ(gb.row_group[r], &group - gb.groups.data());
      for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_TRUE(group.cells[k].Contains(big.qi(r, k)));
      }
    }
    EXPECT_GE(s.size(), 5u);
    covered += group.rows.size();
  }
  EXPECT_EQ(covered, big.size());
}

TEST(AnatomyBucketizeTest, AlternatingValues) {
  Table t = MakeTable(MixedSchema(), {{20, 0}, {30, 1}, {40, 0}, {50, 1}},
                      {0, 1, 0, 1});
  BucketizedTables b = AnatomyBucketize(t, 2, 1);
  ASSERT_EQ(b.num_buckets(), 2u);
  for (const std::vector<Value>& values : b.bucket_values) {
    EXPECT_EQ(values, (std::vector<Value>{0, 1}));
  }
  EXPECT_EQ(b.qi[2], (std::vector<Value>{40, 0}));

  std::ostringstream qi;
  WriteAnatomyQiCsv(b, qi);
  EXPECT_EQ(qi.str().substr(0, qi.str().find('\n')), "age,sex,bucket_id");
  std::ostringstream sens;
  WriteAnatomySensitiveCsv(b, sens);
  EXPECT_EQ(sens.str(), "bucket_id,disease,count\n0,a,1\n0,b,1\n1,a,1\n1,b,1\n");
}

TEST(AnatomyBucketizeTest, DominantValueIsInfeasible) {
  Table t = MakeTable(MixedSchema(), {{20, 0}, {30, 1}, {40, 0}, {50, 1}},
                      {0, 0, 0, 1});
  EXPECT_EQ(CodeOf([&] { AnatomyBucketize(t, 2, 1); }),
            ErrorCode::kInfeasiblePartition);
}

TEST(AnatomyBucketizeTest, BucketsAreDiverseAndPartitionRows) {
  // Uneven frequencies so that leftovers occur.
  std::vector<std::vector<Value>> qi;
  std::vector<Value> s;
  std::vector<int> counts = {25, 25, 20, 15, 10, 5};
  for (std::size_t v = 0; v < counts.size(); ++v) {
    for (int i = 0; i < counts[v]; ++i) {
      qi.push_back({static_cast<Value>(qi.size() % 50)});
      s.push_back(static_cast<Value>(v));
    }
  }
  Table t = MakeTable(NumericSchema({{0, 49}}), qi, s);
  BucketizedTables b = AnatomyBucketize(t, 4, 5);
  std::vector<std::multiset<Value>> seen(b.num_buckets());
  for (std::size_t r = 0; r < t.size(); ++r) {
    ASSERT_LT(b.row_bucket[r], b.num_buckets());
    seen[b.row_bucket[r]].insert(t.row(r).sensitive);
  }
  for (std::size_t k = 0; k < b.num_buckets(); ++k) {
    std::vector<Value> sorted(seen[k].begin(), seen[k].end());
    EXPECT_EQ(sorted, b.bucket_values[k]);
    EXPECT_GE(b.bucket_values[k].size(), 4u);
    EXPECT_EQ(std::set<Value>(sorted.begin(), sorted.end()).size(),
              sorted.size());
  }
  BucketizedTables again = AnatomyBucketize(t, 4, 5);
  EXPECT_EQ(again.row_bucket, b.row_bucket);
}

}  // namespace
}  // namespace mcover
