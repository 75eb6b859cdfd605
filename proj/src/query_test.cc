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


#include "mcover/query.h"

#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "mcover/baselines.h"
#include "mcover/error.h"
#include "testing/compatible_worlds.h"
#include "testing/fixtures.h"

namespace mcover {
namespace {

using ::mcover::testing::CodeOf;
using ::mcover::testing::MakeTable;
using ::mcover::testing::RandomTable;

Schema FourQiSchema() {
  return Schema({AttributeSchema::ContinuousInteger("age", 20, 29),
                 AttributeSchema::ContinuousInteger("hours", 0, 5),
                 AttributeSchema::Categorical("edu", {"hs", "ba", "ms"}),
                 AttributeSchema::Categorical("sex", {"F", "M"}),
                 AttributeSchema::ContinuousInteger("zip", 0, 3)},
                AttributeSchema::ContinuousInteger("salary", 1, 100));
}

Predicate Numeric(std::size_t attr, CompareOp op, Value v) {
  Predicate p;
  p.attr = attr;
  p.op = op;
  p.value = v;
  return p;
}

TEST(CompareOpTest, NamesRoundTrip) {
  for (CompareOp op : {CompareOp::kGreater, CompareOp::kLess, CompareOp::kEqual,
                       CompareOp::kGreaterEqual, CompareOp::kLessEqual,
                       CompareOp::kNotEqual}) {
    EXPECT_EQ(ParseCompareOp(CompareOpName(op)), op);
  }
  EXPECT_EQ(CodeOf([] { ParseCompareOp("=="); }), ErrorCode::kParse);
}

TEST(PredicateTest, MatchesAndCountIn) {
  Predicate gt = Numeric(0, CompareOp::kGreater, 25);
  EXPECT_TRUE(gt.Matches(26));
  EXPECT_FALSE(gt.Matches(25));
  GeneralizedCell interval{20, 30, {}};
  EXPECT_EQ(gt.CountIn(interval), 5);
  EXPECT_EQ(Numeric(0, CompareOp::kNotEqual, 22).CountIn(interval), 10);
  EXPECT_EQ(Numeric(0, CompareOp::kLessEqual, 19).CountIn(interval), 0);

  Predicate in;
  in.attr = 2;
  in.categorical = true;
  in.members = {0, 2};
  EXPECT_TRUE(in.Matches(2));
  EXPECT_FALSE(in.Matches(1));
  GeneralizedCell set{0, 1, {0, 1}};
  EXPECT_EQ(in.CountIn(set), 1);
}

TEST(GenerateWorkloadTest, ShapeAndDeterminism) {
  Schema schema = FourQiSchema();
  QueryWorkload a = GenerateWorkload(schema, 1000, 12);
  QueryWorkload b = GenerateWorkload(schema, 1000, 12);
  ASSERT_EQ(a.queries.size(), 1000u);
  EXPECT_EQ(a.seed, 12u);
  EXPECT_EQ(WorkloadToJson(a, schema), WorkloadToJson(b, schema));
  std::set<CompareOp> ops;
  for (const SumQuery& q : a.queries) {
    ASSERT_EQ(q.predicates.size(), kPredicatesPerQuery);
    std::set<std::size_t> attrs;
    for (const Predicate& p : q.predicates) {
      attrs.insert(p.attr);
      EXPECT_EQ(p.categorical, schema.qi(p.attr).is_categorical());
      if (p.categorical) {
        EXPECT_FALSE(p.members.empty());
      } else {
        ops.insert(p.op);
        EXPECT_TRUE(schema.qi(p.attr).Contains(p.value));
      }
    }
    EXPECT_EQ(attrs.size(), kPredicatesPerQuery);
  }
  EXPECT_EQ(ops.size(), 6u);
  EXPECT_NE(WorkloadToJson(GenerateWorkload(schema, 1000, 13), schema),
            WorkloadToJson(a, schema));
}

TEST(GenerateWorkloadTest, RejectsZeroSumsAndSmallSchemas) {
  Schema schema = FourQiSchema();
  Table t = RandomTable(schema, 400, 10, 4);
  QueryWorkload w = GenerateWorkload(schema, 50, 3, &t);
  for (const SumQuery& q : w.queries) EXPECT_GT(ActualSum(q, t), 0.0);
  Schema narrow({AttributeSchema::ContinuousInteger("a", 0, 1)},
                AttributeSchema::ContinuousInteger("s", 0, 1));
  EXPECT_EQ(CodeOf([&] { GenerateWorkload(narrow, 1, 0); }),
            ErrorCode::kInvalidArgument);
}

TEST(WorkloadJsonTest, RoundTrip) {
  Schema schema = FourQiSchema();
  QueryWorkload w = GenerateWorkload(schema, 40, 8);
  std::string text = WorkloadToJson(w, schema);
  QueryWorkload back = ParseWorkload(text, schema);
  EXPECT_EQ(back.seed, w.seed);
  EXPECT_EQ(WorkloadToJson(back, schema), text);
  EXPECT_EQ(CodeOf([&] { ParseWorkload("{\"queries\": 3}", schema); }),
            ErrorCode::kParse);
}

TEST(AnswerRandomizedTest, ExactTableHasNoError) {
  Schema schema = FourQiSchema();
  Table t = RandomTable(schema, 300, 10, 6);
  QueryWorkload w = GenerateWorkload(schema, 30, 1, &t);
  for (const SumQuery& q : w.queries) {
    QueryAnswer a = AnswerRandomized(q, t);
    QueryError e = RelativeError(a, ActualSum(q, t));
    EXPECT_EQ(e.interval, 0.0);
    EXPECT_EQ(e.point, 0.0);
  }
  EXPECT_EQ(CodeOf([] { RelativeError(QueryAnswer{}, 0.0); }),
            ErrorCode::kInvalidArgument);
}

TEST(AnswerGeneralizedTest, StraddlingIntervalCountsOnlyInUpper) {
  Schema schema = FourQiSchema();
  Table t = MakeTable(schema, {{20, 0, 0, 0, 0}, {29, 0, 0, 0, 0}}, {10, 30});
  GeneralizedTable g = MondrianGeneralize(t, 2);
  SumQuery q;
  q.predicates = {Numeric(0, CompareOp::kGreater, 25)};
  QueryAnswer a = AnswerGeneralized(q, g);
  EXPECT_EQ(a.lower, 0.0);
  EXPECT_EQ(a.upper, 40.0);
  EXPECT_NEAR(a.estimate, 40.0 * 4.0 / 10.0, 1e-12);
  QueryError e = RelativeError(a, ActualSum(q, t));
  EXPECT_NEAR(e.interval, 40.0 / 30.0, 1e-12);
}

class CompatibleWorldsTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(CompatibleWorldsTest, AnswersMatchEnumeration) {
  Schema schema = FourQiSchema();
  Table t = RandomTable(schema, 20, 4, GetParam());
  GeneralizedTable g = MondrianGeneralize(t, 2);
  BucketizedTables b = AnatomyBucketize(t, 2, GetParam());
  QueryWorkload w = GenerateWorkload(schema, 40, GetParam());
  for (const SumQuery& q : w.queries) {
    const double actual = ActualSum(q, t);
    QueryAnswer ga = AnswerGeneralized(q, g);
    ::mcover::testing::WorldRange gw = ::mcover::testing::GeneralizedWorlds(q, g);
    EXPECT_NEAR(ga.lower, gw.min, 1e-9);
    EXPECT_NEAR(ga.upper, gw.max, 1e-9);
    EXPECT_NEAR(ga.estimate, gw.mean, 1e-9);
    EXPECT_LE(ga.lower, actual);
    EXPECT_GE(ga.upper, actual);

    QueryAnswer aa = AnswerAnatomy(q, b);
    ::mcover::testing::WorldRange aw = ::mcover::testing::AnatomyWorlds(q, b);
    EXPECT_NEAR(aa.lower, aw.min, 1e-9);
    EXPECT_NEAR(aa.upper, aw.max, 1e-9);
    EXPECT_NEAR(aa.estimate, aw.mean, 1e-9);
    EXPECT_LE(aa.lower, actual + 1e-9);
    EXPECT_GE(aa.upper, actual - 1e-9);

    QueryAnswer ra = AnswerRandomized(q, t);
    EXPECT_EQ(ra.estimate, actual);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CompatibleWorldsTest,
                         ::testing::Values(1u, 2u, 3u));

}  // namespace
}  // namespace mcover
