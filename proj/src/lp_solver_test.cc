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


#include "mcover/lp_solver.h"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "mcover/error.h"
#include "testing/fixtures.h"
#include "testing/lp_vertex_oracle.h"

namespace mcover {
namespace {

using ::mcover::testing::CodeOf;
using ::mcover::testing::OracleStatus;

LinearProgram FromDense(const ::mcover::testing::DenseLp& d) {
  LinearProgram lp(d.c.size());
  lp.objective = d.c;
  for (std::size_t i = 0; i < d.a_eq.size(); ++i) {
    std::vector<SparseEntry> row;
    for (std::size_t j = 0; j < d.c.size(); ++j) {
      if (d.a_eq[i][j] != 0.0) row.push_back({j, d.a_eq[i][j]});
    }
    lp.AddEquality(std::move(row), d.b_eq[i]);
  }
  for (std::size_t i = 0; i < d.a_ub.size(); ++i) {
    std::vector<SparseEntry> row;
    for (std::size_t j = 0; j < d.c.size(); ++j) {
      if (d.a_ub[i][j] != 0.0) row.push_back({j, d.a_ub[i][j]});
    }
    lp.AddUpperBound(std::move(row), d.b_ub[i]);
  }
  return lp;
}

OracleStatus Status(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return OracleStatus::kOptimal;
    case LpStatus::kInfeasible: return OracleStatus::kInfeasible;
    case LpStatus::kUnbounded: return OracleStatus::kUnbounded;
  }
  return OracleStatus::kInfeasible;
}

TEST(SolveLpTest, ForcedEquality) {
  LinearProgram lp(1);
  lp.objective = {1.0};
  lp.AddEquality({{0, 1.0}}, 1.0);
  LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], 1.0, 1e-12);
  EXPECT_NEAR(s.objective_value, 1.0, 1e-12);
}

TEST(SolveLpTest, ConstantObjectiveOnFeasibleSet) {
  LinearProgram lp(2);
  lp.objective = {1.0, 1.0};
  lp.AddEquality({{0, 1.0}, {1, 1.0}}, 1.0);
  LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 1.0, 1e-12);
}

TEST(SolveLpTest, BoundedAndUnboundedRays) {
  LinearProgram bounded(1);
  bounded.objective = {-1.0};
  bounded.AddUpperBound({{0, 1.0}}, 5.0);
  LpSolution s = SolveLp(bounded);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], 5.0, 1e-12);
  EXPECT_NEAR(s.objective_value, -5.0, 1e-12);

  LinearProgram open(1);
  open.objective = {-1.0};
  EXPECT_EQ(SolveLp(open).status, LpStatus::kUnbounded);
}

TEST(SolveLpTest, Infeasible) {
  LinearProgram lp(2);
  lp.objective = {1.0, 0.0};
  lp.AddEquality({{0, 1.0}, {1, 1.0}}, 1.0);
  lp.AddUpperBound({{0, 1.0}, {1, 1.0}}, 0.5);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kInfeasible);
  LinearProgram negative(1);
  negative.AddEquality({{0, 1.0}}, -1.0);
  EXPECT_EQ(SolveLp(negative).status, LpStatus::kInfeasible);
}

TEST(SolveLpTest, RedundantAndNegativeRightHandSides) {
  LinearProgram lp(2);
  lp.objective = {2.0, 1.0};
  lp.AddEquality({{0, 1.0}, {1, 1.0}}, 2.0);
  lp.AddEquality({{0, 2.0}, {1, 2.0}}, 4.0);
  // -x0 <= -0.5 forces x0 >= 0.5.
  lp.AddUpperBound({{0, -1.0}}, -0.5);
  LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 2.5, 1e-12);
  EXPECT_NEAR(s.x[0], 0.5, 1e-12);
}

TEST(SolveLpTest, ZeroColumnsAndDegenerateVertex) {
  // Every constraint passes through the origin.
  LinearProgram lp(3);
  lp.objective = {1.0, -1.0, 0.0};
  lp.AddUpperBound({{0, -1.0}, {1, 1.0}}, 0.0);
  lp.AddUpperBound({{0, -1.0}, {1, 1.0}, {2, 1.0}}, 0.0);
  lp.AddUpperBound({{1, 1.0}, {2, -1.0}}, 0.0);
  LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 0.0, 1e-12);
}

TEST(SolveLpTest, RejectsMalformedPrograms) {
  LinearProgram lp(2);
  lp.objective = {1.0, NAN};
  EXPECT_EQ(CodeOf([&] { SolveLp(lp); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { LinearProgram bad(1); bad.AddEquality({{3, 1.0}}, 1.0); }),
            ErrorCode::kInvalidArgument);
  LinearProgram big(100);
  for (std::size_t i = 0; i < 100; ++i) big.AddUpperBound({{i, 1.0}}, 1.0);
  SolverOptions tiny;
  tiny.max_tableau_cells = 1000;
  EXPECT_EQ(CodeOf([&] { SolveLp(big, tiny); }), ErrorCode::kInvalidArgument);
}

TEST(SparseRowMatrixTest, MergesDuplicatesAndSorts) {
  SparseRowMatrix m(4);
  m.AddRow({{3, 1.0}, {1, 2.0}, {3, 0.5}});
  ASSERT_EQ(m.row(0).size(), 2u);
  EXPECT_EQ(m.row(0)[0].column, 1u);
  EXPECT_EQ(m.row(0)[1].value, 1.5);
  std::vector<double> x = {1, 1, 1, 2};
  EXPECT_EQ(m.RowDot(0, x), 5.0);
}

// Random small programs against brute-force vertex enumeration.
TEST(SolveLpTest, MatchesVertexEnumeration) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5);
  int optimal = 0;
  int trial = 0;
  for (; optimal < 50 && trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const std::size_t rows = 1 + rng() % 8;
    ::mcover::testing::DenseLp d;
    for (std::size_t j = 0; j < n; ++j) d.c.push_back(coef(rng));
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<double> a;
      for (std::size_t j = 0; j < n; ++j) a.push_back(coef(rng));
      // Mostly inequalities with non-negative right-hand sides so that a
      // good share of the corpus is feasible and bounded.
      if (rng() % 4 == 0) {
        d.a_eq.push_back(a);
        d.b_eq.push_back(coef(rng));
      } else {
        d.a_ub.push_back(a);
        d.b_ub.push_back(std::abs(coef(rng)));
      }
    }
    ::mcover::testing::OracleResult want =
        ::mcover::testing::SolveByVertexEnumeration(d);
    LinearProgram lp = FromDense(d);
    for (PivotRule rule : {PivotRule::kBland, PivotRule::kDantzig}) {
      SolverOptions options;
      options.pivot_rule = rule;
      LpSolution got = SolveLp(lp, options);
      ASSERT_EQ(Status(got.status), want.status) << "trial " << trial;
      if (got.status == LpStatus::kOptimal) {
        EXPECT_NEAR(got.objective_value, want.objective, 1e-6)
            << "trial " << trial;
        EXPECT_LE(lp.MaxViolation(got.x), kFeasibilityTolerance);
      }
    }
    if (want.status == OracleStatus::kOptimal) ++optimal;
  }
  EXPECT_EQ(optimal, 50);
}

TEST(SolveLpTest, Deterministic) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  LinearProgram lp(30);
  for (double& c : lp.objective) c = u(rng);
  for (int i = 0; i < 5; ++i) {
    std::vector<SparseEntry> row;
    for (std::size_t j = 0; j < 30; ++j) row.push_back({j, u(rng)});
    lp.AddEquality(std::move(row), 1.0 + i);
  }
  LpSolution a = SolveLp(lp);
  LpSolution b = SolveLp(lp);
  ASSERT_EQ(a.status, LpStatus::kOptimal);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(WriteLpTextTest, DenseLayout) {
  LinearProgram lp(2);
  lp.objective = {1.0, 2.0};
  lp.AddEquality({{0, 1.0}, {1, 1.0}}, 1.0);
  lp.AddUpperBound({{1, 3.0}}, 4.0);
  std::ostringstream out;
  WriteLpText(lp, out);
  EXPECT_EQ(out.str(),
            "lp 2 variables 1 equalities 1 inequalities\n"
            "min 1 2\n"
            "1 1 = 1\n"
            "0 3 <= 4\n");
}

}  // namespace
}  // namespace mcover
