// Copyright 2026 The rnatreedit Authors
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


#include <gtest/gtest.h>

#include "rnatreedit/error.hpp"
#include "rnatreedit/generate.hpp"
#include "rnatreedit/oracle.hpp"
#include "rnatreedit/zhang_shasha.hpp"

namespace rnatreedit {
namespace {

LabeledTree T(std::string_view text) { return ParseTreeText(text); }

TEST(MappingOracle, TrivialValues) {
  const CostModel unit = UnitModel();
  EXPECT_EQ(MappingOracle(T("a:1"), T("a:1"), unit), 0.0);
  EXPECT_EQ(MappingOracle(T("a:1"), T("b:1"), unit), 1.0);
  EXPECT_EQ(MappingOracle(T("a:1(b:1[e:1])"), T("a:1"), unit), 1.0);
  EXPECT_EQ(MappingOracle(T("a:1(b:1[e:1])"), T("b:1"), unit), 2.0);
  EXPECT_EQ(MappingOracle(T("R:1(A:1[e:1](B:1[e:1]))"), T("R:1(F:1[e:1],G:1[e:1])"), unit),
            3.0);
}

TEST(MappingOracle, RespectsBudgets) {
  const CostModel unit = UnitModel();
  Rng rng(1);
  const LabeledTree big = RandomTree(rng, kOracleMaxNodes + 1, 3, {"a"});
  EXPECT_THROW(MappingOracle(big, T("a:1"), unit), BudgetExceeded);
  SearchBudget tight;
  tight.cost_bound = 0.5;
  EXPECT_THROW(MappingOracle(T("a:1"), T("b:1"), unit, tight), BudgetExceeded);
  EXPECT_EQ(MappingOracle(T("a:1"), T("a:1"), unit, tight), 0.0);
}

TEST(ConstrainedMappingOracle, MustMapNodesCannotBeDeleted) {
  const CostModel unit = UnitModel();
  const LabeledTree s = T("r:1(a:1[e:1],b:1[e:1])");
  const LabeledTree t = T("r:1(b:1[e:1])");
  EXPECT_EQ(ConstrainedMappingOracle(s, {0, 0, 0}, t, {0, 0}, unit), 1.0);
  // Keeping `a` forces it onto `b`, and `b` has to go instead.
  EXPECT_EQ(ConstrainedMappingOracle(s, {0, 1, 0}, t, {0, 0}, unit), 2.0);
}

TEST(EnumerateFusionPlans, ChainHasThreePlans) {
  const CostModel unit = UnitModel(0.1);
  const auto plans = EnumerateFusionPlans(T("r:1(a:1[e:1](b:1[e:1]))"), unit, 1, false, false);
  ASSERT_EQ(plans.size(), 3u);
  int fused = 0;
  for (const FusionPlan& p : plans) {
    EXPECT_LE(p.longest, 1);
    if (p.fusions == 1) {
      ++fused;
      EXPECT_EQ(p.tree.size(), 2);
      EXPECT_DOUBLE_EQ(p.cost, 1.1);
    } else {
      EXPECT_EQ(p.cost, 0.0);
    }
  }
  EXPECT_EQ(fused, 2);
}

TEST(EnumerateFusionPlans, EllZeroIsIdentity) {
  const auto plans =
      EnumerateFusionPlans(T("r:1(a:1[e:1](b:1[e:1]),c:1[e:1])"), UnitModel(), 0, false, false);
  ASSERT_EQ(plans.size(), 1u);
  EXPECT_EQ(plans[0].fusions, 0);
}

TEST(ScriptSearchOracle, EllZeroMatchesMappingOracle) {
  const auto trees = AllTrees(3, {"a", "b"});
  const CostModel m = StructuralModel(Representation::kGeneric, 0.1);
  SearchBudget budget;
  budget.ell = 0;
  for (const auto& a : trees) {
    for (const auto& b : trees) {
      EXPECT_NEAR(ScriptSearchOracle(a, b, m, budget), MappingOracle(a, b, m), 1e-12);
    }
  }
}

TEST(ScriptSearchOracle, DeletionBeatsCostlyFusion) {
  const CostModel unit = UnitModel(0.1);
  const LabeledTree a = T("r:1(a:1[e:1](b:1[e:1]))");
  const LabeledTree b = T("r:1(a:1[e:1])");
  EXPECT_EQ(MappingOracle(a, b, unit), 1.0);
  // A unit-cost node fusion changes the merged label, so deletion stays best.
  EXPECT_NEAR(ScriptSearchOracle(a, b, unit), 1.0, 1e-12);
}

TEST(FusionOracle, AgreesWithSingleQueries) {
  std::vector<CostModel> models;
  for (double t : {0.0, 0.2}) models.push_back(StructuralModel(Representation::kGeneric, t));
  FusionOracle batch(models, 2, false);
  const auto trees = AllTrees(3, {"a", "b"});
  for (const auto& a : trees) {
    for (const auto& b : trees) {
      const auto d = batch.Distances(a, b);
      ASSERT_EQ(d.size(), models.size());
      for (size_t k = 0; k < models.size(); ++k) {
        ASSERT_EQ(d[k].size(), 3u);
        for (int ell = 0; ell <= 2; ++ell) {
          SearchBudget budget;
          budget.ell = ell;
          EXPECT_NEAR(d[k][ell], ScriptSearchOracle(a, b, models[k], budget), 1e-12);
        }
      }
    }
  }
}

TEST(FusionOracle, RejectsModelsDifferingBeyondT) {
  EXPECT_THROW(FusionOracle({UnitModel(0.1), StructuralModel(Representation::kGeneric, 0.1)},
                            1, false),
               std::invalid_argument);
}

}  // namespace
}  // namespace rnatreedit
