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

#include <cmath>
#include <limits>

#include "rnatreedit/edit_script.hpp"
#include "rnatreedit/generate.hpp"
#include "rnatreedit/oracle.hpp"
#include "rnatreedit/zhang_shasha.hpp"

namespace rnatreedit {
namespace {

constexpr double kTol = 1e-9;

double Zs(std::string_view a, std::string_view b, const CostModel& m) {
  const IndexedTree s(ParseTreeText(a));
  const IndexedTree t(ParseTreeText(b));
  return ZsDistance(s, t, m).distance;
}

TEST(ZhangShasha, SmallValues) {
  const CostModel unit = UnitModel();
  EXPECT_EQ(Zs("a:1", "a:1", unit), 0.0);
  EXPECT_EQ(Zs("a:1", "b:1", unit), 1.0);
  EXPECT_EQ(Zs("a:1(b:1[e:1])", "a:1", unit), 1.0);
  EXPECT_EQ(Zs("a:1", "a:1(b:1[e:1],c:1[e:1])", unit), 2.0);
  EXPECT_EQ(Zs("R:1(A:1[e:1](B:1[e:1]))", "R:1(F:1[e:1],G:1[e:1])", unit), 3.0);
}

TEST(ZhangShasha, EdgeLabelsCount) {
  const CostModel unit = UnitModel();
  EXPECT_EQ(Zs("a:1(b:1[e:1])", "a:1(b:1[f:1])", unit), 1.0);
}

TEST(ZhangShasha, MatchesMappingOracleExhaustively) {
  const auto trees = AllTrees(4, {"a", "b"});
  ASSERT_EQ(trees.size(), 102u);
  std::vector<IndexedTree> idx(trees.begin(), trees.end());
  for (const CostModel& m :
       {UnitModel(), StructuralModel(Representation::kGeneric, 0.1)}) {
    for (size_t a = 0; a < trees.size(); ++a) {
      for (size_t b = 0; b < trees.size(); ++b) {
        const double oracle = MappingOracle(trees[a], trees[b], m);
        ASSERT_NEAR(ZsDistance(idx[a], idx[b], m).distance, oracle, kTol)
            << ToText(trees[a]) << " vs " << ToText(trees[b]);
      }
    }
  }
}

TEST(ZhangShasha, ScriptsReplayToTarget) {
  Rng rng(17);
  const CostModel m = StructuralModel(Representation::kGeneric, 0.1);
  for (int k = 0; k < 200; ++k) {
    const LabeledTree a = RandomTree(rng, 1 + k % 8, 3, {"a", "b", "c"});
    const LabeledTree b = RandomTree(rng, 1 + (k / 8) % 8, 3, {"a", "b", "c"});
    const IndexedTree s(a), t(b);
    const ZsResult r = ZsDistance(s, t, m);
    const ExtractedScript ex = ExtractScript(r, m);
    EXPECT_NEAR(ex.script.total_cost(), r.distance, kTol);
    const ReplayResult replay = Replay(a, ex.script, m);
    EXPECT_TRUE(Isomorphic(replay.tree, b)) << ToText(a) << " -> " << ToText(b);
    EXPECT_NEAR(replay.cost, r.distance, kTol);
    EXPECT_TRUE(IsValidMapping(s, t, ex.mapping));
  }
}

TEST(ZhangShasha, SymmetryAndTriangle) {
  Rng rng(23);
  const CostModel m = StructuralModel(Representation::kGeneric, 0.1);
  for (int k = 0; k < 100; ++k) {
    const IndexedTree a(RandomTree(rng, 3 + k % 10, 3, {"a", "b"}));
    const IndexedTree b(RandomTree(rng, 3 + k % 7, 3, {"a", "b"}));
    const IndexedTree c(RandomTree(rng, 3 + k % 5, 3, {"a", "b"}));
    const double ab = ZsDistance(a, b, m).distance;
    EXPECT_NEAR(ab, ZsDistance(b, a, m).distance, kTol);
    EXPECT_LE(ZsDistance(a, c, m).distance,
              ab + ZsDistance(b, c, m).distance + kTol);
    EXPECT_EQ(ZsDistance(a, a, m).distance, 0.0);
  }
}

TEST(ZhangShasha, TiesPreferMatching) {
  // Swapping two children costs 2 either way; relabelling both wins.
  const CostModel unit = UnitModel();
  const IndexedTree s(ParseTreeText("r:1(a:1[e:1],b:1[e:1])"));
  const IndexedTree t(ParseTreeText("r:1(b:1[e:1],a:1[e:1])"));
  const ZsResult r = ZsDistance(s, t, unit);
  ASSERT_EQ(r.distance, 2.0);
  const EditScript script = ExtractScript(r, unit).script;
  // Every matched pair is listed as a relabel, the roots at cost 0.
  EXPECT_EQ(script.Count(OpKind::kRelabel), 3);
  EXPECT_EQ(script.Count(OpKind::kDelete), 0);
  EXPECT_EQ(script.Count(OpKind::kInsert), 0);
}

TEST(ZhangShasha, ForbiddenMatchesForceDeleteInsert) {
  const CostModel unit = UnitModel();
  const IndexedTree s(ParseTreeText("r:1(a:1[e:1],b:1[e:1])"));
  const IndexedTree t(ParseTreeText("r:1(a:1[e:1])"));
  const MatchFn none = [](int, int) { return std::numeric_limits<double>::infinity(); };
  const ZsResult r = ZsDistance(s, t, unit, none);
  EXPECT_EQ(r.distance, 5.0);
  const ExtractedScript ex = ExtractScript(r, unit, none);
  EXPECT_EQ(ex.script.Count(OpKind::kDelete), 3);
  EXPECT_EQ(ex.script.Count(OpKind::kInsert), 2);
  EXPECT_TRUE(ex.mapping.pairs.empty());
}

TEST(ZhangShasha, TablesHoldSubtreeDistances) {
  const CostModel unit = UnitModel();
  const IndexedTree s(ParseTreeText("r:1(a:1[e:1],b:1[e:1])"));
  const IndexedTree t(ParseTreeText("r:1(b:1[e:1])"));
  const ZsResult r = ZsDistance(s, t, unit);
  EXPECT_EQ(r.tables.rows, 3);
  EXPECT_EQ(r.tables.cols, 2);
  EXPECT_EQ(r.tables.at(2, 1), 0.0);  // b vs b
  EXPECT_EQ(r.tables.at(1, 1), 1.0);  // a vs b
  EXPECT_EQ(r.tables.at(3, 2), r.distance);
}

}  // namespace
}  // namespace rnatreedit
