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

#include <set>

#include "rnatreedit/generate.hpp"

namespace rnatreedit {
namespace {

// Ordered trees with n nodes are counted by the Catalan number C(n-1);
// each node takes one of k labels.
TEST(AllTrees, CountsMatchCatalanTimesLabelings) {
  EXPECT_EQ(AllTrees(3, {"a", "b"}).size(), 2u + 4u + 2u * 8u);
  EXPECT_EQ(AllTrees(4, {"a", "b"}).size(), 22u + 5u * 16u);
  EXPECT_EQ(AllTrees(5, {"a", "b"}).size(), 102u + 14u * 32u);
  EXPECT_EQ(AllTrees(4, {"a"}).size(), 1u + 1u + 2u + 5u);
}

TEST(AllTrees, AreDistinct) {
  std::set<std::string> seen;
  for (const auto& t : AllTrees(5, {"a", "b"})) {
    EXPECT_TRUE(seen.insert(ToText(t)).second);
    EXPECT_TRUE(t.nodes[0].label.edge.empty());
  }
}

TEST(RandomTree, RespectsSizeAndDegree) {
  Rng rng(2);
  for (int n = 1; n <= 60; ++n) {
    const IndexedTree t(RandomTree(rng, n, 3, {"a", "b"}));
    EXPECT_EQ(t.size(), n);
    EXPECT_LE(t.max_degree(), 3);
  }
}

TEST(RandomTree, IsDeterministicPerSeed) {
  Rng a(77), b(77);
  EXPECT_EQ(ToText(RandomTree(a, 25, 4, {"x"})), ToText(RandomTree(b, 25, 4, {"x"})));
}

TEST(RandomStructure, IsValidAndDeterministic) {
  Rng rng(5), again(5);
  for (int k = 0; k < 50; ++k) {
    const SecondaryStructure s = RandomStructure(rng, 20 + k);
    EXPECT_EQ(s.length(), 20 + k);
    EXPECT_EQ(ParseDotBracket(s.sequence + "\n" + ToDotBracketLine(s)).pairs, s.pairs);
    EXPECT_EQ(RandomStructure(again, 20 + k), s);
  }
}

TEST(GenericLabel, RootHasNoEdge) {
  EXPECT_EQ(GenericLabel("a", true), (ObjectLabel{{"a", 1}, {}}));
  EXPECT_EQ(GenericLabel("b", false), (ObjectLabel{{"b", 1}, {"e", 1}}));
}

}  // namespace
}  // namespace rnatreedit
