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

#include <functional>

#include "rnatreedit/error.hpp"
#include "rnatreedit/generate.hpp"
#include "rnatreedit/structure.hpp"
#include "rnatreedit/tree.hpp"

namespace rnatreedit {
namespace {

LabeledTree Rep(std::string_view db, Representation rep) {
  const size_t cut = db.find('\n');
  std::string seq;
  for (char c : db.substr(cut + 1)) {
    seq += c == '(' ? 'G' : c == ')' ? 'C' : 'A';
  }
  return BuildRepresentation(ParseDotBracket(seq + "\n" + std::string(db.substr(cut + 1))), rep);
}

TEST(Representations, HairpinNodeCounts) {
  const std::string db = "x\n(((...)))";
  EXPECT_EQ(Rep(db, Representation::kRepB).size(), 7);
  EXPECT_EQ(Rep(db, Representation::kRepC).size(), 3);
  EXPECT_EQ(Rep(db, Representation::kRepD).size(), 2);
  EXPECT_EQ(Rep(db, Representation::kRepE).size(), 2);
}

TEST(Representations, HairpinRepD) {
  EXPECT_EQ(ToText(Rep("x\n(((...)))", Representation::kRepD)), "E:0(H:3[helix:3])");
}

TEST(Representations, InternalLoopRepDAndRepE) {
  const std::string db = "x\n((..((...))..))";
  EXPECT_EQ(ToText(Rep(db, Representation::kRepD)),
            "E:0(I:4[helix:2](H:3[helix:2]))");
  EXPECT_EQ(ToText(Rep(db, Representation::kRepE)), "E:0(H:3[helix:8])");
}

TEST(Representations, CloverLeafSkeleton) {
  const auto t = Rep(
      "x\n(((((((..((((........)))).(((((.......))))).....(((((.......))))))))))))....",
      Representation::kRepE);
  EXPECT_EQ(ToText(t), "E:4(M:8[helix:7](H:8[helix:4],H:7[helix:5],H:7[helix:5]))");
}

TEST(Representations, RepBKeepsBaseOrder) {
  const auto s = ParseDotBracket("GGAAGGAAACCAACCA\n((..((...))..)).");
  const LabeledTree t = BuildRepB(s);
  // Visiting a pair node emits its 5' base, then the subtree, then its 3'
  // base; leaves emit their base.
  std::vector<int> order;
  std::function<void(int)> walk = [&](int id) {
    const auto& n = t.nodes[id];
    if (n.bases.size() == 2) order.push_back(n.bases[0]);
    if (n.bases.size() == 1) order.push_back(n.bases[0]);
    for (int c : n.children) walk(c);
    if (n.bases.size() == 2) order.push_back(n.bases[1]);
  };
  walk(0);
  ASSERT_EQ(static_cast<int>(order.size()), s.length());
  for (int k = 0; k < s.length(); ++k) EXPECT_EQ(order[k], k);
}

TEST(Representations, CoarseningOrderOnRandomStructures) {
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const auto s = RandomStructure(rng, 10 + k % 90);
    const int b = BuildRepB(s).size();
    const int c = BuildRepresentation(s, Representation::kRepC).size();
    const int d = BuildRepresentation(s, Representation::kRepD).size();
    const int e = BuildRepresentation(s, Representation::kRepE).size();
    EXPECT_LE(e, d);
    EXPECT_LE(d, c);
    EXPECT_LE(c, b);
    EXPECT_EQ(ToText(BuildRepB(s)), ToText(BuildRepB(s)));
  }
}

TEST(Index, SingleNode) {
  LabeledTree t;
  t.AddRoot(GenericLabel("a", true));
  const IndexedTree i(t);
  EXPECT_EQ(i.size(), 1);
  EXPECT_EQ(i.l(1), 1);
  EXPECT_EQ(i.keyroots(), std::vector<int>{1});
}

TEST(Index, PathHasOnlyTheRootAsKeyroot) {
  const IndexedTree i(ParseTreeText("a:1(b:1[e:1](c:1[e:1]))"));
  EXPECT_EQ(i.keyroots(), std::vector<int>{3});
  EXPECT_EQ(i.leaf_count(), 1);
  EXPECT_EQ(i.height(), 3);
}

TEST(Index, MatchesDefinitionsOnRandomTrees) {
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const LabeledTree t = RandomTree(rng, 20, 4, {"a", "b"});
    const IndexedTree idx(t);
    ASSERT_EQ(idx.size(), 20);
    EXPECT_EQ(idx.l(idx.size()), 1);
    // Leftmost leaf by walking first children from the node itself.
    for (int i = 1; i <= idx.size(); ++i) {
      int id = idx.node_id(i);
      while (!t.nodes[id].children.empty()) id = t.nodes[id].children.front();
      EXPECT_EQ(idx.l(i), idx.index_of(id));
    }
    // Keyroots: the root plus every node with a left sibling.
    std::vector<int> expected;
    for (int i = 1; i <= idx.size(); ++i) {
      const int p = idx.parent(i);
      if (p == 0 || idx.children(p).front() != i) expected.push_back(i);
    }
    EXPECT_EQ(idx.keyroots(), expected);
    EXPECT_EQ(static_cast<int>(idx.keyroots().size()), idx.leaf_count());
    EXPECT_LE(idx.max_degree(), 4);
  }
}

TEST(TreeText, RoundTripAndErrors) {
  const std::string text = "root:0(stack:3(run:3),run:2)";
  EXPECT_EQ(ToText(ParseTreeText(text)), text);
  EXPECT_EQ(ToText(ParseTreeText("E:0(I:4[helix:2](H:3[helix:2]))")),
            "E:0(I:4[helix:2](H:3[helix:2]))");
  EXPECT_THROW(ParseTreeText("a:1(b:1"), ParseError);
  EXPECT_THROW(ParseTreeText("a:x"), ParseError);
}

TEST(Isomorphic, ComparesLabelsAndOrder) {
  EXPECT_TRUE(Isomorphic(ParseTreeText("a:1(b:1,c:1)"), ParseTreeText("a:1(b:1,c:1)")));
  EXPECT_FALSE(Isomorphic(ParseTreeText("a:1(b:1,c:1)"), ParseTreeText("a:1(c:1,b:1)")));
  EXPECT_FALSE(Isomorphic(ParseTreeText("a:1(b:1)"), ParseTreeText("a:1(b:2)")));
}

TEST(Dot, ShapesFollowLoopKinds) {
  const std::string dot = ToDot(ParseTreeText("E:0(B:2[helix:1](H:3[helix:2]),I:4[helix:2])"));
  EXPECT_NE(dot.find("shape=triangle"), std::string::npos);
  EXPECT_NE(dot.find("shape=diamond"), std::string::npos);
  EXPECT_NE(dot.find("shape=square"), std::string::npos);
  EXPECT_NE(dot.find("label=\"helix:2\""), std::string::npos);
}

TEST(RepresentationNames, ParseAndReject) {
  EXPECT_EQ(ParseRepresentation("D"), Representation::kRepD);
  EXPECT_THROW(ParseRepresentation("x"), ConfigError);
}

}  // namespace
}  // namespace rnatreedit
