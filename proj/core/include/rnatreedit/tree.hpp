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


#ifndef RNATREEDIT_TREE_HPP_
#define RNATREEDIT_TREE_HPP_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "rnatreedit/structure.hpp"

namespace rnatreedit {

enum class Representation { kRepB, kRepC, kRepD, kRepE, kGeneric };

const char* ToString(Representation rep);
// Accepts "b", "c", "d", "e", "generic" (case-insensitive). Throws ConfigError.
Representation ParseRepresentation(std::string_view text);

// A kind token plus a non-negative numeric payload. The empty label (no kind,
// size 0) marks an absent edge, i.e. the edge above a root.
struct Label {
  std::string kind;
  int size = 0;

  bool empty() const { return kind.empty() && size == 0; }
  friend auto operator<=>(const Label&, const Label&) = default;
};

// A node together with the edge leading to it, compared as one object.
struct ObjectLabel {
  Label node;
  Label edge;

  int total_size() const { return node.size + edge.size; }
  friend auto operator<=>(const ObjectLabel&, const ObjectLabel&) = default;
};

std::string ToString(const ObjectLabel& label);

struct TreeNode {
  ObjectLabel label;
  std::vector<int> children;
  // Bases of the source structure covered by this object (may be empty).
  std::vector<int> bases;
};

// Ordered rooted tree; nodes[0] is the root and children are kept in
// 5'->3' order.
struct LabeledTree {
  Representation rep = Representation::kGeneric;
  std::vector<TreeNode> nodes;

  int size() const { return static_cast<int>(nodes.size()); }
  bool empty() const { return nodes.empty(); }
  int AddRoot(ObjectLabel label, std::vector<int> bases = {});
  int AddChild(int parent, ObjectLabel label, std::vector<int> bases = {});
};

// Label-for-label equality of the ordered trees (ids and bases ignored).
bool Isomorphic(const LabeledTree& a, const LabeledTree& b);

// Label kinds used by the RNA encodings.
namespace kinds {
inline constexpr std::string_view kRoot = "root";
inline constexpr std::string_view kExterior = "E";
inline constexpr std::string_view kHairpin = "H";
inline constexpr std::string_view kInternal = "I";
inline constexpr std::string_view kBulge = "B";
inline constexpr std::string_view kMultiloop = "M";
inline constexpr std::string_view kHelix = "helix";
inline constexpr std::string_view kStack = "stack";
inline constexpr std::string_view kRun = "run";
}  // namespace kinds

// One leaf per unpaired base, one internal node per pair, synthetic root.
LabeledTree BuildRepB(const SecondaryStructure& s);
// One node per maximal unpaired run or helix stack, labelled by its length.
LabeledTree BuildRepC(const ElementGraph& g);
// Loops as nodes, helices as edges; the exterior region is the root.
LabeledTree BuildRepD(const ElementGraph& g);
// Rep-D with internal loops and bulges contracted into their helices.
LabeledTree BuildRepE(const ElementGraph& g);
LabeledTree BuildRepresentation(const SecondaryStructure& s,
                                Representation rep);

// Postorder view of a tree. All indices are 1-based: node i is t_i, the i-th
// node in left-to-right postorder, and the root is size().
class IndexedTree {
 public:
  IndexedTree() = default;
  explicit IndexedTree(LabeledTree tree);

  int size() const { return static_cast<int>(ids_.size()) - 1; }
  const LabeledTree& tree() const { return tree_; }
  const ObjectLabel& label(int i) const { return tree_.nodes[ids_[i]].label; }
  // Leftmost leaf of the subtree rooted at i.
  int l(int i) const { return leftmost_[i]; }
  int parent(int i) const { return parent_[i]; }
  const std::vector<int>& children(int i) const { return children_[i]; }
  // LR(T) in increasing order.
  const std::vector<int>& keyroots() const { return keyroots_; }
  // Id in tree().nodes of postorder index i, and the inverse.
  int node_id(int i) const { return ids_[i]; }
  int index_of(int node_id) const { return index_of_[node_id]; }

  int leaf_count() const { return leaves_; }
  // Nodes on the longest root-to-leaf path (a single node has height 1).
  int height() const { return height_; }
  int max_degree() const { return max_degree_; }

 private:
  LabeledTree tree_;
  std::vector<int> ids_{0};
  std::vector<int> index_of_;
  std::vector<int> leftmost_{0};
  std::vector<int> parent_{0};
  std::vector<std::vector<int>> children_{{}};
  std::vector<int> keyroots_;
  int leaves_ = 0;
  int height_ = 0;
  int max_degree_ = 0;
};

inline IndexedTree Index(LabeledTree t) { return IndexedTree(std::move(t)); }

// Parenthesized form: kind:size[edgekind:edgesize](child,child,...).
std::string ToText(const LabeledTree& t);
// Throws ParseError on malformed text.
LabeledTree ParseTreeText(std::string_view text);

struct DotOptions {
  std::string graph_name = "tree";
  std::string id_prefix = "n";
  // Optional fill color index per node id (0 = none).
  std::vector<int> colors;
  bool as_subgraph = false;
};

// Graphviz rendering; loop kinds get the usual shapes (bulge triangle,
// internal loop diamond, hairpin square, multiloop circle).
std::string ToDot(const LabeledTree& t, const DotOptions& options = {});
std::string ColorName(int color);

}  // namespace rnatreedit

#endif  // RNATREEDIT_TREE_HPP_
