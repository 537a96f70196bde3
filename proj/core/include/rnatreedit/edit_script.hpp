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


#ifndef RNATREEDIT_EDIT_SCRIPT_HPP_
#define RNATREEDIT_EDIT_SCRIPT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "rnatreedit/cost_model.hpp"
#include "rnatreedit/tree.hpp"

namespace rnatreedit {

enum class FusionKind { kNode, kEdge };

// One entry of a fusion path: the (postorder) node merged into the current
// root, either by node fusion or by edge fusion.
struct FusionStep {
  FusionKind kind = FusionKind::kNode;
  int node = 0;

  friend auto operator<=>(const FusionStep&, const FusionStep&) = default;
};

using FusionPath = std::vector<FusionStep>;

std::string ToString(const FusionPath& path);

enum class OpKind {
  kDelete,
  kInsert,
  kRelabel,
  kNodeFusion,
  kEdgeFusion,
  kNodeSplit,
  kEdgeSplit,
};

const char* ToString(OpKind kind);
OpKind ParseOpKind(std::string_view text);

// A single operation on the working tree. Working-tree ids: nodes of T keep
// their postorder index 1..|T|, inserted nodes of T' get |T| + j, and nodes
// created by splits take fresh ids above |T| + |T'|.
struct EditOp {
  OpKind kind = OpKind::kDelete;
  // Node acted on: deleted/relabelled node, fusion parent, split object.
  int node = 0;
  // Fusion child, inserted node, or node created by a split.
  int other = 0;
  // Postorder indices in T and T' for reporting (0 when not applicable).
  int source = 0;
  int target = 0;
  // Relabel/Insert: the new label. Splits: label kept by `node`.
  ObjectLabel label;
  // Splits: label of the created node.
  ObjectLabel other_label;
  // Insert, NodeSplit: child slot under the parent and number of adopted
  // consecutive children. For Insert `node` is the parent.
  int position = 0;
  int count = 0;
  // EdgeSplit: subtrees re-inserted left and right of `node`.
  std::vector<LabeledTree> before;
  std::vector<LabeledTree> after;
  // Fusions and splits: the group's path up to and including this step.
  FusionPath path;
  double cost = 0;
};

struct EditScript {
  std::vector<EditOp> ops;

  double total_cost() const;
  int Count(OpKind kind) const;
};

// A matched pair of objects. Without fusions both sides are single nodes;
// with fusions each side lists the group's root first, then every node
// merged into it.
struct MappedPair {
  std::vector<int> source;
  std::vector<int> target;

  friend bool operator==(const MappedPair&, const MappedPair&) = default;
};

struct Mapping {
  std::vector<MappedPair> pairs;

  friend bool operator==(const Mapping&, const Mapping&) = default;
};

// A root of T matched to a root of T' after each absorbed its fusion path.
struct MatchedGroup {
  int source = 0;
  FusionPath source_path;
  int target = 0;
  FusionPath target_path;
};

// State of a root after part of its fusion path has been applied.
struct PathTrace {
  struct Step {
    ObjectLabel before;  // merged label before the step
    ObjectLabel after;
    std::vector<int> roots_before;  // children of the merged root
    std::vector<int> roots_after;
    std::vector<int> displaced;     // edge fusion: removed sibling subtrees
    double cost = 0;                // fusion (or split) price
  };
  std::vector<Step> steps;
  ObjectLabel label;           // final merged label
  std::vector<int> roots;      // final children, in order
  std::vector<int> absorbed;   // nodes merged into the group (step order)
};

// Applies `path` to node `root` of `t`. `insert_side` prices the steps as
// splits with insertion costs. Throws MalformedIndex if a step does not name
// a child of the current merged root.
PathTrace TracePath(const IndexedTree& t, int root, const FusionPath& path,
                    const CostModel& model, bool insert_side);

// Sum of deletion (or insertion) costs over the subtree of `root`.
double SubtreeCost(const IndexedTree& t, int root, const CostModel& model,
                   bool insert_side);

// Turns a set of matched groups (ordered top-down, as produced by a DP
// traceback) into a concrete script: fusions on T, deletions, relabels,
// insertions, then splits undoing the fusions of T'.
EditScript BuildScript(const IndexedTree& source, const IndexedTree& target,
                       const CostModel& model,
                       const std::vector<MatchedGroup>& groups);

Mapping MappingOf(const IndexedTree& source, const IndexedTree& target,
                  const CostModel& model,
                  const std::vector<MatchedGroup>& groups);

struct ReplayResult {
  LabeledTree tree;
  double cost = 0;
};

// Executes `script` on `source`, pricing every step with `model`. Throws
// std::runtime_error when an operation does not apply.
ReplayResult Replay(const LabeledTree& source, const EditScript& script,
                    const CostModel& model);

// True when every pair is one-to-one and preserves ancestry and sibling
// order (group roots are compared).
bool IsValidMapping(const IndexedTree& source, const IndexedTree& target,
                    const Mapping& mapping);

}  // namespace rnatreedit

#endif  // RNATREEDIT_EDIT_SCRIPT_HPP_
