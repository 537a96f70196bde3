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


#ifndef RNATREEDIT_FUSION_HPP_
#define RNATREEDIT_FUSION_HPP_

#include <cstdint>
#include <vector>

#include "rnatreedit/cost_model.hpp"
#include "rnatreedit/edit_script.hpp"
#include "rnatreedit/tree.hpp"
#include "rnatreedit/zhang_shasha.hpp"

namespace rnatreedit {

inline constexpr int kMaxEll = 3;

struct FusionParams {
  // Maximum number of consecutive fusions per node.
  int ell = 1;
  // Skip an edge fusion directly after a node fusion on the same root.
  bool prune = true;
};

// Throws ConfigError unless 0 <= ell <= kMaxEll.
void ValidateFusionParams(const FusionParams& params);

// A root after absorbing part of its subtree.
struct MergedNodeState {
  FusionPath path;
  ObjectLabel label;
  // Summed fusion (or split) costs, displaced subtrees included.
  double cost = 0;
  // Children forest of the merged root: node indices in postorder and, for
  // each entry, the list position of its leftmost leaf.
  std::vector<int> forest;
  std::vector<int> leftpos;
};

// Every path of length <= params.ell available at `root`, the empty path
// first. The global root gets the empty path only.
std::vector<MergedNodeState> EnumeratePaths(const IndexedTree& t, int root,
                                            const CostModel& model,
                                            const FusionParams& params,
                                            bool insert_side);

struct FusionDPState {
  const IndexedTree* source = nullptr;
  const IndexedTree* target = nullptr;
  FusionParams params;
  // Tree distances with fusions for every pair of nodes.
  DPTables tables;
  std::vector<std::vector<MergedNodeState>> source_paths;
  std::vector<std::vector<MergedNodeState>> target_paths;
  // Largest number of distinct paths of each exact length seen at a node.
  std::vector<int> max_paths_by_length;
  std::int64_t path_pairs_evaluated = 0;
};

struct FusionResult {
  double distance = 0;
  FusionDPState state;
};

// Edit distance with node/edge fusions and splits. With ell = 0 the result
// is bitwise equal to ZsDistance. Both trees must outlive the result.
FusionResult FusionDistance(const IndexedTree& source, const IndexedTree& target,
                            const CostModel& model, const FusionParams& params);

// Optimal script and mapping; fused groups map as one unit.
ExtractedScript ExtractFusionScript(const FusionResult& result,
                                    const CostModel& model);

// Number of possible path values at a node of degree at most d:
// 2^ell * prod_{k=1..ell} sum_{j=1..k} d^j.
std::uint64_t PathCountBound(int d, int ell);

}  // namespace rnatreedit

#endif  // RNATREEDIT_FUSION_HPP_
