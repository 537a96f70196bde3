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


#ifndef RNATREEDIT_ORACLE_HPP_
#define RNATREEDIT_ORACLE_HPP_

#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rnatreedit/cost_model.hpp"
#include "rnatreedit/tree.hpp"

namespace rnatreedit {

inline constexpr int kOracleMaxNodes = 8;

struct SearchBudget {
  int max_nodes = kOracleMaxNodes;
  // Results above this bound raise BudgetExceeded.
  double cost_bound = std::numeric_limits<double>::infinity();
  int ell = 1;
  bool prune = false;
};

// Minimum cost over all one-to-one mappings that preserve ancestry and
// sibling order. Throws BudgetExceeded beyond the size budget.
double MappingOracle(const LabeledTree& source, const LabeledTree& target,
                     const CostModel& model, const SearchBudget& budget = {});

// As above, but nodes flagged in `must_source` / `must_target` (indexed by
// LabeledTree node id) may not be deleted or inserted.
double ConstrainedMappingOracle(const LabeledTree& source,
                                const std::vector<char>& must_source,
                                const LabeledTree& target,
                                const std::vector<char>& must_target,
                                const CostModel& model,
                                const SearchBudget& budget = {});

// One way of applying fusions (or splits) to a whole tree, top-down, with at
// most `ell` consecutive fusions per node.
struct FusionPlan {
  LabeledTree tree;
  std::vector<char> must_map;  // merged roots, by node id of `tree`
  double cost = 0;
  int fusions = 0;
  int longest = 0;
};

std::vector<FusionPlan> EnumerateFusionPlans(const LabeledTree& t,
                                             const CostModel& model, int ell,
                                             bool prune, bool insert_side);

// Exhaustive search over fusion plans on both sides followed by a
// constrained mapping search on the fused trees.
double ScriptSearchOracle(const LabeledTree& source, const LabeledTree& target,
                          const CostModel& model, const SearchBudget& budget = {});

// Batch form of ScriptSearchOracle for models that differ only in t.
// Plans and fused-tree distances are cached across calls.
class FusionOracle {
 public:
  FusionOracle(std::vector<CostModel> models, int max_ell, bool prune);
  ~FusionOracle();
  FusionOracle(const FusionOracle&) = delete;
  FusionOracle& operator=(const FusionOracle&) = delete;

  // result[k][ell] for models[k] and ell = 0..max_ell.
  std::vector<std::vector<double>> Distances(const LabeledTree& source,
                                             const LabeledTree& target);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rnatreedit

#endif  // RNATREEDIT_ORACLE_HPP_
