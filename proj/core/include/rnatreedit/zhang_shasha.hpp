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


#ifndef RNATREEDIT_ZHANG_SHASHA_HPP_
#define RNATREEDIT_ZHANG_SHASHA_HPP_

#include <functional>
#include <vector>

#include "rnatreedit/cost_model.hpp"
#include "rnatreedit/edit_script.hpp"
#include "rnatreedit/tree.hpp"

namespace rnatreedit {

// Relabel price for postorder indices (i in T, j in T'). Used to restrict
// or reweight matches without touching the model.
using MatchFn = std::function<double(int i, int j)>;

// Subtree distances td(i, j) for every pair of nodes; forest tables are
// rebuilt on demand during traceback.
struct DPTables {
  const IndexedTree* source = nullptr;
  const IndexedTree* target = nullptr;
  int rows = 0;
  int cols = 0;
  std::vector<double> td;

  double at(int i, int j) const { return td[i * (cols + 1) + j]; }
  double& at(int i, int j) { return td[i * (cols + 1) + j]; }
};

struct ZsResult {
  double distance = 0;
  DPTables tables;
};

// Classical tree edit distance. Both trees must outlive the result.
ZsResult ZsDistance(const IndexedTree& source, const IndexedTree& target,
                    const CostModel& model, const MatchFn& match = {});

struct ExtractedScript {
  EditScript script;
  Mapping mapping;
  std::vector<MatchedGroup> groups;
};

// Optimal script from completed tables. Ties prefer match, then delete, then
// insert.
ExtractedScript ExtractScript(const ZsResult& result, const CostModel& model,
                              const MatchFn& match = {});

}  // namespace rnatreedit

#endif  // RNATREEDIT_ZHANG_SHASHA_HPP_
