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


#ifndef RNATREEDIT_GENERATE_HPP_
#define RNATREEDIT_GENERATE_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rnatreedit/structure.hpp"
#include "rnatreedit/tree.hpp"

namespace rnatreedit {

using Rng = std::mt19937_64;

// Label of a generic test node: kind with size 1 under an "e":1 edge, or no
// edge at the root.
ObjectLabel GenericLabel(const std::string& kind, bool root);

// Every ordered tree with 1..max_nodes nodes, each node labelled from
// `alphabet`, in a fixed order.
std::vector<LabeledTree> AllTrees(int max_nodes,
                                  const std::vector<std::string>& alphabet);

// Uniformly grown random tree with exactly `nodes` nodes and no node of
// more than `max_degree` children.
LabeledTree RandomTree(Rng& rng, int nodes, int max_degree,
                       const std::vector<std::string>& alphabet);

// Random pseudoknot-free structure over canonical and wobble pairs.
SecondaryStructure RandomStructure(Rng& rng, int length,
                                   const std::string& id = "random");

}  // namespace rnatreedit

#endif  // RNATREEDIT_GENERATE_HPP_
