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


#ifndef RNATREEDIT_MULTILEVEL_HPP_
#define RNATREEDIT_MULTILEVEL_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "rnatreedit/cost_model.hpp"
#include "rnatreedit/fusion.hpp"
#include "rnatreedit/structure.hpp"
#include "rnatreedit/tree.hpp"
#include "rnatreedit/zhang_shasha.hpp"

namespace rnatreedit {

inline constexpr int kUncolored = 0;

// Colors of the coarse tree nodes (by postorder index, slot 0 unused).
// Nodes mapped together share a color; deleted or inserted nodes keep
// kUncolored.
struct ColorAssignment {
  std::vector<int> source;
  std::vector<int> target;
  int count = 0;
  // Identifies the coarse pass that produced the colors.
  std::uint64_t token = 0;
};

struct CoarseResult {
  // Indexed coarse trees; the script and mapping refer to them.
  std::shared_ptr<const IndexedTree> source;
  std::shared_ptr<const IndexedTree> target;
  double distance = 0;
  ExtractedScript extracted;
  ColorAssignment colors;
};

// Compares the coarse encodings (Rep-C or Rep-D) with fusions and colors
// every element by the resulting mapping.
CoarseResult CoarsePass(const SecondaryStructure& a, const SecondaryStructure& b,
                        Representation rep, const CostModel& model,
                        const FusionParams& params);

// Rep-B tree whose nodes carry the color of the coarse element containing
// their bases; the root takes the color of the coarse root.
struct ColoredRepB {
  LabeledTree tree;
  std::vector<int> colors;  // by postorder index, slot 0 unused
  std::uint64_t token = 0;
};

ColoredRepB ColorRepB(const SecondaryStructure& s, const IndexedTree& coarse,
                      const std::vector<int>& coarse_colors, std::uint64_t token);

struct FineResult {
  std::shared_ptr<const IndexedTree> source;
  std::shared_ptr<const IndexedTree> target;
  double distance = 0;
  ExtractedScript extracted;
  // Price standing in for a forbidden match.
  double surrogate = 0;
};

// Classical distance where only same-colored nodes may match. Throws
// ColorSetMismatch when the colorings come from different coarse passes.
FineResult FinePass(const ColoredRepB& a, const ColoredRepB& b,
                    const CostModel& model);

struct MultilevelResult {
  CoarseResult coarse;
  ColoredRepB source_colored;
  ColoredRepB target_colored;
  FineResult fine;
};

MultilevelResult RunMultilevel(const SecondaryStructure& a,
                               const SecondaryStructure& b, Representation rep,
                               const CostModel& coarse_model,
                               const CostModel& fine_model,
                               const FusionParams& params);

}  // namespace rnatreedit

#endif  // RNATREEDIT_MULTILEVEL_HPP_
