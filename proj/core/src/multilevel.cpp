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


#include "rnatreedit/multilevel.hpp"

#include <atomic>

#include "rnatreedit/error.hpp"

namespace rnatreedit {
namespace {

std::uint64_t NextToken() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

}  // namespace

CoarseResult CoarsePass(const SecondaryStructure& a, const SecondaryStructure& b,
                        Representation rep, const CostModel& model,
                        const FusionParams& params) {
  if (rep != Representation::kRepC && rep != Representation::kRepD) {
    throw ConfigError("the coarse pass uses representation c or d");
  }
  CoarseResult r;
  r.source = std::make_shared<const IndexedTree>(BuildRepresentation(a, rep));
  r.target = std::make_shared<const IndexedTree>(BuildRepresentation(b, rep));
  const FusionResult fused = FusionDistance(*r.source, *r.target, model, params);
  r.distance = fused.distance;
  r.extracted = ExtractFusionScript(fused, model);
  ColorAssignment& c = r.colors;
  c.source.assign(r.source->size() + 1, kUncolored);
  c.target.assign(r.target->size() + 1, kUncolored);
  c.token = NextToken();
  // Top-down group order gives colors in preorder of the source tree.
  for (const MappedPair& pair : r.extracted.mapping.pairs) {
    const int color = ++c.count;
    for (int i : pair.source) c.source[i] = color;
    for (int j : pair.target) c.target[j] = color;
  }
  return r;
}

ColoredRepB ColorRepB(const SecondaryStructure& s, const IndexedTree& coarse,
                      const std::vector<int>& coarse_colors, std::uint64_t token) {
  std::vector<int> base_color(s.length(), kUncolored);
  for (int i = 1; i <= coarse.size(); ++i) {
    for (int base : coarse.tree().nodes[coarse.node_id(i)].bases) {
      base_color[base] = coarse_colors[i];
    }
  }
  ColoredRepB out;
  out.tree = BuildRepB(s);
  out.token = token;
  const IndexedTree indexed(out.tree);
  out.colors.assign(indexed.size() + 1, kUncolored);
  for (int i = 1; i <= indexed.size(); ++i) {
    const auto& bases = out.tree.nodes[indexed.node_id(i)].bases;
    out.colors[i] = bases.empty() ? coarse_colors[coarse.size()]
                                  : base_color[bases.front()];
  }
  return out;
}

FineResult FinePass(const ColoredRepB& a, const ColoredRepB& b,
                    const CostModel& model) {
  if (a.token != b.token) {
    throw ColorSetMismatch("colored trees come from different coarse passes");
  }
  FineResult r;
  r.source = std::make_shared<const IndexedTree>(a.tree);
  r.target = std::make_shared<const IndexedTree>(b.tree);
  const IndexedTree& s = *r.source;
  const IndexedTree& t = *r.target;
  double surrogate = 1;
  for (int i = 1; i <= s.size(); ++i) surrogate += model.Delete(s.label(i));
  for (int j = 1; j <= t.size(); ++j) surrogate += model.Insert(t.label(j));
  r.surrogate = surrogate;
  const MatchFn match = [&](int i, int j) {
    const int ci = a.colors[i], cj = b.colors[j];
    if (ci == kUncolored || cj == kUncolored || ci != cj) return surrogate;
    return model.Match(s.label(i), t.label(j));
  };
  const ZsResult zs = ZsDistance(s, t, model, match);
  r.distance = zs.distance;
  r.extracted = ExtractScript(zs, model, match);
  return r;
}

MultilevelResult RunMultilevel(const SecondaryStructure& a,
                               const SecondaryStructure& b, Representation rep,
                               const CostModel& coarse_model,
                               const CostModel& fine_model,
                               const FusionParams& params) {
  MultilevelResult r;
  r.coarse = CoarsePass(a, b, rep, coarse_model, params);
  r.source_colored = ColorRepB(a, *r.coarse.source, r.coarse.colors.source,
                               r.coarse.colors.token);
  r.target_colored = ColorRepB(b, *r.coarse.target, r.coarse.colors.target,
                               r.coarse.colors.token);
  r.fine = FinePass(r.source_colored, r.target_colored, fine_model);
  return r;
}

}  // namespace rnatreedit
