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


#include "rnatreedit/generate.hpp"

#include <algorithm>
#include <functional>

namespace rnatreedit {
namespace {

// Shape as preorder child counts.
using Shape = std::vector<int>;

std::vector<std::vector<Shape>> ForestShapes(int max_nodes) {
  // forests[k]: every ordered forest with k nodes, each tree encoded as its
  // preorder degree sequence, trees concatenated.
  std::vector<std::vector<Shape>> forests(max_nodes + 1);
  std::vector<std::vector<Shape>> trees(max_nodes + 1);
  forests[0] = {Shape{}};
  for (int k = 1; k <= max_nodes; ++k) {
    for (const Shape& f : forests[k - 1]) {
      int roots = 0, need = 1;
      for (int d : f) {
        need += d - 1;
        if (need == 0) ++roots, need = 1;
      }
      Shape t{roots};
      t.insert(t.end(), f.begin(), f.end());
      trees[k].push_back(std::move(t));
    }
    for (int first = 1; first <= k; ++first) {
      for (const Shape& a : trees[first]) {
        for (const Shape& rest : forests[k - first]) {
          Shape s = a;
          s.insert(s.end(), rest.begin(), rest.end());
          forests[k].push_back(std::move(s));
        }
      }
    }
  }
  std::vector<std::vector<Shape>> out(max_nodes + 1);
  for (int k = 1; k <= max_nodes; ++k) out[k] = trees[k];
  return out;
}

}  // namespace

ObjectLabel GenericLabel(const std::string& kind, bool root) {
  ObjectLabel l;
  l.node = {kind, 1};
  if (!root) l.edge = {"e", 1};
  return l;
}

std::vector<LabeledTree> AllTrees(int max_nodes,
                                  const std::vector<std::string>& alphabet) {
  std::vector<LabeledTree> out;
  const auto shapes = ForestShapes(max_nodes);
  const int k = static_cast<int>(alphabet.size());
  for (int n = 1; n <= max_nodes; ++n) {
    for (const Shape& shape : shapes[n]) {
      long combos = 1;
      for (int i = 0; i < n; ++i) combos *= k;
      for (long code = 0; code < combos; ++code) {
        std::vector<int> letters(n);
        long c = code;
        for (int i = n - 1; i >= 0; --i) {
          letters[i] = static_cast<int>(c % k);
          c /= k;
        }
        LabeledTree t;
        int pos = 0;
        std::function<void(int)> build = [&](int parent) {
          const int me = pos++;
          const ObjectLabel label = GenericLabel(alphabet[letters[me]], parent < 0);
          const int id = parent < 0 ? t.AddRoot(label) : t.AddChild(parent, label);
          for (int d = 0; d < shape[me]; ++d) build(id);
        };
        build(-1);
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

LabeledTree RandomTree(Rng& rng, int nodes, int max_degree,
                       const std::vector<std::string>& alphabet) {
  std::uniform_int_distribution<size_t> letter(0, alphabet.size() - 1);
  LabeledTree t;
  if (nodes <= 0) return t;
  t.AddRoot(GenericLabel(alphabet[letter(rng)], true));
  std::vector<int> open{0};
  while (t.size() < nodes) {
    std::uniform_int_distribution<size_t> pick(0, open.size() - 1);
    const size_t slot = pick(rng);
    const int parent = open[slot];
    const int id = t.AddChild(parent, GenericLabel(alphabet[letter(rng)], false));
    auto& kids = t.nodes[parent].children;
    std::uniform_int_distribution<size_t> where(0, kids.size() - 1);
    const size_t at = where(rng);
    kids.pop_back();
    kids.insert(kids.begin() + static_cast<long>(at), id);
    if (static_cast<int>(kids.size()) >= max_degree) {
      open.erase(open.begin() + static_cast<long>(slot));
    }
    open.push_back(id);
  }
  return t;
}

SecondaryStructure RandomStructure(Rng& rng, int length, const std::string& id) {
  std::vector<BasePair> pairs;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  // Fill [lo, hi] with helices separated by unpaired stretches.
  std::function<void(int, int, int)> fill = [&](int lo, int hi, int depth) {
    int i = lo;
    while (i <= hi) {
      const int room = hi - i + 1;
      if (room >= 7 && coin(rng) < 0.35 && depth < 6) {
        std::uniform_int_distribution<int> span_dist(7, std::min(room, 40));
        const int span = span_dist(rng);
        const int max_stack = std::min(6, (span - 3) / 2);
        std::uniform_int_distribution<int> stack_dist(1, max_stack);
        const int stack = stack_dist(rng);
        for (int s = 0; s < stack; ++s) pairs.push_back({i + s, i + span - 1 - s});
        fill(i + stack, i + span - 1 - stack, depth + 1);
        i += span;
      } else {
        ++i;
      }
    }
  };
  // The interior of the innermost pair is kept at least 3 long by the span
  // bound; recursion on [i + stack, j - stack] may add more pairs inside.
  fill(0, length - 1, 0);
  std::vector<int> partner(length, -1);
  for (const auto& p : pairs) {
    partner[p.first] = p.second;
    partner[p.second] = p.first;
  }
  static constexpr const char* kPairs[] = {"GC", "CG", "AU", "UA", "GU", "UG"};
  static constexpr char kBases[] = {'A', 'C', 'G', 'U'};
  std::string seq(length, 'A');
  std::uniform_int_distribution<int> pair_pick(0, 5), base_pick(0, 3);
  for (int k = 0; k < length; ++k) {
    if (partner[k] > k) {
      const char* p = kPairs[pair_pick(rng)];
      seq[k] = p[0];
      seq[partner[k]] = p[1];
    } else if (partner[k] < 0) {
      seq[k] = kBases[base_pick(rng)];
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return MakeStructure(id, seq, pairs);
}

}  // namespace rnatreedit
