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


#include "rnatreedit/zhang_shasha.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace rnatreedit {
namespace {

constexpr double kTieTolerance = 1e-9;

struct Costs {
  std::vector<double> del;
  std::vector<double> ins;
  MatchFn match;
};

Costs Prepare(const IndexedTree& s, const IndexedTree& t, const CostModel& model,
              const MatchFn& match) {
  Costs c;
  c.del.assign(s.size() + 1, 0);
  c.ins.assign(t.size() + 1, 0);
  for (int i = 1; i <= s.size(); ++i) c.del[i] = model.Delete(s.label(i));
  for (int j = 1; j <= t.size(); ++j) c.ins[j] = model.Insert(t.label(j));
  if (match) {
    c.match = match;
  } else {
    c.match = [&s, &t, &model](int i, int j) {
      return model.Match(s.label(i), t.label(j));
    };
  }
  return c;
}

// Forest table for the subtree pair (i, j); fd(p, q) covers
// [l(i)..p] x [l(j)..q], with offsets so that row 0 is the empty forest.
class Forest {
 public:
  Forest(const IndexedTree& s, const IndexedTree& t, int i, int j)
      : li_(s.l(i)), lj_(t.l(j)), w_(j - t.l(j) + 2),
        fd_((i - li_ + 2) * w_, 0.0) {}

  double& at(int p, int q) { return fd_[(p - li_ + 1) * w_ + (q - lj_ + 1)]; }
  int li() const { return li_; }
  int lj() const { return lj_; }

 private:
  int li_, lj_, w_;
  std::vector<double> fd_;
};

// Fills the forest table; with `tables` non-null also stores tree cells.
void FillForest(const IndexedTree& s, const IndexedTree& t, const Costs& c,
                int i, int j, Forest& f, DPTables* tables,
                const DPTables& known) {
  const int li = s.l(i), lj = t.l(j);
  f.at(li - 1, lj - 1) = 0;
  for (int p = li; p <= i; ++p) f.at(p, lj - 1) = f.at(p - 1, lj - 1) + c.del[p];
  for (int q = lj; q <= j; ++q) f.at(li - 1, q) = f.at(li - 1, q - 1) + c.ins[q];
  for (int p = li; p <= i; ++p) {
    for (int q = lj; q <= j; ++q) {
      const double del = f.at(p - 1, q) + c.del[p];
      const double ins = f.at(p, q - 1) + c.ins[q];
      if (s.l(p) == li && t.l(q) == lj) {
        const double rel = f.at(p - 1, q - 1) + c.match(p, q);
        const double best = std::min({del, ins, rel});
        f.at(p, q) = best;
        if (tables) tables->at(p, q) = best;
      } else {
        const double sub = f.at(s.l(p) - 1, t.l(q) - 1) + known.at(p, q);
        f.at(p, q) = std::min({del, ins, sub});
      }
    }
  }
}

}  // namespace

ZsResult ZsDistance(const IndexedTree& source, const IndexedTree& target,
                    const CostModel& model, const MatchFn& match) {
  ZsResult result;
  DPTables& tables = result.tables;
  tables.source = &source;
  tables.target = &target;
  tables.rows = source.size();
  tables.cols = target.size();
  tables.td.assign((tables.rows + 1) * (tables.cols + 1), 0.0);
  const Costs c = Prepare(source, target, model, match);
  if (source.size() == 0 || target.size() == 0) {
    double total = 0;
    for (double d : c.del) total += d;
    for (double d : c.ins) total += d;
    result.distance = total;
    return result;
  }
  for (int i : source.keyroots()) {
    for (int j : target.keyroots()) {
      Forest f(source, target, i, j);
      FillForest(source, target, c, i, j, f, &tables, tables);
    }
  }
  result.distance = tables.at(source.size(), target.size());
  return result;
}

ExtractedScript ExtractScript(const ZsResult& result, const CostModel& model,
                              const MatchFn& match) {
  const IndexedTree& s = *result.tables.source;
  const IndexedTree& t = *result.tables.target;
  const Costs c = Prepare(s, t, model, match);
  ExtractedScript out;
  std::vector<std::pair<int, int>> matched;
  if (s.size() > 0 && t.size() > 0) {
    std::vector<std::pair<int, int>> pending{{s.size(), t.size()}};
    while (!pending.empty()) {
      const auto [i, j] = pending.back();
      pending.pop_back();
      Forest f(s, t, i, j);
      FillForest(s, t, c, i, j, f, nullptr, result.tables);
      int p = i, q = j;
      const int li = s.l(i), lj = t.l(j);
      while (p >= li && q >= lj) {
        const double here = f.at(p, q);
        const bool tree_cell = s.l(p) == li && t.l(q) == lj;
        if (tree_cell) {
          if (std::abs(f.at(p - 1, q - 1) + c.match(p, q) - here) <= kTieTolerance) {
            matched.emplace_back(p, q);
            --p;
            --q;
            continue;
          }
        } else if (std::abs(f.at(s.l(p) - 1, t.l(q) - 1) +
                            result.tables.at(p, q) - here) <= kTieTolerance) {
          pending.emplace_back(p, q);
          const int np = s.l(p) - 1, nq = t.l(q) - 1;
          p = np;
          q = nq;
          continue;
        }
        if (std::abs(f.at(p - 1, q) + c.del[p] - here) <= kTieTolerance) {
          --p;
        } else {
          --q;
        }
      }
    }
  }
  std::sort(matched.begin(), matched.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [i, j] : matched) out.groups.push_back({i, {}, j, {}});
  out.script = BuildScript(s, t, model, out.groups);
  if (match) {
    // Relabel prices follow the override.
    for (auto& op : out.script.ops) {
      if (op.kind == OpKind::kRelabel) op.cost = c.match(op.source, op.target);
    }
  }
  out.mapping = MappingOf(s, t, model, out.groups);
  return out;
}

}  // namespace rnatreedit
