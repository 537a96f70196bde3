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


#include "rnatreedit/fusion.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <string>

#include "rnatreedit/error.hpp"

namespace rnatreedit {
namespace {

constexpr double kTieTolerance = 1e-9;

struct Partial {
  MergedNodeState state;
  std::vector<int> roots;
};

void FillForest(const IndexedTree& t, MergedNodeState& s,
                const std::vector<int>& roots) {
  s.forest.clear();
  s.leftpos.clear();
  for (int r : roots) {
    const int start = static_cast<int>(s.forest.size());
    for (int v = t.l(r); v <= r; ++v) {
      s.forest.push_back(v);
      s.leftpos.push_back(start + (t.l(v) - t.l(r)));
    }
  }
}

// Forest distance over node lists in postorder, using finished tree
// distances for every pair of entries.
class ListDp {
 public:
  ListDp(const DPTables& td, const std::vector<double>& del,
         const std::vector<double>& ins)
      : td_(td), del_(del), ins_(ins) {}

  double Run(const std::vector<int>& a, const std::vector<int>& la,
             const std::vector<int>& b, const std::vector<int>& lb) {
    const int na = static_cast<int>(a.size());
    const int nb = static_cast<int>(b.size());
    w_ = nb + 1;
    fd_.assign(static_cast<size_t>(na + 1) * w_, 0.0);
    for (int p = 1; p <= na; ++p) at(p, 0) = at(p - 1, 0) + del_[a[p - 1]];
    for (int q = 1; q <= nb; ++q) at(0, q) = at(0, q - 1) + ins_[b[q - 1]];
    for (int p = 1; p <= na; ++p) {
      const int x = a[p - 1];
      const int lp = la[p - 1];
      for (int q = 1; q <= nb; ++q) {
        const int y = b[q - 1];
        const double del = at(p - 1, q) + del_[x];
        const double ins = at(p, q - 1) + ins_[y];
        const double sub = at(lp, lb[q - 1]) + td_.at(x, y);
        at(p, q) = std::min({del, ins, sub});
      }
    }
    return at(na, nb);
  }

  double& at(int p, int q) { return fd_[static_cast<size_t>(p) * w_ + q]; }

 private:
  const DPTables& td_;
  const std::vector<double>& del_;
  const std::vector<double>& ins_;
  int w_ = 1;
  std::vector<double> fd_;
};

MergedNodeState Range(const IndexedTree& t, int first, int last) {
  MergedNodeState s;
  for (int v = first; v <= last; ++v) {
    s.forest.push_back(v);
    s.leftpos.push_back(t.l(v) - first);
  }
  return s;
}

}  // namespace

void ValidateFusionParams(const FusionParams& params) {
  if (params.ell < 0 || params.ell > kMaxEll) {
    throw ConfigError("l must be in [0, " + std::to_string(kMaxEll) + "], got " +
                      std::to_string(params.ell));
  }
}

std::vector<MergedNodeState> EnumeratePaths(const IndexedTree& t, int root,
                                            const CostModel& model,
                                            const FusionParams& params,
                                            bool insert_side) {
  std::vector<MergedNodeState> out;
  Partial start;
  start.state.label = t.label(root);
  start.roots = t.children(root);
  std::vector<Partial> level{start};
  const int depth = root == t.size() ? 0 : params.ell;
  auto emit = [&](const Partial& p) {
    MergedNodeState s = p.state;
    FillForest(t, s, p.roots);
    out.push_back(std::move(s));
  };
  emit(start);
  for (int k = 0; k < depth && !level.empty(); ++k) {
    std::vector<Partial> next;
    for (const Partial& cur : level) {
      const bool after_node = !cur.state.path.empty() &&
                              cur.state.path.back().kind == FusionKind::kNode;
      for (size_t ci = 0; ci < cur.roots.size(); ++ci) {
        const int c = cur.roots[ci];
        const ObjectLabel& child = t.label(c);
        {
          Partial n = cur;
          n.state.path.push_back({FusionKind::kNode, c});
          n.state.cost += insert_side ? model.NodeSplit(cur.state.label, child)
                                      : model.NodeFusion(cur.state.label, child);
          n.state.label = model.MergeNode(cur.state.label, child);
          const auto& kids = t.children(c);
          n.roots.erase(n.roots.begin() + static_cast<long>(ci));
          n.roots.insert(n.roots.begin() + static_cast<long>(ci), kids.begin(),
                         kids.end());
          next.push_back(std::move(n));
        }
        if (params.prune && after_node) continue;
        {
          Partial e = cur;
          double displaced = 0;
          for (int r : cur.roots) {
            if (r != c) displaced += SubtreeCost(t, r, model, insert_side);
          }
          e.state.path.push_back({FusionKind::kEdge, c});
          e.state.cost += insert_side
                              ? model.EdgeSplit(cur.state.label, child, displaced)
                              : model.EdgeFusion(cur.state.label, child, displaced);
          e.state.label = model.MergeEdge(cur.state.label, child);
          e.roots = t.children(c);
          next.push_back(std::move(e));
        }
      }
    }
    for (const Partial& p : next) emit(p);
    level = std::move(next);
  }
  return out;
}

FusionResult FusionDistance(const IndexedTree& source, const IndexedTree& target,
                            const CostModel& model, const FusionParams& params) {
  ValidateFusionParams(params);
  FusionResult result;
  FusionDPState& st = result.state;
  st.source = &source;
  st.target = &target;
  st.params = params;
  st.max_paths_by_length.assign(params.ell + 1, 0);
  const int n = source.size(), m = target.size();
  DPTables& tables = st.tables;
  tables.source = &source;
  tables.target = &target;
  tables.rows = n;
  tables.cols = m;
  tables.td.assign(static_cast<size_t>(n + 1) * (m + 1), 0.0);

  std::vector<double> del(n + 1, 0), ins(m + 1, 0);
  for (int i = 1; i <= n; ++i) del[i] = model.Delete(source.label(i));
  for (int j = 1; j <= m; ++j) ins[j] = model.Insert(target.label(j));
  if (n == 0 || m == 0) {
    double total = 0;
    for (double d : del) total += d;
    for (double d : ins) total += d;
    result.distance = total;
    return result;
  }

  st.source_paths.resize(n + 1);
  st.target_paths.resize(m + 1);
  [[maybe_unused]] const int degree = std::max(source.max_degree(), target.max_degree());
  auto count = [&](const std::vector<MergedNodeState>& paths) {
    std::vector<int> by_length(params.ell + 1, 0);
    for (const auto& p : paths) ++by_length[p.path.size()];
    for (int k = 0; k <= params.ell; ++k) {
      assert(static_cast<std::uint64_t>(by_length[k]) <= PathCountBound(degree, k));
      st.max_paths_by_length[k] = std::max(st.max_paths_by_length[k], by_length[k]);
    }
  };
  for (int i = 1; i <= n; ++i) {
    st.source_paths[i] = EnumeratePaths(source, i, model, params, false);
    count(st.source_paths[i]);
  }
  for (int j = 1; j <= m; ++j) {
    st.target_paths[j] = EnumeratePaths(target, j, model, params, true);
    count(st.target_paths[j]);
  }

  ListDp list_dp(tables, del, ins);
  std::vector<double> f;
  for (int i : source.keyroots()) {
    for (int j : target.keyroots()) {
      const int li = source.l(i), lj = target.l(j);
      const int w = j - lj + 2;
      f.assign(static_cast<size_t>(i - li + 2) * w, 0.0);
      auto at = [&](int p, int q) -> double& {
        return f[static_cast<size_t>(p - li + 1) * w + (q - lj + 1)];
      };
      for (int p = li; p <= i; ++p) at(p, lj - 1) = at(p - 1, lj - 1) + del[p];
      for (int q = lj; q <= j; ++q) at(li - 1, q) = at(li - 1, q - 1) + ins[q];
      for (int p = li; p <= i; ++p) {
        for (int q = lj; q <= j; ++q) {
          const double d = at(p - 1, q) + del[p];
          const double s = at(p, q - 1) + ins[q];
          if (source.l(p) == li && target.l(q) == lj) {
            const double r =
                at(p - 1, q - 1) + model.Match(source.label(p), target.label(q));
            double best = std::min({d, s, r});
            const auto& ap = st.source_paths[p];
            const auto& bp = st.target_paths[q];
            for (size_t a = 0; a < ap.size(); ++a) {
              for (size_t b = 0; b < bp.size(); ++b) {
                if (a == 0 && b == 0) continue;
                const double head = ap[a].cost + bp[b].cost +
                                    model.Match(ap[a].label, bp[b].label);
                if (head >= best) continue;
                ++st.path_pairs_evaluated;
                const double cand =
                    head + list_dp.Run(ap[a].forest, ap[a].leftpos,
                                       bp[b].forest, bp[b].leftpos);
                best = std::min(best, cand);
              }
            }
            at(p, q) = best;
            tables.at(p, q) = best;
          } else {
            const double sub =
                at(source.l(p) - 1, target.l(q) - 1) + tables.at(p, q);
            at(p, q) = std::min({d, s, sub});
          }
        }
      }
    }
  }
  result.distance = tables.at(n, m);
  return result;
}

ExtractedScript ExtractFusionScript(const FusionResult& result,
                                    const CostModel& model) {
  const FusionDPState& st = result.state;
  const IndexedTree& s = *st.source;
  const IndexedTree& t = *st.target;
  const int n = s.size(), m = t.size();
  std::vector<double> del(n + 1, 0), ins(m + 1, 0);
  for (int i = 1; i <= n; ++i) del[i] = model.Delete(s.label(i));
  for (int j = 1; j <= m; ++j) ins[j] = model.Insert(t.label(j));

  std::vector<MatchedGroup> groups;
  struct Problem {
    MergedNodeState a, b;
  };
  std::vector<std::pair<int, int>> trees;
  std::vector<Problem> forests;
  if (n > 0 && m > 0) trees.emplace_back(n, m);
  ListDp list_dp(st.tables, del, ins);
  auto close = [](double a, double b) { return std::abs(a - b) <= kTieTolerance; };

  while (!trees.empty() || !forests.empty()) {
    if (!trees.empty()) {
      const auto [x, y] = trees.back();
      trees.pop_back();
      const double target = st.tables.at(x, y);
      const auto& ap = st.source_paths[x];
      const auto& bp = st.target_paths[y];
      bool done = false;
      for (size_t a = 0; a < ap.size() && !done; ++a) {
        for (size_t b = 0; b < bp.size() && !done; ++b) {
          const double head =
              a == 0 && b == 0
                  ? 0.0
                  : ap[a].cost + bp[b].cost + model.Match(ap[a].label, bp[b].label);
          const double fd = list_dp.Run(ap[a].forest, ap[a].leftpos,
                                        bp[b].forest, bp[b].leftpos);
          const double cand =
              a == 0 && b == 0 ? fd + model.Match(s.label(x), t.label(y)) : head + fd;
          if (close(cand, target)) {
            groups.push_back({x, ap[a].path, y, bp[b].path});
            forests.push_back({ap[a], bp[b]});
            done = true;
          }
        }
      }
      if (done) continue;
      MergedNodeState below_x = Range(s, s.l(x), x - 1);
      MergedNodeState whole_y = Range(t, t.l(y), y);
      if (close(del[x] + list_dp.Run(below_x.forest, below_x.leftpos,
                                     whole_y.forest, whole_y.leftpos),
                target)) {
        forests.push_back({std::move(below_x), std::move(whole_y)});
        continue;
      }
      MergedNodeState whole_x = Range(s, s.l(x), x);
      MergedNodeState below_y = Range(t, t.l(y), y - 1);
      if (!close(ins[y] + list_dp.Run(whole_x.forest, whole_x.leftpos,
                                      below_y.forest, below_y.leftpos),
                 target)) {
        throw MalformedIndex("fusion traceback found no option at (" +
                             std::to_string(x) + ", " + std::to_string(y) + ")");
      }
      forests.push_back({std::move(whole_x), std::move(below_y)});
      continue;
    }
    Problem pr = std::move(forests.back());
    forests.pop_back();
    const auto& a = pr.a.forest;
    const auto& b = pr.b.forest;
    list_dp.Run(a, pr.a.leftpos, b, pr.b.leftpos);
    int p = static_cast<int>(a.size()), q = static_cast<int>(b.size());
    while (p > 0 && q > 0) {
      const double here = list_dp.at(p, q);
      const int lp = pr.a.leftpos[p - 1], lq = pr.b.leftpos[q - 1];
      if (close(list_dp.at(lp, lq) + st.tables.at(a[p - 1], b[q - 1]), here)) {
        trees.emplace_back(a[p - 1], b[q - 1]);
        p = lp;
        q = lq;
      } else if (close(list_dp.at(p - 1, q) + del[a[p - 1]], here)) {
        --p;
      } else {
        --q;
      }
    }
  }

  std::sort(groups.begin(), groups.end(),
            [](const MatchedGroup& g, const MatchedGroup& h) {
              return g.source > h.source;
            });
  ExtractedScript out;
  out.groups = groups;
  out.script = BuildScript(s, t, model, groups);
  out.mapping = MappingOf(s, t, model, groups);
  return out;
}

std::uint64_t PathCountBound(int d, int ell) {
  std::uint64_t total = 1;
  for (int k = 1; k <= ell; ++k) {
    std::uint64_t sum = 0, power = 1;
    for (int j = 1; j <= k; ++j) {
      power *= static_cast<std::uint64_t>(d);
      sum += power;
    }
    total *= 2 * sum;
  }
  return total;
}

}  // namespace rnatreedit
