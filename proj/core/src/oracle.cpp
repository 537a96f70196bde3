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


#include "rnatreedit/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "rnatreedit/error.hpp"

namespace rnatreedit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckBudget(const LabeledTree& a, const LabeledTree& b,
                 const SearchBudget& budget) {
  if (budget.max_nodes > kOracleMaxNodes) {
    throw BudgetExceeded("oracle budget is limited to " +
                         std::to_string(kOracleMaxNodes) + " nodes, got " +
                         std::to_string(budget.max_nodes));
  }
  if (a.size() > budget.max_nodes || b.size() > budget.max_nodes) {
    throw BudgetExceeded("tree sizes " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " exceed the oracle budget of " +
                         std::to_string(budget.max_nodes) + " nodes");
  }
}

double CheckBound(double value, const SearchBudget& budget) {
  if (value > budget.cost_bound) {
    throw BudgetExceeded("cheapest script costs more than the bound " +
                         std::to_string(budget.cost_bound));
  }
  return value;
}

// Tree flattened in preorder with ancestor bitmasks.
struct Compiled {
  std::vector<int> node;       // LabeledTree id per preorder slot
  std::vector<std::uint32_t> anc;
  std::vector<char> must;
  std::vector<double> cost;    // deletion (or insertion) price
  std::vector<double> suffix;  // sum of cost[k..]
  std::vector<int> next_must;  // first must slot at or after k, or n

  int n() const { return static_cast<int>(node.size()); }
};

Compiled Compile(const LabeledTree& t, const std::vector<char>& must,
                 const std::function<double(const ObjectLabel&)>& price) {
  Compiled c;
  if (t.empty()) {
    c.suffix = {0.0};
    c.next_must = {0};
    return c;
  }
  std::function<void(int, std::uint32_t)> walk = [&](int id, std::uint32_t above) {
    const int slot = c.n();
    c.node.push_back(id);
    c.anc.push_back(above);
    c.must.push_back(!must.empty() && must[id]);
    c.cost.push_back(price(t.nodes[id].label));
    for (int ch : t.nodes[id].children) walk(ch, above | (1u << slot));
  };
  walk(0, 0);
  const int n = c.n();
  c.suffix.assign(n + 1, 0.0);
  c.next_must.assign(n + 1, n);
  for (int k = n - 1; k >= 0; --k) {
    c.suffix[k] = c.suffix[k + 1] + c.cost[k];
    c.next_must[k] = c.must[k] ? k : c.next_must[k + 1];
  }
  return c;
}

// Exhaustive search over order-preserving partial pairings in preorder.
class MappingSearch {
 public:
  MappingSearch(const Compiled& a, const Compiled& b,
                const std::vector<double>& match)
      : a_(a), b_(b), match_(match) {}

  double Run() {
    best_ = kInf;
    Visit(0, 0, 0.0, 0);
    return best_;
  }

 private:
  void Visit(int i0, int j0, double cost, int depth) {
    if (a_.next_must[i0] == a_.n() && b_.next_must[j0] == b_.n()) {
      best_ = std::min(best_, cost + a_.suffix[i0] + b_.suffix[j0]);
    }
    const int i_end = std::min(a_.n() - 1, a_.next_must[i0]);
    const int j_end = std::min(b_.n() - 1, b_.next_must[j0]);
    for (int i = i0; i <= i_end; ++i) {
      const double skip_a = a_.suffix[i0] - a_.suffix[i];
      for (int j = j0; j <= j_end; ++j) {
        bool ok = true;
        for (int k = 0; k < depth && ok; ++k) {
          ok = ((a_.anc[i] >> pi_[k]) & 1u) == ((b_.anc[j] >> pj_[k]) & 1u);
        }
        if (!ok) continue;
        const double skip_b = b_.suffix[j0] - b_.suffix[j];
        pi_[depth] = i;
        pj_[depth] = j;
        Visit(i + 1, j + 1, cost + skip_a + skip_b + match_[i * b_.n() + j],
              depth + 1);
      }
    }
  }

  const Compiled& a_;
  const Compiled& b_;
  const std::vector<double>& match_;
  int pi_[32] = {};
  int pj_[32] = {};
  double best_ = kInf;
};

double SolveCompiled(const Compiled& a, const Compiled& b,
                     const std::function<double(int, int)>& match) {
  std::vector<double> m(static_cast<size_t>(a.n()) * b.n());
  for (int i = 0; i < a.n(); ++i) {
    for (int j = 0; j < b.n(); ++j) m[i * b.n() + j] = match(a.node[i], b.node[j]);
  }
  return MappingSearch(a, b, m).Run();
}

// Fused tree under construction.
struct FNode {
  ObjectLabel label;
  bool must = false;
  std::vector<FNode> kids;
};

struct SubPlan {
  FNode root;
  double cost = 0;
  int fusions = 0;
  int longest = 0;
};

class PlanBuilder {
 public:
  PlanBuilder(const LabeledTree& t, const CostModel& model, int ell, bool prune,
              bool insert_side)
      : t_(t), model_(model), ell_(ell), prune_(prune), insert_(insert_side) {}

  std::vector<SubPlan> Plans(int v, bool allow_fusion) {
    struct Option {
      ObjectLabel label;
      std::vector<int> roots;
      double cost = 0;
      int length = 0;
      bool last_node = false;
    };
    std::vector<Option> options{{t_.nodes[v].label, t_.nodes[v].children, 0, 0, false}};
    if (allow_fusion) {
      for (size_t k = 0; k < options.size(); ++k) {
        const Option cur = options[k];
        if (cur.length >= ell_) continue;
        for (size_t ci = 0; ci < cur.roots.size(); ++ci) {
          const int c = cur.roots[ci];
          const ObjectLabel& child = t_.nodes[c].label;
          Option n;
          n.label = model_.MergeNode(cur.label, child);
          n.cost = cur.cost + (insert_ ? model_.NodeSplit(cur.label, child)
                                       : model_.NodeFusion(cur.label, child));
          n.length = cur.length + 1;
          n.last_node = true;
          for (int r : cur.roots) {
            if (r == c) {
              for (int g : t_.nodes[c].children) n.roots.push_back(g);
            } else {
              n.roots.push_back(r);
            }
          }
          options.push_back(std::move(n));
          if (prune_ && cur.last_node) continue;
          double displaced = 0;
          for (int r : cur.roots) {
            if (r != c) displaced += SubtreeSum(r);
          }
          Option e;
          e.label = model_.MergeEdge(cur.label, child);
          e.cost = cur.cost + (insert_ ? model_.EdgeSplit(cur.label, child, displaced)
                                       : model_.EdgeFusion(cur.label, child, displaced));
          e.length = cur.length + 1;
          e.roots = t_.nodes[c].children;
          options.push_back(std::move(e));
        }
      }
    }
    std::vector<SubPlan> out;
    for (const Option& o : options) {
      std::vector<SubPlan> partial{SubPlan{FNode{o.label, o.length > 0, {}}, o.cost,
                                           o.length, o.length}};
      for (int r : o.roots) {
        const std::vector<SubPlan> sub = Plans(r, true);
        std::vector<SubPlan> grown;
        grown.reserve(partial.size() * sub.size());
        for (const SubPlan& p : partial) {
          for (const SubPlan& s : sub) {
            SubPlan g = p;
            g.root.kids.push_back(s.root);
            g.cost += s.cost;
            g.fusions += s.fusions;
            g.longest = std::max(g.longest, s.longest);
            grown.push_back(std::move(g));
          }
        }
        partial = std::move(grown);
      }
      for (SubPlan& p : partial) out.push_back(std::move(p));
    }
    return out;
  }

 private:
  double SubtreeSum(int v) const {
    double total = insert_ ? model_.Insert(t_.nodes[v].label)
                           : model_.Delete(t_.nodes[v].label);
    for (int c : t_.nodes[v].children) total += SubtreeSum(c);
    return total;
  }

  const LabeledTree& t_;
  const CostModel& model_;
  int ell_;
  bool prune_;
  bool insert_;
};

void Emit(const FNode& f, int parent, FusionPlan& plan) {
  const int id = parent < 0 ? plan.tree.AddRoot(f.label)
                            : plan.tree.AddChild(parent, f.label);
  plan.must_map.push_back(f.must);
  for (const FNode& k : f.kids) Emit(k, id, plan);
}

bool SameExceptT(const ModelParams& a, const ModelParams& b) {
  ModelParams x = a, y = b;
  x.t = y.t = 0;
  return x == y;
}

}  // namespace

double ConstrainedMappingOracle(const LabeledTree& source,
                                const std::vector<char>& must_source,
                                const LabeledTree& target,
                                const std::vector<char>& must_target,
                                const CostModel& model,
                                const SearchBudget& budget) {
  CheckBudget(source, target, budget);
  const Compiled a = Compile(source, must_source,
                             [&](const ObjectLabel& l) { return model.Delete(l); });
  const Compiled b = Compile(target, must_target,
                             [&](const ObjectLabel& l) { return model.Insert(l); });
  const double best = SolveCompiled(a, b, [&](int i, int j) {
    return model.Match(source.nodes[i].label, target.nodes[j].label);
  });
  return CheckBound(best, budget);
}

double MappingOracle(const LabeledTree& source, const LabeledTree& target,
                     const CostModel& model, const SearchBudget& budget) {
  return ConstrainedMappingOracle(source, {}, target, {}, model, budget);
}

std::vector<FusionPlan> EnumerateFusionPlans(const LabeledTree& t,
                                             const CostModel& model, int ell,
                                             bool prune, bool insert_side) {
  std::vector<FusionPlan> out;
  if (t.empty()) {
    out.emplace_back();
    return out;
  }
  PlanBuilder builder(t, model, ell, prune, insert_side);
  for (const SubPlan& p : builder.Plans(0, false)) {
    FusionPlan plan;
    Emit(p.root, -1, plan);
    plan.cost = p.cost;
    plan.fusions = p.fusions;
    plan.longest = p.longest;
    out.push_back(std::move(plan));
  }
  return out;
}

struct FusionOracle::Impl {
  struct Shape {
    Compiled compiled;
    std::vector<int> label_ids;  // per preorder slot
    // cost[k][ell]: cheapest plan with this shape for models[k] whose
    // longest path is at most ell.
    std::vector<std::vector<double>> cost;
  };

  std::vector<CostModel> models;
  int max_ell = 1;
  bool prune = false;
  std::map<ObjectLabel, int> label_index;
  std::vector<ObjectLabel> labels;
  std::vector<std::vector<double>> match_cache;
  std::unordered_map<std::string, std::vector<Shape>> shapes[2];

  int Intern(const ObjectLabel& l) {
    auto [it, inserted] = label_index.emplace(l, static_cast<int>(labels.size()));
    if (inserted) labels.push_back(l);
    return it->second;
  }

  double MatchIds(int a, int b) {
    if (static_cast<int>(match_cache.size()) <= a) match_cache.resize(a + 1);
    auto& row = match_cache[a];
    if (static_cast<int>(row.size()) <= b) row.resize(b + 1, -1.0);
    if (row[b] < 0) row[b] = models.front().Match(labels[a], labels[b]);
    return row[b];
  }

  const std::vector<Shape>& ShapesOf(const LabeledTree& t, bool insert_side) {
    const std::string key = ToText(t);
    auto& cache = shapes[insert_side ? 1 : 0];
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::vector<std::vector<FusionPlan>> per_model;
    for (const CostModel& m : models) {
      per_model.push_back(EnumerateFusionPlans(t, m, max_ell, prune, insert_side));
    }
    std::vector<Shape> result;
    std::unordered_map<std::string, int> by_key;
    const CostModel& base = models.front();
    for (size_t p = 0; p < per_model.front().size(); ++p) {
      const FusionPlan& plan = per_model.front()[p];
      std::string shape_key = ToText(plan.tree) + "|";
      for (char c : plan.must_map) shape_key += c ? '1' : '0';
      auto [it, inserted] = by_key.emplace(shape_key, static_cast<int>(result.size()));
      if (inserted) {
        Shape s;
        s.compiled = Compile(plan.tree, plan.must_map, [&](const ObjectLabel& l) {
          return insert_side ? base.Insert(l) : base.Delete(l);
        });
        for (int id : s.compiled.node) s.label_ids.push_back(Intern(plan.tree.nodes[id].label));
        s.cost.assign(models.size(), std::vector<double>(max_ell + 1, kInf));
        result.push_back(std::move(s));
      }
      Shape& s = result[it->second];
      for (size_t k = 0; k < models.size(); ++k) {
        const double c = per_model[k][p].cost;
        for (int e = plan.longest; e <= max_ell; ++e) {
          s.cost[k][e] = std::min(s.cost[k][e], c);
        }
      }
    }
    return cache.emplace(key, std::move(result)).first->second;
  }
};

FusionOracle::FusionOracle(std::vector<CostModel> models, int max_ell, bool prune)
    : impl_(std::make_unique<Impl>()) {
  if (models.empty()) throw std::invalid_argument("FusionOracle needs a model");
  for (const CostModel& m : models) {
    if (!SameExceptT(m.params(), models.front().params())) {
      throw std::invalid_argument("FusionOracle models may differ only in t");
    }
  }
  impl_->models = std::move(models);
  impl_->max_ell = max_ell;
  impl_->prune = prune;
}

FusionOracle::~FusionOracle() = default;

std::vector<std::vector<double>> FusionOracle::Distances(const LabeledTree& source,
                                                         const LabeledTree& target) {
  Impl& im = *impl_;
  const auto& sa = im.ShapesOf(source, false);
  const auto& sb = im.ShapesOf(target, true);
  std::vector<std::vector<double>> best(im.models.size(),
                                        std::vector<double>(im.max_ell + 1, kInf));
  for (const auto& a : sa) {
    for (const auto& b : sb) {
      std::vector<double> m(static_cast<size_t>(a.compiled.n()) * b.compiled.n());
      for (int i = 0; i < a.compiled.n(); ++i) {
        for (int j = 0; j < b.compiled.n(); ++j) {
          m[i * b.compiled.n() + j] = im.MatchIds(a.label_ids[i], b.label_ids[j]);
        }
      }
      const double ted = MappingSearch(a.compiled, b.compiled, m).Run();
      for (size_t k = 0; k < im.models.size(); ++k) {
        for (int e = 0; e <= im.max_ell; ++e) {
          best[k][e] = std::min(best[k][e], a.cost[k][e] + b.cost[k][e] + ted);
        }
      }
    }
  }
  return best;
}

double ScriptSearchOracle(const LabeledTree& source, const LabeledTree& target,
                          const CostModel& model, const SearchBudget& budget) {
  CheckBudget(source, target, budget);
  FusionOracle oracle({model}, budget.ell, budget.prune);
  return CheckBound(oracle.Distances(source, target)[0][budget.ell], budget);
}

}  // namespace rnatreedit
