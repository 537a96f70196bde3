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


#include "rnatreedit/edit_script.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "rnatreedit/error.hpp"

namespace rnatreedit {
namespace {

// Mutable tree keyed by working ids. Id 0 is a virtual super-root whose
// children are the current roots.
class WorkTree {
 public:
  struct Node {
    ObjectLabel label;
    std::vector<int> children;
    int parent = -1;
    bool alive = false;
  };

  explicit WorkTree(const IndexedTree& t) {
    Ensure(t.size());
    nodes_[0].alive = true;
    for (int i = 1; i <= t.size(); ++i) {
      nodes_[i].alive = true;
      nodes_[i].label = t.label(i);
      nodes_[i].children = t.children(i);
      nodes_[i].parent = t.parent(i);
    }
    if (t.size() > 0) nodes_[0].children = {t.size()};
  }

  Node& at(int id) {
    if (id < 0 || id >= static_cast<int>(nodes_.size()) || !nodes_[id].alive) {
      throw std::runtime_error("edit script refers to missing node " +
                               std::to_string(id));
    }
    return nodes_[id];
  }

  int Create(int id, ObjectLabel label) {
    Ensure(id);
    if (nodes_[id].alive) {
      throw std::runtime_error("edit script reuses node id " +
                               std::to_string(id));
    }
    nodes_[id] = Node{std::move(label), {}, -1, true};
    return id;
  }

  int PositionInParent(int id) {
    const auto& siblings = at(at(id).parent).children;
    auto it = std::find(siblings.begin(), siblings.end(), id);
    return static_cast<int>(it - siblings.begin());
  }

  void RequireChild(int parent, int child) {
    if (at(child).parent != parent || parent == 0) {
      throw std::runtime_error("node " + std::to_string(child) +
                               " is not a child of " + std::to_string(parent));
    }
  }

  // Replaces `id` in its parent's child list by its own children.
  void Splice(int id) {
    Node& n = at(id);
    auto& siblings = at(n.parent).children;
    const auto it = std::find(siblings.begin(), siblings.end(), id);
    const std::vector<int> kids = n.children;
    for (int k : kids) nodes_[k].parent = n.parent;
    const auto pos = siblings.insert(siblings.erase(it), kids.begin(), kids.end());
    (void)pos;
    n.alive = false;
  }

  template <typename Fn>
  void ForSubtree(int id, Fn&& fn) {
    fn(id);
    for (int c : at(id).children) ForSubtree(c, fn);
  }

  void KillSubtree(int id) {
    std::vector<int> ids;
    ForSubtree(id, [&](int x) { ids.push_back(x); });
    for (int x : ids) nodes_[x].alive = false;
  }

  int AddSubtree(const LabeledTree& t, int tree_node, int parent, int& next_id) {
    const int id = Create(next_id++, t.nodes[tree_node].label);
    nodes_[id].parent = parent;
    for (int c : t.nodes[tree_node].children) {
      const int child = AddSubtree(t, c, id, next_id);
      nodes_[id].children.push_back(child);
    }
    return id;
  }

  LabeledTree Extract() {
    const auto& roots = at(0).children;
    if (roots.size() != 1) {
      throw std::runtime_error("edited tree has " +
                               std::to_string(roots.size()) + " roots");
    }
    LabeledTree out;
    std::function<void(int, int)> emit = [&](int id, int parent) {
      const int created = parent < 0 ? out.AddRoot(at(id).label)
                                     : out.AddChild(parent, at(id).label);
      for (int c : at(id).children) emit(c, created);
    };
    emit(roots.front(), -1);
    return out;
  }

  int max_id() const { return static_cast<int>(nodes_.size()) - 1; }

 private:
  void Ensure(int id) {
    if (id >= static_cast<int>(nodes_.size())) nodes_.resize(id + 1);
  }

  std::vector<Node> nodes_;
};

LabeledTree SubtreeOf(const IndexedTree& t, int root) {
  LabeledTree out;
  std::function<void(int, int)> emit = [&](int i, int parent) {
    const int id =
        parent < 0 ? out.AddRoot(t.label(i)) : out.AddChild(parent, t.label(i));
    for (int c : t.children(i)) emit(c, id);
  };
  emit(root, -1);
  return out;
}

}  // namespace

std::string ToString(const FusionPath& path) {
  std::string out;
  for (const auto& s : path) {
    if (!out.empty()) out += ".";
    out += s.kind == FusionKind::kNode ? "(u," : "(e,";
    out += std::to_string(s.node) + ")";
  }
  return out.empty() ? "()" : out;
}

const char* ToString(OpKind kind) {
  switch (kind) {
    case OpKind::kDelete: return "delete";
    case OpKind::kInsert: return "insert";
    case OpKind::kRelabel: return "relabel";
    case OpKind::kNodeFusion: return "node_fusion";
    case OpKind::kEdgeFusion: return "edge_fusion";
    case OpKind::kNodeSplit: return "node_split";
    case OpKind::kEdgeSplit: return "edge_split";
  }
  return "unknown";
}

OpKind ParseOpKind(std::string_view text) {
  for (OpKind k : {OpKind::kDelete, OpKind::kInsert, OpKind::kRelabel,
                   OpKind::kNodeFusion, OpKind::kEdgeFusion, OpKind::kNodeSplit,
                   OpKind::kEdgeSplit}) {
    if (text == ToString(k)) return k;
  }
  throw std::runtime_error("unknown operation '" + std::string(text) + "'");
}

double EditScript::total_cost() const {
  double total = 0;
  for (const auto& op : ops) total += op.cost;
  return total;
}

int EditScript::Count(OpKind kind) const {
  return static_cast<int>(std::count_if(
      ops.begin(), ops.end(), [kind](const EditOp& op) { return op.kind == kind; }));
}

double SubtreeCost(const IndexedTree& t, int root, const CostModel& model,
                   bool insert_side) {
  double total = 0;
  for (int i = t.l(root); i <= root; ++i) {
    total += insert_side ? model.Insert(t.label(i)) : model.Delete(t.label(i));
  }
  return total;
}

PathTrace TracePath(const IndexedTree& t, int root, const FusionPath& path,
                    const CostModel& model, bool insert_side) {
  PathTrace trace;
  trace.label = t.label(root);
  trace.roots = t.children(root);
  for (const auto& step : path) {
    PathTrace::Step s;
    s.before = trace.label;
    s.roots_before = trace.roots;
    const auto it = std::find(trace.roots.begin(), trace.roots.end(), step.node);
    if (it == trace.roots.end()) {
      throw MalformedIndex("fusion step " + std::to_string(step.node) +
                           " is not a child of merged root " +
                           std::to_string(root));
    }
    const ObjectLabel& child = t.label(step.node);
    if (step.kind == FusionKind::kNode) {
      s.cost = insert_side ? model.NodeSplit(trace.label, child)
                           : model.NodeFusion(trace.label, child);
      trace.label = model.MergeNode(trace.label, child);
      const auto& kids = t.children(step.node);
      const auto pos = trace.roots.erase(it);
      trace.roots.insert(pos, kids.begin(), kids.end());
    } else {
      double displaced = 0;
      for (int r : trace.roots) {
        if (r == step.node) continue;
        s.displaced.push_back(r);
        displaced += SubtreeCost(t, r, model, insert_side);
      }
      s.cost = insert_side ? model.EdgeSplit(trace.label, child, displaced)
                           : model.EdgeFusion(trace.label, child, displaced);
      trace.label = model.MergeEdge(trace.label, child);
      trace.roots = t.children(step.node);
    }
    trace.absorbed.push_back(step.node);
    s.after = trace.label;
    s.roots_after = trace.roots;
    trace.steps.push_back(std::move(s));
  }
  return trace;
}

EditScript BuildScript(const IndexedTree& source, const IndexedTree& target,
                       const CostModel& model,
                       const std::vector<MatchedGroup>& groups) {
  const int n = source.size();
  const int m = target.size();
  EditScript script;
  WorkTree wt(source);

  std::vector<PathTrace> src_traces, dst_traces;
  for (const auto& g : groups) {
    src_traces.push_back(TracePath(source, g.source, g.source_path, model, false));
    dst_traces.push_back(TracePath(target, g.target, g.target_path, model, true));
  }

  // Fusions on T, top-down.
  std::vector<char> consumed(n + 1, 0);
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    consumed[g.source] = 1;
    for (size_t k = 0; k < g.source_path.size(); ++k) {
      const auto& step = g.source_path[k];
      const auto& ts = src_traces[gi].steps[k];
      EditOp op;
      op.kind = step.kind == FusionKind::kNode ? OpKind::kNodeFusion
                                               : OpKind::kEdgeFusion;
      op.node = g.source;
      op.other = step.node;
      op.source = g.source;
      op.path.assign(g.source_path.begin(), g.source_path.begin() + k + 1);
      op.cost = ts.cost;
      consumed[step.node] = 1;
      auto& u = wt.at(g.source);
      if (step.kind == FusionKind::kNode) {
        u.label = ts.after;
        wt.Splice(step.node);
      } else {
        for (int r : ts.displaced) {
          for (int x = source.l(r); x <= r; ++x) consumed[x] = 1;
          wt.KillSubtree(r);
        }
        const std::vector<int> kids = wt.at(step.node).children;
        for (int c : kids) wt.at(c).parent = g.source;
        wt.at(step.node).alive = false;
        wt.at(g.source).children = kids;
        wt.at(g.source).label = ts.after;
      }
      script.ops.push_back(std::move(op));
    }
  }

  // Deletions of everything left unmatched in T.
  for (int i = 1; i <= n; ++i) {
    if (consumed[i]) continue;
    EditOp op;
    op.kind = OpKind::kDelete;
    op.node = i;
    op.source = i;
    op.cost = model.Delete(source.label(i));
    wt.Splice(i);
    script.ops.push_back(std::move(op));
  }

  // Relabels.
  std::vector<int> work_id_of_target(m + 1, 0);
  std::vector<char> target_consumed(m + 1, 0);
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    EditOp op;
    op.kind = OpKind::kRelabel;
    op.node = g.source;
    op.source = g.source;
    op.target = g.target;
    op.label = dst_traces[gi].label;
    op.cost = model.Match(src_traces[gi].label, dst_traces[gi].label);
    wt.at(g.source).label = op.label;
    script.ops.push_back(std::move(op));
    work_id_of_target[g.target] = g.source;
    target_consumed[g.target] = 1;
    for (size_t k = 0; k < g.target_path.size(); ++k) {
      target_consumed[g.target_path[k].node] = 1;
      for (int r : dst_traces[gi].steps[k].displaced) {
        for (int x = target.l(r); x <= r; ++x) target_consumed[x] = 1;
      }
    }
  }

  // T' with its own fusions applied: the tree the insertions must reach.
  std::vector<int> group_of_target(m + 1, -1);
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    group_of_target[groups[gi].target] = static_cast<int>(gi);
  }
  std::vector<std::vector<int>> fchildren(m + 1);
  std::vector<int> fparent(m + 1, 0);
  std::vector<int> pre(m + 1, 0), extent(m + 1, 1);
  std::vector<int> order;
  if (m > 0) {
    int counter = 0;
    std::function<void(int, int)> walk = [&](int j, int parent) {
      fparent[j] = parent;
      pre[j] = ++counter;
      order.push_back(j);
      const int gi = group_of_target[j];
      fchildren[j] = gi >= 0 ? dst_traces[gi].roots : target.children(j);
      for (int c : fchildren[j]) walk(c, j);
      extent[j] = counter - pre[j] + 1;
    };
    walk(m, 0);
  }
  std::vector<int> target_of_work(wt.max_id() + n + m + 2, 0);
  for (int j = 1; j <= m; ++j) {
    if (work_id_of_target[j] > 0) target_of_work[work_id_of_target[j]] = j;
  }

  for (int j : order) {
    if (group_of_target[j] >= 0) continue;
    const int parent_work = fparent[j] == 0 ? 0 : work_id_of_target[fparent[j]];
    auto& kids = wt.at(parent_work).children;
    int first = -1, count = 0, before = 0;
    for (size_t k = 0; k < kids.size(); ++k) {
      const int tj = target_of_work[kids[k]];
      if (tj == 0) {
        throw std::logic_error("working node without a target while inserting");
      }
      if (pre[tj] >= pre[j] && pre[tj] < pre[j] + extent[j]) {
        if (first < 0) first = static_cast<int>(k);
        ++count;
      } else if (pre[tj] < pre[j]) {
        ++before;
      }
    }
    EditOp op;
    op.kind = OpKind::kInsert;
    op.node = parent_work;
    op.other = n + j;
    op.target = j;
    op.label = target.label(j);
    op.position = first >= 0 ? first : before;
    op.count = count;
    op.cost = model.Insert(op.label);
    const int id = wt.Create(op.other, op.label);
    auto& parent_kids = wt.at(parent_work).children;
    std::vector<int> adopted(parent_kids.begin() + op.position,
                             parent_kids.begin() + op.position + count);
    parent_kids.erase(parent_kids.begin() + op.position,
                      parent_kids.begin() + op.position + count);
    parent_kids.insert(parent_kids.begin() + op.position, id);
    wt.at(id).parent = parent_work;
    wt.at(id).children = adopted;
    for (int a : adopted) wt.at(a).parent = id;
    work_id_of_target[j] = id;
    target_of_work[id] = j;
    script.ops.push_back(std::move(op));
  }

  // Splits undoing the fusions of T', bottom-up.
  int next_id = n + m + 1;
  for (size_t gi = groups.size(); gi-- > 0;) {
    const auto& g = groups[gi];
    const auto& trace = dst_traces[gi];
    int object = g.source;
    for (size_t k = g.target_path.size(); k-- > 0;) {
      const auto& step = g.target_path[k];
      const auto& ts = trace.steps[k];
      const int pos = static_cast<int>(
          std::find(ts.roots_before.begin(), ts.roots_before.end(), step.node) -
          ts.roots_before.begin());
      EditOp op;
      op.node = object;
      op.other = next_id++;
      op.target = step.node;
      op.path.assign(g.target_path.begin(), g.target_path.begin() + k + 1);
      op.cost = ts.cost;
      if (step.kind == FusionKind::kNode) {
        op.kind = OpKind::kNodeSplit;
        op.label = ts.before;
        op.other_label = target.label(step.node);
        op.position = pos;
        op.count = static_cast<int>(target.children(step.node).size());
        auto& w = wt.at(object);
        w.label = op.label;
        const int id = wt.Create(op.other, op.other_label);
        auto& wk = wt.at(object).children;
        std::vector<int> adopted(wk.begin() + op.position,
                                 wk.begin() + op.position + op.count);
        wk.erase(wk.begin() + op.position, wk.begin() + op.position + op.count);
        wk.insert(wk.begin() + op.position, id);
        wt.at(id).parent = object;
        wt.at(id).children = adopted;
        for (int a : adopted) wt.at(a).parent = id;
      } else {
        op.kind = OpKind::kEdgeSplit;
        op.label = target.label(step.node);
        op.other_label = ts.before;
        for (int r : ts.displaced) {
          const int r_pos = static_cast<int>(
              std::find(ts.roots_before.begin(), ts.roots_before.end(), r) -
              ts.roots_before.begin());
          (r_pos < pos ? op.before : op.after).push_back(SubtreeOf(target, r));
        }
        const int parent = wt.at(object).parent;
        const int slot = wt.PositionInParent(object);
        const int id = wt.Create(op.other, op.other_label);
        wt.at(parent).children[slot] = id;
        wt.at(id).parent = parent;
        int scratch = wt.max_id() + 1;
        std::vector<int> kids;
        for (const auto& sub : op.before) kids.push_back(wt.AddSubtree(sub, 0, id, scratch));
        kids.push_back(object);
        for (const auto& sub : op.after) kids.push_back(wt.AddSubtree(sub, 0, id, scratch));
        wt.at(id).children = kids;
        wt.at(object).parent = id;
        wt.at(object).label = op.label;
        next_id = std::max(next_id, scratch);
        object = id;
      }
      script.ops.push_back(std::move(op));
    }
  }
  return script;
}

Mapping MappingOf(const IndexedTree& source, const IndexedTree& target,
                  const CostModel& model,
                  const std::vector<MatchedGroup>& groups) {
  Mapping mapping;
  for (const auto& g : groups) {
    MappedPair pair;
    pair.source.push_back(g.source);
    pair.target.push_back(g.target);
    for (int a : TracePath(source, g.source, g.source_path, model, false).absorbed)
      pair.source.push_back(a);
    for (int a : TracePath(target, g.target, g.target_path, model, true).absorbed)
      pair.target.push_back(a);
    mapping.pairs.push_back(std::move(pair));
  }
  return mapping;
}

ReplayResult Replay(const LabeledTree& source, const EditScript& script,
                    const CostModel& model) {
  const IndexedTree indexed(source);
  WorkTree wt(indexed);
  double cost = 0;
  int scratch = wt.max_id() + 1;
  for (const auto& op : script.ops) scratch = std::max({scratch, op.node + 1, op.other + 1});
  auto subtree_sum = [&](int root, bool insert) {
    double total = 0;
    wt.ForSubtree(root, [&](int x) {
      total += insert ? model.Insert(wt.at(x).label) : model.Delete(wt.at(x).label);
    });
    return total;
  };
  for (const auto& op : script.ops) {
    switch (op.kind) {
      case OpKind::kDelete: {
        if (op.node == 0) throw std::runtime_error("cannot delete the super-root");
        cost += model.Delete(wt.at(op.node).label);
        wt.Splice(op.node);
        break;
      }
      case OpKind::kRelabel: {
        auto& n = wt.at(op.node);
        cost += model.Match(n.label, op.label);
        n.label = op.label;
        break;
      }
      case OpKind::kInsert: {
        auto& kids = wt.at(op.node).children;
        if (op.position < 0 || op.count < 0 ||
            op.position + op.count > static_cast<int>(kids.size())) {
          throw std::runtime_error("insert slot out of range");
        }
        cost += model.Insert(op.label);
        const int id = wt.Create(op.other, op.label);
        auto& pk = wt.at(op.node).children;
        std::vector<int> adopted(pk.begin() + op.position,
                                 pk.begin() + op.position + op.count);
        pk.erase(pk.begin() + op.position, pk.begin() + op.position + op.count);
        pk.insert(pk.begin() + op.position, id);
        wt.at(id).parent = op.node;
        wt.at(id).children = adopted;
        for (int a : adopted) wt.at(a).parent = id;
        break;
      }
      case OpKind::kNodeFusion: {
        wt.RequireChild(op.node, op.other);
        auto& u = wt.at(op.node);
        const ObjectLabel child = wt.at(op.other).label;
        cost += model.NodeFusion(u.label, child);
        u.label = model.MergeNode(u.label, child);
        wt.Splice(op.other);
        break;
      }
      case OpKind::kEdgeFusion: {
        wt.RequireChild(op.node, op.other);
        const std::vector<int> kids = wt.at(op.node).children;
        double displaced = 0;
        for (int k : kids) {
          if (k != op.other) displaced += subtree_sum(k, false);
        }
        auto& u = wt.at(op.node);
        const ObjectLabel child = wt.at(op.other).label;
        cost += model.EdgeFusion(u.label, child, displaced);
        u.label = model.MergeEdge(u.label, child);
        for (int k : kids) {
          if (k != op.other) wt.KillSubtree(k);
        }
        const std::vector<int> grand = wt.at(op.other).children;
        for (int g : grand) wt.at(g).parent = op.node;
        wt.at(op.other).alive = false;
        wt.at(op.node).children = grand;
        break;
      }
      case OpKind::kNodeSplit: {
        auto& kids = wt.at(op.node).children;
        if (op.node == 0 || op.position < 0 || op.count < 0 ||
            op.position + op.count > static_cast<int>(kids.size())) {
          throw std::runtime_error("node split slot out of range");
        }
        cost += model.NodeSplit(op.label, op.other_label);
        wt.at(op.node).label = op.label;
        const int id = wt.Create(op.other, op.other_label);
        auto& wk = wt.at(op.node).children;
        std::vector<int> adopted(wk.begin() + op.position,
                                 wk.begin() + op.position + op.count);
        wk.erase(wk.begin() + op.position, wk.begin() + op.position + op.count);
        wk.insert(wk.begin() + op.position, id);
        wt.at(id).parent = op.node;
        wt.at(id).children = adopted;
        for (int a : adopted) wt.at(a).parent = id;
        break;
      }
      case OpKind::kEdgeSplit: {
        if (op.node == 0) throw std::runtime_error("cannot split the super-root");
        const int parent = wt.at(op.node).parent;
        const int slot = wt.PositionInParent(op.node);
        const int id = wt.Create(op.other, op.other_label);
        wt.at(parent).children[slot] = id;
        wt.at(id).parent = parent;
        std::vector<int> kids;
        for (const auto& sub : op.before) kids.push_back(wt.AddSubtree(sub, 0, id, scratch));
        kids.push_back(op.node);
        for (const auto& sub : op.after) kids.push_back(wt.AddSubtree(sub, 0, id, scratch));
        double displaced = 0;
        for (int k : kids) {
          if (k != op.node) displaced += subtree_sum(k, true);
        }
        wt.at(id).children = kids;
        wt.at(op.node).parent = id;
        wt.at(op.node).label = op.label;
        cost += model.EdgeSplit(op.other_label, op.label, displaced);
        break;
      }
    }
  }
  return ReplayResult{wt.Extract(), cost};
}

bool IsValidMapping(const IndexedTree& source, const IndexedTree& target,
                    const Mapping& mapping) {
  std::vector<char> seen_s(source.size() + 1, 0), seen_t(target.size() + 1, 0);
  for (const auto& p : mapping.pairs) {
    if (p.source.empty() || p.target.empty()) return false;
    for (int s : p.source) {
      if (s < 1 || s > source.size() || seen_s[s]++) return false;
    }
    for (int t : p.target) {
      if (t < 1 || t > target.size() || seen_t[t]++) return false;
    }
  }
  auto ancestor = [](const IndexedTree& t, int a, int b) {
    return t.l(a) <= b && b < a;
  };
  auto left_of = [](const IndexedTree& t, int a, int b) { return a < t.l(b); };
  for (const auto& p : mapping.pairs) {
    for (const auto& q : mapping.pairs) {
      const int a = p.source[0], b = q.source[0];
      const int x = p.target[0], y = q.target[0];
      if (ancestor(source, a, b) != ancestor(target, x, y)) return false;
      if (left_of(source, a, b) != left_of(target, x, y)) return false;
    }
  }
  return true;
}

}  // namespace rnatreedit
