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


#include "rnatreedit/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "rnatreedit/error.hpp"

namespace rnatreedit {
namespace {

std::string_view LoopKind(ElementKind kind) {
  switch (kind) {
    case ElementKind::kHairpinLoop: return kinds::kHairpin;
    case ElementKind::kInternalLoop: return kinds::kInternal;
    case ElementKind::kBulge: return kinds::kBulge;
    case ElementKind::kMultiloop: return kinds::kMultiloop;
    case ElementKind::kExteriorRegion: return kinds::kExterior;
    case ElementKind::kHelix: break;
  }
  return kinds::kHelix;
}

void AppendBases(std::vector<int>& out, const StructureElement& e) {
  for (const auto& r : e.ranges) {
    for (int b = r.first; b <= r.last; ++b) out.push_back(b);
  }
}

Label MakeLabel(std::string_view kind, int size) {
  return Label{std::string(kind), size};
}

void AddRepBRange(LabeledTree& t, const SecondaryStructure& s,
                  const std::vector<int>& partner, int parent, int from,
                  int to) {
  int k = from;
  while (k <= to) {
    if (partner[k] < 0) {
      t.AddChild(parent,
                 ObjectLabel{MakeLabel(std::string(1, s.sequence[k]), 1), {}},
                 {k});
      ++k;
      continue;
    }
    const int j = partner[k];
    std::string pair{s.sequence[k], s.sequence[j]};
    const int node = t.AddChild(parent, ObjectLabel{MakeLabel(pair, 1), {}},
                                {k, j});
    AddRepBRange(t, s, partner, node, k + 1, j - 1);
    k = j + 1;
  }
}

void AddRepCLoop(LabeledTree& t, const ElementGraph& g, int parent, int loop) {
  const auto& e = g.elements[loop];
  for (size_t k = 0; k < e.ranges.size(); ++k) {
    const BaseRange& seg = e.ranges[k];
    if (seg.size() > 0) {
      std::vector<int> bases;
      for (int b = seg.first; b <= seg.last; ++b) bases.push_back(b);
      t.AddChild(parent, ObjectLabel{MakeLabel(kinds::kRun, seg.size()), {}},
                 std::move(bases));
    }
    if (k < e.children.size()) {
      const int helix = e.children[k];
      std::vector<int> bases;
      AppendBases(bases, g.elements[helix]);
      const int node = t.AddChild(
          parent,
          ObjectLabel{MakeLabel(kinds::kStack, g.elements[helix].sizes[0]), {}},
          std::move(bases));
      AddRepCLoop(t, g, node, g.LoopClosedBy(helix));
    }
  }
}

void AddRepDLoop(LabeledTree& t, const ElementGraph& g, int parent, int loop) {
  for (int helix : g.elements[loop].children) {
    const int closed = g.LoopClosedBy(helix);
    const auto& h = g.elements[helix];
    const auto& l = g.elements[closed];
    std::vector<int> bases;
    AppendBases(bases, h);
    AppendBases(bases, l);
    std::sort(bases.begin(), bases.end());
    const int node = t.AddChild(
        parent,
        ObjectLabel{MakeLabel(LoopKind(l.kind), l.total_size()),
                    MakeLabel(kinds::kHelix, h.sizes[0])},
        std::move(bases));
    AddRepDLoop(t, g, node, closed);
  }
}

void AddRepELoop(LabeledTree& t, const ElementGraph& g, int parent, int loop) {
  for (int helix : g.elements[loop].children) {
    std::vector<int> bases;
    int edge_size = 0;
    int h = helix;
    int closed = g.LoopClosedBy(h);
    for (;;) {
      edge_size += g.elements[h].sizes[0];
      AppendBases(bases, g.elements[h]);
      const auto& l = g.elements[closed];
      if (l.kind != ElementKind::kInternalLoop &&
          l.kind != ElementKind::kBulge) {
        break;
      }
      edge_size += l.total_size();
      AppendBases(bases, l);
      h = l.children.front();
      closed = g.LoopClosedBy(h);
    }
    const auto& l = g.elements[closed];
    AppendBases(bases, l);
    std::sort(bases.begin(), bases.end());
    const int node = t.AddChild(
        parent,
        ObjectLabel{MakeLabel(LoopKind(l.kind), l.total_size()),
                    MakeLabel(kinds::kHelix, edge_size)},
        std::move(bases));
    AddRepELoop(t, g, node, closed);
  }
}

std::vector<int> UnpairedBases(const StructureElement& e) {
  std::vector<int> bases;
  AppendBases(bases, e);
  return bases;
}

bool IsKindChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         c == '-' || c == '.' || c == '\'';
}

class TextParser {
 public:
  explicit TextParser(std::string_view text) : text_(text) {}

  LabeledTree Parse() {
    LabeledTree t;
    SkipSpace();
    ParseNode(t, -1);
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing characters");
    return t;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(ParseErrorCode::kMalformedInput, 0,
                     what + " at offset " + std::to_string(pos_));
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool Consume(char c) {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Label ParseLabel() {
    SkipSpace();
    const size_t start = pos_;
    while (pos_ < text_.size() && IsKindChar(text_[pos_])) ++pos_;
    Label label;
    label.kind = std::string(text_.substr(start, pos_ - start));
    if (!Consume(':')) Fail("expected ':'");
    SkipSpace();
    const size_t digits = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (digits == pos_) Fail("expected a non-negative size");
    label.size = std::stoi(std::string(text_.substr(digits, pos_ - digits)));
    return label;
  }

  void ParseNode(LabeledTree& t, int parent) {
    ObjectLabel label;
    label.node = ParseLabel();
    if (label.node.kind.empty()) Fail("node kind must not be empty");
    if (Consume('[')) {
      label.edge = ParseLabel();
      if (!Consume(']')) Fail("expected ']'");
    }
    const int id = parent < 0 ? t.AddRoot(label) : t.AddChild(parent, label);
    if (Consume('(')) {
      do {
        ParseNode(t, id);
      } while (Consume(','));
      if (!Consume(')')) Fail("expected ')'");
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
};

std::string DotShape(std::string_view kind) {
  if (kind == kinds::kBulge) return "triangle";
  if (kind == kinds::kInternal) return "diamond";
  if (kind == kinds::kHairpin) return "square";
  if (kind == kinds::kMultiloop) return "circle";
  if (kind == kinds::kExterior || kind == kinds::kRoot) return "doublecircle";
  return "ellipse";
}

}  // namespace

const char* ToString(Representation rep) {
  switch (rep) {
    case Representation::kRepB: return "b";
    case Representation::kRepC: return "c";
    case Representation::kRepD: return "d";
    case Representation::kRepE: return "e";
    case Representation::kGeneric: return "generic";
  }
  return "generic";
}

Representation ParseRepresentation(std::string_view text) {
  std::string lower;
  for (char c : text)
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "b") return Representation::kRepB;
  if (lower == "c") return Representation::kRepC;
  if (lower == "d") return Representation::kRepD;
  if (lower == "e") return Representation::kRepE;
  if (lower == "generic") return Representation::kGeneric;
  throw ConfigError("unknown representation '" + std::string(text) +
                    "' (expected b, c, d or e)");
}

std::string ToString(const ObjectLabel& label) {
  std::string out = label.node.kind + ":" + std::to_string(label.node.size);
  if (!label.edge.empty()) {
    out += "[" + label.edge.kind + ":" + std::to_string(label.edge.size) + "]";
  }
  return out;
}

int LabeledTree::AddRoot(ObjectLabel label, std::vector<int> bases) {
  nodes.clear();
  nodes.push_back(TreeNode{std::move(label), {}, std::move(bases)});
  return 0;
}

int LabeledTree::AddChild(int parent, ObjectLabel label,
                          std::vector<int> bases) {
  const int id = size();
  nodes.push_back(TreeNode{std::move(label), {}, std::move(bases)});
  nodes[parent].children.push_back(id);
  return id;
}

bool Isomorphic(const LabeledTree& a, const LabeledTree& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  std::function<bool(int, int)> same = [&](int x, int y) {
    const auto& nx = a.nodes[x];
    const auto& ny = b.nodes[y];
    if (nx.label != ny.label || nx.children.size() != ny.children.size())
      return false;
    for (size_t k = 0; k < nx.children.size(); ++k) {
      if (!same(nx.children[k], ny.children[k])) return false;
    }
    return true;
  };
  return same(0, 0);
}

LabeledTree BuildRepB(const SecondaryStructure& s) {
  LabeledTree t;
  t.rep = Representation::kRepB;
  t.AddRoot(ObjectLabel{MakeLabel(kinds::kRoot, 0), {}});
  AddRepBRange(t, s, s.PartnerTable(), 0, 0, s.length() - 1);
  return t;
}

LabeledTree BuildRepC(const ElementGraph& g) {
  LabeledTree t;
  t.rep = Representation::kRepC;
  t.AddRoot(ObjectLabel{MakeLabel(kinds::kRoot, 0), {}});
  AddRepCLoop(t, g, 0, g.root);
  return t;
}

LabeledTree BuildRepD(const ElementGraph& g) {
  LabeledTree t;
  t.rep = Representation::kRepD;
  const auto& ext = g.elements[g.root];
  t.AddRoot(ObjectLabel{MakeLabel(kinds::kExterior, ext.total_size()), {}},
            UnpairedBases(ext));
  AddRepDLoop(t, g, 0, g.root);
  return t;
}

LabeledTree BuildRepE(const ElementGraph& g) {
  LabeledTree t;
  t.rep = Representation::kRepE;
  const auto& ext = g.elements[g.root];
  t.AddRoot(ObjectLabel{MakeLabel(kinds::kExterior, ext.total_size()), {}},
            UnpairedBases(ext));
  AddRepELoop(t, g, 0, g.root);
  return t;
}

LabeledTree BuildRepresentation(const SecondaryStructure& s,
                                Representation rep) {
  switch (rep) {
    case Representation::kRepB: return BuildRepB(s);
    case Representation::kRepC: return BuildRepC(Decompose(s));
    case Representation::kRepD: return BuildRepD(Decompose(s));
    case Representation::kRepE: return BuildRepE(Decompose(s));
    case Representation::kGeneric: break;
  }
  throw ConfigError("a structure needs an RNA representation (b, c, d or e)");
}

IndexedTree::IndexedTree(LabeledTree tree) : tree_(std::move(tree)) {
  const int n = tree_.size();
  if (n == 0) return;
  ids_.reserve(n + 1);
  index_of_.assign(n, 0);
  // Iterative postorder keeps deep Rep-B chains off the call stack.
  struct Frame {
    int id;
    size_t next_child;
    int depth;
  };
  std::vector<Frame> stack{{0, 0, 1}};
  std::vector<int> parent_id(n, -1);
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& node = tree_.nodes[f.id];
    height_ = std::max(height_, f.depth);
    if (f.next_child < node.children.size()) {
      const int child = node.children[f.next_child++];
      parent_id[child] = f.id;
      stack.push_back({child, 0, f.depth + 1});
      continue;
    }
    const int i = static_cast<int>(ids_.size());
    ids_.push_back(f.id);
    index_of_[f.id] = i;
    max_degree_ = std::max(max_degree_, static_cast<int>(node.children.size()));
    if (node.children.empty()) {
      ++leaves_;
      leftmost_.push_back(i);
    } else {
      leftmost_.push_back(leftmost_[index_of_[node.children.front()]]);
    }
    stack.pop_back();
  }
  parent_.assign(n + 1, 0);
  children_.assign(n + 1, {});
  for (int i = 1; i <= n; ++i) {
    const auto& node = tree_.nodes[ids_[i]];
    for (int c : node.children) {
      children_[i].push_back(index_of_[c]);
      parent_[index_of_[c]] = i;
    }
  }
  std::unordered_map<int, int> last_with_l;
  for (int i = 1; i <= n; ++i) last_with_l[leftmost_[i]] = i;
  for (int i = 1; i <= n; ++i) {
    if (last_with_l[leftmost_[i]] == i) keyroots_.push_back(i);
  }
}

std::string ToText(const LabeledTree& t) {
  if (t.empty()) return "";
  std::string out;
  std::function<void(int)> emit = [&](int id) {
    const auto& node = t.nodes[id];
    out += ToString(node.label);
    if (!node.children.empty()) {
      out += "(";
      for (size_t k = 0; k < node.children.size(); ++k) {
        if (k > 0) out += ",";
        emit(node.children[k]);
      }
      out += ")";
    }
  };
  emit(0);
  return out;
}

LabeledTree ParseTreeText(std::string_view text) {
  return TextParser(text).Parse();
}

std::string ColorName(int color) {
  static const char* kPalette[] = {
      "lightblue",  "palegreen", "gold",      "salmon",     "plum",
      "khaki",      "lightcyan", "orange",    "pink",       "thistle",
      "aquamarine", "wheat",     "lightgray", "lightcoral", "yellowgreen",
      "skyblue"};
  if (color <= 0) return "white";
  return kPalette[(color - 1) % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

std::string ToDot(const LabeledTree& t, const DotOptions& options) {
  std::ostringstream out;
  out << (options.as_subgraph ? "subgraph cluster_" : "digraph ")
      << options.graph_name << " {\n";
  for (int id = 0; id < t.size(); ++id) {
    const auto& node = t.nodes[id];
    out << "  " << options.id_prefix << id << " [label=\"" << node.label.node.kind
        << ":" << node.label.node.size << "\", shape="
        << DotShape(node.label.node.kind);
    const int color = id < static_cast<int>(options.colors.size())
                          ? options.colors[id]
                          : 0;
    if (color > 0) out << ", style=filled, fillcolor=" << ColorName(color);
    out << "];\n";
  }
  for (int id = 0; id < t.size(); ++id) {
    for (int c : t.nodes[id].children) {
      out << "  " << options.id_prefix << id << " -> " << options.id_prefix << c;
      const Label& edge = t.nodes[c].label.edge;
      if (!edge.empty()) {
        out << " [label=\"" << edge.kind << ":" << edge.size << "\"]";
      }
      out << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace rnatreedit
