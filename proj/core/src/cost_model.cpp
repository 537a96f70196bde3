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


#include "rnatreedit/cost_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "rnatreedit/error.hpp"

namespace rnatreedit {
namespace {

bool IsLoopKind(std::string_view k) {
  return k == kinds::kExterior || k == kinds::kMultiloop ||
         k == kinds::kInternal || k == kinds::kBulge || k == kinds::kHairpin;
}

// Kind of the loop obtained by merging a loop with a child loop across a
// deleted helix.
std::string MergedNodeKind(const std::string& parent, const std::string& child) {
  if (!IsLoopKind(parent) || !IsLoopKind(child)) return parent;
  if (parent == kinds::kExterior || parent == kinds::kMultiloop) return parent;
  if (child == kinds::kMultiloop) return std::string(kinds::kMultiloop);
  if (child == kinds::kHairpin) return std::string(kinds::kHairpin);
  return std::string(kinds::kInternal);
}

constexpr double kSlack = 1e-12;

std::string Trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

double ParseNumber(const std::string& key, const std::string& value) {
  double out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError("'" + key + "' needs a number, got '" + value + "'");
  }
  return out;
}

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("'" + key + "' needs true or false, got '" + value + "'");
}

}  // namespace

CostModel::CostModel(ModelParams params) : params_(params) {
  if (!(params_.t >= 0)) throw ConfigError("t must be ≥ 0");
  if (!(params_.scale > 0)) throw ConfigError("scale must be > 0");
  if (!(params_.kind_penalty >= 0)) {
    throw ConfigError("kind_penalty must be ≥ 0");
  }
}

double CostModel::SizeDistance(int a, int b) const {
  const double diff = std::abs(a - b);
  if (diff == 0) return 0;
  if (params_.normalization == Normalization::kScaled) {
    return diff / (diff + params_.scale);
  }
  return diff / (static_cast<double>(a) + b);
}

double CostModel::Match(const ObjectLabel& a, const ObjectLabel& b) const {
  if (params_.kind == ModelKind::kUnit) return a == b ? 0.0 : 1.0;
  double cost = 0;
  if (a.node.kind != b.node.kind) cost += params_.kind_penalty;
  if (a.edge.kind != b.edge.kind) cost += params_.kind_penalty;
  cost += SizeDistance(a.node.size, b.node.size);
  cost += SizeDistance(a.edge.size, b.edge.size);
  return std::min(cost, 1.0);
}

double CostModel::Delete(const ObjectLabel& a) const {
  if (params_.kind == ModelKind::kUnit) return 1.0;
  const double s = a.total_size();
  return s / (s + params_.scale);
}

ObjectLabel CostModel::MergeNode(const ObjectLabel& parent,
                                 const ObjectLabel& child) const {
  ObjectLabel out = parent;
  out.node.kind = MergedNodeKind(parent.node.kind, child.node.kind);
  out.node.size = parent.node.size + child.edge.size + child.node.size;
  return out;
}

ObjectLabel CostModel::MergeEdge(const ObjectLabel& parent,
                                 const ObjectLabel& child) const {
  ObjectLabel out = child;
  out.edge.kind = parent.edge.kind.empty() ? child.edge.kind : parent.edge.kind;
  out.edge.size = parent.edge.size + parent.node.size + child.edge.size;
  return out;
}

double CostModel::NodeFusion(const ObjectLabel& /*parent*/,
                             const ObjectLabel& child) const {
  const double raw = Delete(child) + params_.t;
  return params_.cap ? std::min(raw, 1.0) : raw;
}

double CostModel::EdgeFusion(const ObjectLabel& parent,
                             const ObjectLabel& /*child*/,
                             double displaced) const {
  const double raw = Delete(parent) + params_.t;
  return (params_.cap ? std::min(raw, 1.0) : raw) + displaced;
}

CostModel UnitModel(double t) {
  ModelParams p;
  p.kind = ModelKind::kUnit;
  p.t = t;
  return CostModel(p);
}

CostModel StructuralModel(Representation rep, double t) {
  ModelParams p;
  p.kind = ModelKind::kStructural;
  p.rep = rep;
  p.t = t;
  // Rep-B objects are single bases, the coarser encodings carry counts.
  p.scale = rep == Representation::kRepB ? 1.0 : 10.0;
  return CostModel(p);
}

CostModel MakeModel(const ModelParams& params) { return CostModel(params); }

ModelParams ParseModelConfig(std::string_view text) {
  ModelParams p;
  bool scale_set = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = Trim(std::string_view(line).substr(0, eq));
    const std::string value = Trim(std::string_view(line).substr(eq + 1));
    if (key == "model") {
      if (value == "unit") {
        p.kind = ModelKind::kUnit;
      } else if (value == "structural") {
        p.kind = ModelKind::kStructural;
      } else {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": model must be unit or structural");
      }
    } else if (key == "rep") {
      p.rep = ParseRepresentation(value);
    } else if (key == "t") {
      p.t = ParseNumber(key, value);
    } else if (key == "cap") {
      p.cap = ParseBool(key, value);
    } else if (key == "kind_penalty") {
      p.kind_penalty = ParseNumber(key, value);
    } else if (key == "normalization") {
      if (value == "ratio") {
        p.normalization = Normalization::kRatio;
      } else if (value == "scaled") {
        p.normalization = Normalization::kScaled;
      } else {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": normalization must be ratio or scaled");
      }
    } else if (key == "scale") {
      p.scale = ParseNumber(key, value);
      scale_set = true;
    } else {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
  }
  if (!scale_set && p.rep == Representation::kRepB) p.scale = 1.0;
  // Run the constructor checks so bad values surface at load time.
  CostModel check(p);
  return p;
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string FormatModelParams(const ModelParams& p) {
  std::string out;
  out += "model=";
  out += p.kind == ModelKind::kUnit ? "unit" : "structural";
  out += " rep=";
  out += ToString(p.rep);
  out += " t=" + FormatDouble(p.t);
  out += " cap=";
  out += p.cap ? "true" : "false";
  out += " kind_penalty=" + FormatDouble(p.kind_penalty);
  out += " normalization=";
  out += p.normalization == Normalization::kRatio ? "ratio" : "scaled";
  out += " scale=" + FormatDouble(p.scale);
  return out;
}

bool ValidityReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidityCheck& c) { return c.passed; });
}

const ValidityCheck* ValidityReport::Find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string ValidityReport::ToString() const {
  std::string out;
  for (const auto& c : checks) {
    out += (c.passed ? "PASS " : "FAIL ") + c.name;
    if (!c.passed) out += "  witness: " + c.witness;
    out += "\n";
  }
  return out;
}

ValidityReport Validate(const CostModel& m,
                        const std::vector<ObjectLabel>& samples) {
  ValidityReport report;
  // The checks below are held by reference while the vector grows.
  report.checks.reserve(8);
  auto check = [&](const std::string& name) -> ValidityCheck& {
    report.checks.push_back(ValidityCheck{name, true, {}});
    return report.checks.back();
  };
  auto fail = [](ValidityCheck& c, const std::string& witness) {
    if (c.passed) {
      c.passed = false;
      c.witness = witness;
    }
  };
  auto s = [](const ObjectLabel& a) { return rnatreedit::ToString(a); };
  const size_t n = samples.size();

  auto& nonneg = check("non-negativity");
  auto& insdel = check("ins-del-symmetry");
  auto& fusplit = check("fusion-split-symmetry");
  auto& ident = check("match-identity");
  auto& sym = check("match-symmetry");
  auto& tri = check("match-triangle");
  auto& sub_node = check("subadditivity-node-merge");
  auto& sub_edge = check("subadditivity-edge-merge");

  for (size_t i = 0; i < n; ++i) {
    const auto& a = samples[i];
    if (m.Delete(a) < 0 || m.Insert(a) < 0) fail(nonneg, "del/ins of " + s(a));
    if (m.Insert(a) != m.Delete(a)) {
      fail(insdel, "ins(" + s(a) + ")=" + FormatDouble(m.Insert(a)) +
                       " del=" + FormatDouble(m.Delete(a)));
    }
    if (m.Match(a, a) != 0) fail(ident, "match(" + s(a) + "," + s(a) + ") != 0");
    for (size_t j = 0; j < n; ++j) {
      const auto& b = samples[j];
      const double ab = m.Match(a, b);
      if (ab < 0 || m.NodeFusion(a, b) < 0 || m.EdgeFusion(a, b, 0) < 0 ||
          m.NodeSplit(a, b) < 0 || m.EdgeSplit(a, b, 0) < 0) {
        fail(nonneg, "match/fusion over " + s(a) + ", " + s(b));
      }
      if (m.NodeFusion(a, b) != m.NodeSplit(a, b) ||
          m.EdgeFusion(a, b, 0) != m.EdgeSplit(a, b, 0)) {
        fail(fusplit, "fusion != split for " + s(a) + ", " + s(b));
      }
      if (!(a == b) && ab <= 0) {
        fail(ident, "match(" + s(a) + "," + s(b) + ") = 0 for distinct labels");
      }
      if (ab != m.Match(b, a)) {
        fail(sym, "match(" + s(a) + "," + s(b) + ") != match(" + s(b) + "," +
                      s(a) + ")");
      }
      const double merged_node = m.Delete(m.MergeNode(a, b));
      if (m.Delete(a) + m.Delete(b) + kSlack < merged_node) {
        fail(sub_node, "del(" + s(a) + ")+del(" + s(b) + ") < del(" +
                           s(m.MergeNode(a, b)) + ")");
      }
      const double merged_edge = m.Delete(m.MergeEdge(a, b));
      if (m.Delete(a) + m.Delete(b) + kSlack < merged_edge) {
        fail(sub_edge, "del(" + s(a) + ")+del(" + s(b) + ") < del(" +
                           s(m.MergeEdge(a, b)) + ")");
      }
      for (size_t k = 0; k < n; ++k) {
        const auto& c = samples[k];
        if (m.Match(a, c) > ab + m.Match(b, c) + kSlack) {
          fail(tri, "match(" + s(a) + "," + s(c) + ") > match(" + s(a) + "," +
                        s(b) + ") + match(" + s(b) + "," + s(c) + ")");
        }
      }
    }
  }
  return report;
}

std::vector<ObjectLabel> SampleLabels(Representation rep) {
  std::vector<ObjectLabel> out;
  auto add = [&](std::string_view kind, int size, std::string_view edge_kind,
                 int edge_size) {
    out.push_back(ObjectLabel{Label{std::string(kind), size},
                              Label{std::string(edge_kind), edge_size}});
  };
  switch (rep) {
    case Representation::kRepB:
      for (const char* k : {"A", "C", "G", "U", "GC", "AU", "GU"}) add(k, 1, "", 0);
      add(kinds::kRoot, 0, "", 0);
      break;
    case Representation::kRepC:
      for (int size : {1, 2, 3, 5, 8}) {
        add(kinds::kStack, size, "", 0);
        add(kinds::kRun, size, "", 0);
      }
      add(kinds::kRoot, 0, "", 0);
      break;
    case Representation::kRepD:
    case Representation::kRepE:
      for (auto kind : {kinds::kHairpin, kinds::kInternal, kinds::kBulge,
                        kinds::kMultiloop}) {
        for (int size : {0, 2, 5}) {
          for (int helix : {1, 4, 9}) add(kind, size, kinds::kHelix, helix);
        }
      }
      add(kinds::kExterior, 0, "", 0);
      add(kinds::kExterior, 6, "", 0);
      break;
    case Representation::kGeneric:
      for (const char* k : {"a", "b"}) {
        for (int size : {1, 2, 3}) add(k, size, "e", 1);
      }
      add("a", 1, "", 0);
      break;
  }
  return out;
}

}  // namespace rnatreedit
