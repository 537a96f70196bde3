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


#include "json_io.hpp"

#include <stdexcept>

namespace rnatreedit::cli {

std::string LabelText(const ObjectLabel& label) { return ToString(label); }

ObjectLabel ParseLabelText(const std::string& text) {
  const LabeledTree t = ParseTreeText(text);
  if (t.size() != 1) throw std::runtime_error("not a single label: " + text);
  return t.nodes[0].label;
}

Json ToJson(const FusionPath& path) {
  Json out = Json::array();
  for (const auto& step : path) {
    out.push_back({{"kind", step.kind == FusionKind::kNode ? "node" : "edge"},
                   {"node", step.node}});
  }
  return out;
}

FusionPath FusionPathFromJson(const Json& j) {
  FusionPath path;
  for (const auto& s : j) {
    const std::string kind = s.at("kind").get<std::string>();
    if (kind != "node" && kind != "edge") {
      throw std::runtime_error("bad fusion kind '" + kind + "'");
    }
    path.push_back({kind == "node" ? FusionKind::kNode : FusionKind::kEdge,
                    s.at("node").get<int>()});
  }
  return path;
}

Json ToJson(const EditOp& op) {
  Json j;
  j["op"] = ToString(op.kind);
  j["node"] = op.node;
  j["other"] = op.other;
  j["source"] = op.source;
  j["target"] = op.target;
  switch (op.kind) {
    case OpKind::kRelabel:
      j["label"] = LabelText(op.label);
      break;
    case OpKind::kInsert:
      j["label"] = LabelText(op.label);
      j["position"] = op.position;
      j["count"] = op.count;
      break;
    case OpKind::kNodeSplit:
      j["label"] = LabelText(op.label);
      j["other_label"] = LabelText(op.other_label);
      j["position"] = op.position;
      j["count"] = op.count;
      break;
    case OpKind::kEdgeSplit: {
      j["label"] = LabelText(op.label);
      j["other_label"] = LabelText(op.other_label);
      Json before = Json::array(), after = Json::array();
      for (const auto& t : op.before) before.push_back(ToText(t));
      for (const auto& t : op.after) after.push_back(ToText(t));
      j["before"] = before;
      j["after"] = after;
      break;
    }
    default:
      break;
  }
  if (!op.path.empty()) j["path"] = ToJson(op.path);
  j["cost"] = op.cost;
  return j;
}

EditOp EditOpFromJson(const Json& j) {
  EditOp op;
  op.kind = ParseOpKind(j.at("op").get<std::string>());
  op.node = j.at("node").get<int>();
  op.other = j.value("other", 0);
  op.source = j.value("source", 0);
  op.target = j.value("target", 0);
  if (j.contains("label")) op.label = ParseLabelText(j["label"].get<std::string>());
  if (j.contains("other_label")) {
    op.other_label = ParseLabelText(j["other_label"].get<std::string>());
  }
  op.position = j.value("position", 0);
  op.count = j.value("count", 0);
  if (j.contains("before")) {
    for (const auto& t : j["before"]) op.before.push_back(ParseTreeText(t.get<std::string>()));
  }
  if (j.contains("after")) {
    for (const auto& t : j["after"]) op.after.push_back(ParseTreeText(t.get<std::string>()));
  }
  if (j.contains("path")) op.path = FusionPathFromJson(j["path"]);
  op.cost = j.at("cost").get<double>();
  return op;
}

Json ToJson(const EditScript& script) {
  Json out = Json::array();
  for (const auto& op : script.ops) out.push_back(ToJson(op));
  return out;
}

EditScript EditScriptFromJson(const Json& j) {
  EditScript script;
  for (const auto& op : j) script.ops.push_back(EditOpFromJson(op));
  return script;
}

Json ToJson(const Mapping& mapping) {
  Json out = Json::array();
  for (const auto& p : mapping.pairs) {
    out.push_back({{"source", p.source}, {"target", p.target}});
  }
  return out;
}

Mapping MappingFromJson(const Json& j) {
  Mapping m;
  for (const auto& p : j) {
    m.pairs.push_back({p.at("source").get<std::vector<int>>(),
                       p.at("target").get<std::vector<int>>()});
  }
  return m;
}

}  // namespace rnatreedit::cli
