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


#include "cli.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "json_io.hpp"
#include "rnatreedit/error.hpp"
#include "rnatreedit/fusion.hpp"
#include "rnatreedit/generate.hpp"
#include "rnatreedit/multilevel.hpp"
#include "rnatreedit/oracle.hpp"
#include "rnatreedit/zhang_shasha.hpp"

namespace rnatreedit::cli {
namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kTolerance = 1e-9;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

InputFormat Sniff(const std::string& path, const std::string& text) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".ct") return InputFormat::kCt;
  if (ext == ".db" || ext == ".dbn" || ext == ".dot" || ext == ".fa" ||
      ext == ".vienna") {
    return InputFormat::kDotBracket;
  }
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '>') return InputFormat::kDotBracket;
    return std::isdigit(static_cast<unsigned char>(line[first]))
               ? InputFormat::kCt
               : InputFormat::kDotBracket;
  }
  return InputFormat::kDotBracket;
}

// Effective settings shared by the subcommands.
struct RunConfig {
  std::vector<std::string> inputs;
  std::string format = "auto";
  std::string rep = "d";
  std::string model = "structural";
  std::optional<double> t;
  int ell = 1;
  bool no_prune = false;
  std::string emit = "text";
  std::string out_path;
  int jobs = 1;
  std::uint64_t seed = 1;
  bool strict_pairs = false;
  bool classical = false;
};

InputFormat FormatOf(const std::string& name) {
  if (name == "auto") return InputFormat::kAuto;
  if (name == "dotbracket") return InputFormat::kDotBracket;
  if (name == "ct") return InputFormat::kCt;
  throw ConfigError("format must be auto, dotbracket or ct");
}

ParseOptions ParseOptionsOf(const RunConfig& cfg) {
  ParseOptions o;
  if (cfg.strict_pairs) o.pairing = PairingPolicy::kCanonicalOnly;
  return o;
}

CostModel ModelOf(const RunConfig& cfg, Representation rep) {
  ModelParams p;
  if (cfg.model == "unit") {
    p = UnitModel().params();
    p.rep = rep;
  } else if (cfg.model == "structural") {
    p = StructuralModel(rep, 0.1).params();
  } else {
    p = ParseModelConfig(ReadFile(cfg.model));
  }
  if (cfg.t) p.t = *cfg.t;
  return MakeModel(p);
}

FusionParams FusionParamsOf(const RunConfig& cfg) {
  FusionParams p;
  p.ell = cfg.ell;
  p.prune = !cfg.no_prune;
  ValidateFusionParams(p);
  if (p.ell > 2) {
    spdlog::warn("l = {} enumerates many fusion paths per node; expect long runs",
                 p.ell);
  }
  return p;
}

void WarnIfInvalid(const CostModel& model) {
  const ValidityReport report = Validate(model, SampleLabels(model.params().rep));
  for (const auto& c : report.checks) {
    if (!c.passed) spdlog::warn("cost model fails {}: {}", c.name, c.witness);
  }
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("cannot write " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

Json StructureMeta(const SecondaryStructure& s, const std::string& path,
                   const IndexedTree& tree) {
  return Json{{"id", s.id}, {"path", path}, {"length", s.length()},
              {"nodes", tree.size()}};
}

Json Counts(const EditScript& script) {
  Json j;
  for (OpKind k : {OpKind::kDelete, OpKind::kInsert, OpKind::kRelabel,
                   OpKind::kNodeFusion, OpKind::kEdgeFusion, OpKind::kNodeSplit,
                   OpKind::kEdgeSplit}) {
    j[ToString(k)] = script.Count(k);
  }
  return j;
}

std::string CountsLine(const EditScript& script) {
  std::string line;
  const Json counts = Counts(script);
  for (const auto& [k, v] : counts.items()) {
    if (!line.empty()) line += " ";
    line += k + "=" + std::to_string(v.get<int>());
  }
  return line;
}

std::string OpLine(const EditOp& op) {
  std::ostringstream s;
  s << ToString(op.kind) << " node=" << op.node;
  switch (op.kind) {
    case OpKind::kRelabel:
      s << " target=" << op.target << " label=" << ToString(op.label);
      break;
    case OpKind::kInsert:
      s << " new=" << op.other << " label=" << ToString(op.label)
        << " slot=" << op.position << "+" << op.count;
      break;
    case OpKind::kNodeFusion:
    case OpKind::kEdgeFusion:
      s << " child=" << op.other << " path=" << ToString(op.path);
      break;
    case OpKind::kNodeSplit:
    case OpKind::kEdgeSplit:
      s << " new=" << op.other << " path=" << ToString(op.path);
      break;
    case OpKind::kDelete:
      break;
  }
  s << " cost=" << FormatDouble(op.cost);
  return s.str();
}

std::string DotCompare(const IndexedTree& a, const IndexedTree& b,
                       const Mapping& mapping, const std::vector<int>& colors_a,
                       const std::vector<int>& colors_b) {
  auto by_id = [](const IndexedTree& t, const std::vector<int>& colors) {
    std::vector<int> out(t.size(), 0);
    for (int i = 1; i < static_cast<int>(colors.size()); ++i) out[t.node_id(i)] = colors[i];
    return out;
  };
  DotOptions da{"source", "s", by_id(a, colors_a), true};
  DotOptions db{"target", "t", by_id(b, colors_b), true};
  std::string out = "digraph compare {\n";
  out += ToDot(a.tree(), da);
  out += ToDot(b.tree(), db);
  for (const auto& p : mapping.pairs) {
    for (int i : p.source) {
      for (int j : p.target) {
        out += "  s" + std::to_string(a.node_id(i)) + " -> t" +
               std::to_string(b.node_id(j)) +
               " [style=dashed, dir=none, constraint=false, color=gray];\n";
      }
    }
  }
  out += "}\n";
  return out;
}

struct Comparison {
  Json json;
  std::string text;
  std::string dot;
};

Comparison Compare(const RunConfig& cfg, const std::string& path_a,
                   const std::string& path_b) {
  const Representation rep = ParseRepresentation(cfg.rep);
  const CostModel model = ModelOf(cfg, rep);
  const FusionParams params = FusionParamsOf(cfg);
  WarnIfInvalid(model);
  const auto fmt = FormatOf(cfg.format);
  const SecondaryStructure a = ReadStructure(path_a, fmt, ParseOptionsOf(cfg));
  const SecondaryStructure b = ReadStructure(path_b, fmt, ParseOptionsOf(cfg));
  const IndexedTree ta(BuildRepresentation(a, rep));
  const IndexedTree tb(BuildRepresentation(b, rep));

  const auto start = std::chrono::steady_clock::now();
  const ZsResult zs = ZsDistance(ta, tb, model);
  const bool fused = !cfg.classical && params.ell > 0;
  double distance = zs.distance;
  ExtractedScript ex;
  if (fused) {
    const FusionResult fr = FusionDistance(ta, tb, model, params);
    distance = fr.distance;
    ex = ExtractFusionScript(fr, model);
  } else {
    ex = ExtractScript(zs, model);
  }
  const double elapsed = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  spdlog::debug("compared {} and {} in {:.3f} ms", path_a, path_b, elapsed);

  Comparison c;
  Json meta;
  meta["tool"] = "rnatreedit";
  meta["version"] = kVersion;
  meta["mode"] = fused ? "fusion" : "classical";
  meta["rep"] = ToString(rep);
  meta["model"] = FormatModelParams(model.params());
  meta["l"] = fused ? params.ell : 0;
  meta["prune"] = params.prune;
  meta["source"] = StructureMeta(a, path_a, ta);
  meta["target"] = StructureMeta(b, path_b, tb);
  c.json["meta"] = meta;
  c.json["distance"] = distance;
  c.json["classical_distance"] = zs.distance;
  c.json["operations"] = Counts(ex.script);
  c.json["script"] = ToJson(ex.script);
  c.json["mapping"] = ToJson(ex.mapping);

  std::ostringstream text;
  text << "source: " << a.id << " (" << ta.size() << " nodes)\n";
  text << "target: " << b.id << " (" << tb.size() << " nodes)\n";
  text << "distance: " << FormatDouble(distance) << "\n";
  text << "classical_distance: " << FormatDouble(zs.distance) << "\n";
  text << "operations: " << CountsLine(ex.script) << "\n";
  if (ex.script.Count(OpKind::kEdgeFusion) + ex.script.Count(OpKind::kEdgeSplit) > 0) {
    text << "note: script uses edge fusion\n";
  }
  text << "elapsed_ms: " << FormatDouble(std::round(elapsed * 1000) / 1000) << "\n";
  text << "params: " << FormatModelParams(model.params()) << " l=" << (fused ? params.ell : 0)
       << " prune=" << (params.prune ? "on" : "off") << "\n";
  text << "script:\n";
  for (const auto& op : ex.script.ops) text << "  " << OpLine(op) << "\n";
  c.text = text.str();
  c.dot = DotCompare(ta, tb, ex.mapping, {}, {});
  return c;
}

int CmdCompare(const RunConfig& cfg, std::ostream& out) {
  if (cfg.inputs.size() != 2) throw ConfigError("compare needs exactly two inputs");
  Comparison c = Compare(cfg, cfg.inputs[0], cfg.inputs[1]);
  Output o(cfg.out_path, out);
  if (cfg.emit == "json") {
    o.stream() << c.json.dump(2) << "\n";
  } else if (cfg.emit == "dot") {
    o.stream() << c.dot;
  } else {
    o.stream() << c.text;
  }
  return kExitOk;
}

int CmdParse(const RunConfig& cfg, std::ostream& out) {
  if (cfg.inputs.size() != 1) throw ConfigError("parse needs exactly one input");
  const SecondaryStructure s =
      ReadStructure(cfg.inputs[0], FormatOf(cfg.format), ParseOptionsOf(cfg));
  const Representation rep = ParseRepresentation(cfg.rep);
  const LabeledTree tree = BuildRepresentation(s, rep);
  Output o(cfg.out_path, out);
  if (cfg.emit == "json") {
    Json pairs = Json::array();
    for (const auto& [i, j] : s.pairs) pairs.push_back({i + 1, j + 1});
    Json j{{"id", s.id},
           {"sequence", s.sequence},
           {"structure", ToDotBracketLine(s)},
           {"pairs", pairs},
           {"rep", ToString(rep)},
           {"tree", ToText(tree)}};
    o.stream() << j.dump(2) << "\n";
  } else if (cfg.emit == "dot") {
    o.stream() << ToDot(tree);
  } else if (cfg.emit == "ct") {
    o.stream() << ToCt(s);
  } else if (cfg.emit == "dotbracket") {
    o.stream() << ToDotBracket(s);
  } else {
    o.stream() << ToDotBracket(s) << "tree(" << ToString(rep) << "): " << ToText(tree)
               << "\n";
  }
  return kExitOk;
}

int CmdStats(const RunConfig& cfg, std::ostream& out) {
  if (cfg.inputs.size() != 1) throw ConfigError("stats needs exactly one input");
  const SecondaryStructure s =
      ReadStructure(cfg.inputs[0], FormatOf(cfg.format), ParseOptionsOf(cfg));
  FusionParams params;
  params.ell = cfg.ell;
  ValidateFusionParams(params);
  const ElementGraph g = Decompose(s);
  Output o(cfg.out_path, out);
  Json j{{"id", s.id}, {"length", s.length()}, {"pairs", s.pairs.size()},
         {"l", params.ell}};
  j["elements"] = {{"helices", g.CountKind(ElementKind::kHelix)},
                   {"hairpins", g.CountKind(ElementKind::kHairpinLoop)},
                   {"internal_loops", g.CountKind(ElementKind::kInternalLoop)},
                   {"bulges", g.CountKind(ElementKind::kBulge)},
                   {"multiloops", g.CountKind(ElementKind::kMultiloop)}};
  Json reps = Json::object();
  for (Representation rep : {Representation::kRepB, Representation::kRepC,
                             Representation::kRepD, Representation::kRepE}) {
    const IndexedTree t(BuildRepresentation(s, rep));
    const int d = std::max(2, t.max_degree());
    reps[ToString(rep)] = {{"nodes", t.size()},
                           {"leaves", t.leaf_count()},
                           {"height", t.height()},
                           {"max_degree", t.max_degree()},
                           {"path_count_bound", PathCountBound(d, params.ell)}};
  }
  j["representations"] = reps;
  if (cfg.emit == "json") {
    o.stream() << j.dump(2) << "\n";
    return kExitOk;
  }
  o.stream() << "id: " << s.id << "\nlength: " << s.length()
             << "\npairs: " << s.pairs.size() << "\n";
  for (const auto& [k, v] : j["elements"].items()) {
    o.stream() << k << ": " << v.get<int>() << "\n";
  }
  for (const auto& [k, v] : reps.items()) {
    o.stream() << "rep " << k << ": nodes=" << v["nodes"].get<int>()
               << " leaves=" << v["leaves"].get<int>()
               << " height=" << v["height"].get<int>()
               << " max_degree=" << v["max_degree"].get<int>()
               << " path_count_bound(l=" << params.ell
               << ")=" << v["path_count_bound"].get<std::uint64_t>() << "\n";
  }
  return kExitOk;
}

int CmdMultilevel(const RunConfig& cfg, std::ostream& out) {
  if (cfg.inputs.size() != 2) throw ConfigError("multilevel needs exactly two inputs");
  const Representation rep = ParseRepresentation(cfg.rep);
  const CostModel coarse_model = ModelOf(cfg, rep);
  const CostModel fine_model = ModelOf(cfg, Representation::kRepB);
  const FusionParams params = FusionParamsOf(cfg);
  const auto fmt = FormatOf(cfg.format);
  const SecondaryStructure a = ReadStructure(cfg.inputs[0], fmt, ParseOptionsOf(cfg));
  const SecondaryStructure b = ReadStructure(cfg.inputs[1], fmt, ParseOptionsOf(cfg));
  const MultilevelResult r = RunMultilevel(a, b, rep, coarse_model, fine_model, params);
  const double unrestricted =
      ZsDistance(*r.fine.source, *r.fine.target, fine_model).distance;

  Output o(cfg.out_path, out);
  if (cfg.emit == "json") {
    Json j;
    j["meta"] = {{"tool", "rnatreedit"},
                 {"version", kVersion},
                 {"mode", "multilevel"},
                 {"rep", ToString(rep)},
                 {"model", FormatModelParams(coarse_model.params())},
                 {"fine_model", FormatModelParams(fine_model.params())},
                 {"l", params.ell},
                 {"prune", params.prune},
                 {"source", StructureMeta(a, cfg.inputs[0], *r.fine.source)},
                 {"target", StructureMeta(b, cfg.inputs[1], *r.fine.target)}};
    j["distance"] = r.fine.distance;
    j["unrestricted_distance"] = unrestricted;
    j["coarse"] = {{"distance", r.coarse.distance},
                   {"script", ToJson(r.coarse.extracted.script)},
                   {"mapping", ToJson(r.coarse.extracted.mapping)}};
    j["operations"] = Counts(r.fine.extracted.script);
    j["script"] = ToJson(r.fine.extracted.script);
    j["mapping"] = ToJson(r.fine.extracted.mapping);
    auto tail = [](const std::vector<int>& v) {
      return std::vector<int>(v.begin() + (v.empty() ? 0 : 1), v.end());
    };
    j["colors"] = {{"count", r.coarse.colors.count},
                   {"coarse_source", tail(r.coarse.colors.source)},
                   {"coarse_target", tail(r.coarse.colors.target)},
                   {"source", tail(r.source_colored.colors)},
                   {"target", tail(r.target_colored.colors)}};
    o.stream() << j.dump(2) << "\n";
  } else if (cfg.emit == "dot") {
    o.stream() << DotCompare(*r.fine.source, *r.fine.target, r.fine.extracted.mapping,
                             r.source_colored.colors, r.target_colored.colors);
  } else {
    o.stream() << "coarse_distance: " << FormatDouble(r.coarse.distance) << "\n"
               << "colors: " << r.coarse.colors.count << "\n"
               << "distance: " << FormatDouble(r.fine.distance) << "\n"
               << "unrestricted_distance: " << FormatDouble(unrestricted) << "\n"
               << "operations: " << CountsLine(r.fine.extracted.script) << "\n";
  }
  return kExitOk;
}

int CmdValidateModel(const RunConfig& cfg, std::ostream& out) {
  const Representation rep = ParseRepresentation(cfg.rep);
  const CostModel model = ModelOf(cfg, rep);
  const ValidityReport report = Validate(model, SampleLabels(rep));
  Output o(cfg.out_path, out);
  o.stream() << "params: " << FormatModelParams(model.params()) << "\n"
             << report.ToString();
  return report.ok() ? kExitOk : kExitMismatch;
}

int CmdReplay(const RunConfig& cfg, std::ostream& out) {
  if (cfg.inputs.size() != 1) throw ConfigError("replay needs one JSON report");
  const Json j = Json::parse(ReadFile(cfg.inputs[0]));
  const Json& meta = j.at("meta");
  const Representation rep = ParseRepresentation(meta.at("rep").get<std::string>());
  std::string config = meta.at("model").get<std::string>();
  std::replace(config.begin(), config.end(), ' ', '\n');
  const CostModel model = MakeModel(ParseModelConfig(config));
  const auto fmt = FormatOf(cfg.format);
  const std::string pa = meta.at("source").at("path").get<std::string>();
  const std::string pb = meta.at("target").at("path").get<std::string>();
  const SecondaryStructure a = ReadStructure(pa, fmt, ParseOptionsOf(cfg));
  const SecondaryStructure b = ReadStructure(pb, fmt, ParseOptionsOf(cfg));
  const LabeledTree ta = BuildRepresentation(a, rep);
  const LabeledTree tb = BuildRepresentation(b, rep);
  const EditScript script = EditScriptFromJson(j.at("script"));
  const Mapping mapping = MappingFromJson(j.at("mapping"));
  const ReplayResult r = Replay(ta, script, model);
  const double reported = j.at("distance").get<double>();
  const bool iso = Isomorphic(r.tree, tb);
  const bool cost_ok = std::abs(r.cost - reported) <= kTolerance;
  const bool map_ok = IsValidMapping(IndexedTree(ta), IndexedTree(tb), mapping);
  out << "isomorphic: " << (iso ? "yes" : "no") << "\n"
      << "replayed_cost: " << FormatDouble(r.cost) << "\n"
      << "reported_distance: " << FormatDouble(reported) << "\n"
      << "mapping_valid: " << (map_ok ? "yes" : "no") << "\n";
  return iso && cost_ok && map_ok ? kExitOk : kExitMismatch;
}

int CmdBatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.inputs.size() != 1) throw ConfigError("batch needs one pair list");
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
  const std::string list = ReadFile(cfg.inputs[0]);
  const auto base = std::filesystem::path(cfg.inputs[0]).parent_path();
  std::vector<std::pair<std::string, std::string>> pairs;
  std::istringstream in(list);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string x, y, extra;
    if (!(fields >> x)) continue;
    if (!(fields >> y) || (fields >> extra)) {
      throw InputError(cfg.inputs[0] + ":" + std::to_string(line_no) +
                       ": expected two paths");
    }
    auto resolve = [&](const std::string& p) {
      const std::filesystem::path path(p);
      return path.is_absolute() ? p : (base / path).string();
    };
    pairs.emplace_back(resolve(x), resolve(y));
  }
  std::vector<Comparison> results(pairs.size());
  std::vector<std::string> errors(pairs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next++; k < pairs.size(); k = next++) {
      try {
        results[k] = Compare(cfg, pairs[k].first, pairs[k].second);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  std::vector<std::thread> threads;
  const int n = std::min<int>(cfg.jobs, std::max<size_t>(pairs.size(), 1));
  for (int k = 0; k < n; ++k) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  Output o(cfg.out_path, out);
  int code = kExitOk;
  for (size_t k = 0; k < pairs.size(); ++k) {
    if (!errors[k].empty()) {
      spdlog::error("{} vs {}: {}", pairs[k].first, pairs[k].second, errors[k]);
      code = kExitParse;
      if (cfg.emit == "json") {
        o.stream() << Json{{"source", pairs[k].first}, {"target", pairs[k].second},
                           {"error", errors[k]}}.dump()
                   << "\n";
      }
      continue;
    }
    if (cfg.emit == "json") {
      o.stream() << results[k].json.dump() << "\n";
    } else {
      o.stream() << pairs[k].first << "\t" << pairs[k].second << "\t"
                 << FormatDouble(results[k].json["distance"].get<double>()) << "\n";
    }
  }
  return code;
}

void SetupLogging() {
  static bool done = false;
  if (done) return;
  done = true;
  auto logger = spdlog::stderr_color_mt("rnatreedit");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%l: %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("RNATREEDIT_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

}  // namespace

SecondaryStructure ReadStructure(const std::string& path, InputFormat format,
                                 const ParseOptions& options) {
  const std::string text = ReadFile(path);
  if (format == InputFormat::kAuto) format = Sniff(path, text);
  try {
    return format == InputFormat::kCt ? ParseCt(text, options)
                                      : ParseDotBracket(text, options);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

int RunVerify(const VerifyOptions& options, const CostModel& model,
              std::ostream& out) {
  if (options.max_nodes > kOracleMaxNodes || options.exhaustive_nodes > kOracleMaxNodes) {
    throw BudgetExceeded("--max-nodes is limited to " + std::to_string(kOracleMaxNodes) +
                         " (exhaustive oracle budget)");
  }
  if (options.max_nodes < 1 || options.exhaustive_nodes < 1 || options.samples < 0) {
    throw ConfigError("node limits must be >= 1 and samples >= 0");
  }
  FusionParams params;
  params.ell = options.ell;
  params.prune = options.prune;
  ValidateFusionParams(params);
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
    all_ok = all_ok && ok;
  };
  auto dump = [&](const LabeledTree& a, const LabeledTree& b, double dp,
                  double oracle) {
    return "counterexample source=" + ToText(a) + " target=" + ToText(b) +
           " dp=" + FormatDouble(dp) + " oracle=" + FormatDouble(oracle) +
           " model: " + FormatModelParams(model.params());
  };

  const ValidityReport validity = Validate(model, SampleLabels(model.params().rep));
  for (const auto& c : validity.checks) {
    report("model " + c.name, c.passed, c.passed ? "ok" : "witness " + c.witness);
  }

  const std::vector<std::string> alphabet{"a", "b"};
  const auto trees = AllTrees(options.exhaustive_nodes, alphabet);
  std::vector<IndexedTree> indexed(trees.begin(), trees.end());
  FusionOracle fusion_oracle({model}, params.ell, false);
  {
    std::string failure;
    long pairs = 0;
    for (size_t i = 0; i < trees.size() && failure.empty(); ++i) {
      for (size_t j = 0; j < trees.size() && failure.empty(); ++j) {
        ++pairs;
        const double zs = ZsDistance(indexed[i], indexed[j], model).distance;
        const double oracle = MappingOracle(trees[i], trees[j], model);
        if (std::abs(zs - oracle) > kTolerance) failure = dump(trees[i], trees[j], zs, oracle);
      }
    }
    report("classical vs mapping oracle, exhaustive <= " +
               std::to_string(options.exhaustive_nodes) + " nodes",
           failure.empty(), failure.empty() ? std::to_string(pairs) + " pairs" : failure);
  }
  {
    std::string failure;
    long pairs = 0;
    for (size_t i = 0; i < trees.size() && failure.empty(); ++i) {
      for (size_t j = 0; j < trees.size() && failure.empty(); ++j) {
        ++pairs;
        const double dp = FusionDistance(indexed[i], indexed[j], model, params).distance;
        const double oracle = fusion_oracle.Distances(trees[i], trees[j])[0][params.ell];
        if (std::abs(dp - oracle) > kTolerance) failure = dump(trees[i], trees[j], dp, oracle);
      }
    }
    report("fusion vs script-search oracle, exhaustive <= " +
               std::to_string(options.exhaustive_nodes) + " nodes, l=" +
               std::to_string(params.ell),
           failure.empty(), failure.empty() ? std::to_string(pairs) + " pairs" : failure);
  }

  Rng rng(options.seed);
  std::uniform_int_distribution<int> size(1, options.max_nodes);
  auto random_tree = [&] { return RandomTree(rng, size(rng), 3, alphabet); };
  {
    std::string failure;
    for (int k = 0; k < options.samples && failure.empty(); ++k) {
      const LabeledTree a = random_tree(), b = random_tree();
      const IndexedTree ia(a), ib(b);
      const double zs = ZsDistance(ia, ib, model).distance;
      const double mo = MappingOracle(a, b, model);
      if (std::abs(zs - mo) > kTolerance) {
        failure = dump(a, b, zs, mo);
        break;
      }
      const double dp = FusionDistance(ia, ib, model, params).distance;
      const double so = fusion_oracle.Distances(a, b)[0][params.ell];
      if (std::abs(dp - so) > kTolerance) failure = dump(a, b, dp, so);
    }
    report("oracles on random pairs <= " + std::to_string(options.max_nodes) + " nodes",
           failure.empty(),
           failure.empty() ? std::to_string(options.samples) + " pairs" : failure);
  }
  {
    std::string failure;
    for (int k = 0; k < options.samples && failure.empty(); ++k) {
      const LabeledTree a = random_tree(), b = random_tree(), c = random_tree();
      const IndexedTree ia(a), ib(b), ic(c);
      auto d = [&](const IndexedTree& x, const IndexedTree& y) {
        return FusionDistance(x, y, model, params).distance;
      };
      const double ab = d(ia, ib), ba = d(ib, ia), bc = d(ib, ic), ac = d(ia, ic);
      const double aa = d(ia, ia);
      if (ab < 0) failure = "negative distance source=" + ToText(a) + " target=" + ToText(b);
      else if (aa != 0) failure = "d(T,T) = " + FormatDouble(aa) + " for T=" + ToText(a);
      else if (std::abs(ab - ba) > kTolerance)
        failure = "asymmetric: d(T,T')=" + FormatDouble(ab) + " d(T',T)=" +
                  FormatDouble(ba) + " source=" + ToText(a) + " target=" + ToText(b);
      else if (ac > ab + bc + kTolerance)
        failure = "triangle violated for " + ToText(a) + " " + ToText(b) + " " + ToText(c);
      else if (ab == 0 && !Isomorphic(a, b))
        failure = "zero distance between distinct trees " + ToText(a) + " " + ToText(b);
    }
    report("metric axioms on random triples", failure.empty(),
           failure.empty() ? std::to_string(options.samples) + " triples" : failure);
  }
  return all_ok ? kExitOk : kExitMismatch;
}

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  SetupLogging();
  CLI::App app{"Compare RNA secondary structures by tree edit distance with "
               "node and edge fusion."};
  app.name("rnatreedit");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  RunConfig cfg;
  VerifyOptions verify;
  std::string out_format_default;

  auto add_common = [&](CLI::App* sub, bool structures) {
    if (structures) {
      sub->add_option("--format", cfg.format, "Input format")
          ->check(CLI::IsMember({"auto", "dotbracket", "ct"}));
      sub->add_flag("--strict-pairs", cfg.strict_pairs,
                    "Accept only Watson-Crick pairs (no G-U wobble)");
    }
    sub->add_option("--rep", cfg.rep, "Tree encoding: b, c, d or e");
    sub->add_option("--model", cfg.model,
                    "unit, structural, or a key=value configuration file");
    sub->add_option("--t", cfg.t, "Fusion premium t (>= 0)");
    sub->add_option("--l", cfg.ell, "Maximum consecutive fusions per node");
    sub->add_flag("--no-prune", cfg.no_prune,
                  "Allow an edge fusion right after a node fusion");
    sub->add_option("--out", cfg.out_path, "Write the report to a file");
    sub->add_option("--emit", cfg.emit, "Report format")
        ->check(CLI::IsMember({"text", "json", "dot", "ct", "dotbracket"}));
  };

  auto* parse = app.add_subcommand("parse", "Parse a structure and print its tree");
  parse->add_option("input", cfg.inputs, "Structure file")->required()->expected(1);
  add_common(parse, true);

  auto* compare = app.add_subcommand("compare", "Distance, script and mapping");
  compare->add_option("inputs", cfg.inputs, "Two structure files")->required()->expected(2);
  compare->add_flag("--classical", cfg.classical, "Disable fusion operations");
  add_common(compare, true);

  auto* stats = app.add_subcommand("stats", "Tree sizes for every encoding");
  stats->add_option("input", cfg.inputs, "Structure file")->required()->expected(1);
  add_common(stats, true);

  auto* multilevel = app.add_subcommand(
      "multilevel", "Coarse comparison with fusions, then color-restricted Rep-B");
  multilevel->add_option("inputs", cfg.inputs, "Two structure files")
      ->required()
      ->expected(2);
  add_common(multilevel, true);

  auto* validate = app.add_subcommand("validate-model", "Check the distance conditions");
  add_common(validate, false);

  auto* verify_cmd = app.add_subcommand("verify", "Cross-check against the oracles");
  add_common(verify_cmd, false);
  verify_cmd->add_option("--max-nodes", verify.max_nodes, "Largest sampled tree (<= 8)");
  verify_cmd->add_option("--exhaustive-nodes", verify.exhaustive_nodes,
                         "Largest tree in the exhaustive checks");
  verify_cmd->add_option("--samples", verify.samples, "Random pairs and triples");
  verify_cmd->add_option("--seed", cfg.seed, "Random seed");

  auto* replay = app.add_subcommand("replay", "Replay the script of a JSON report");
  replay->add_option("report", cfg.inputs, "JSON report from compare")
      ->required()
      ->expected(1);
  add_common(replay, true);

  auto* batch = app.add_subcommand("batch", "Compare every pair listed in a file");
  batch->add_option("pairs", cfg.inputs, "File with two paths per line")
      ->required()
      ->expected(1);
  batch->add_option("--jobs", cfg.jobs, "Worker threads");
  batch->add_flag("--classical", cfg.classical, "Disable fusion operations");
  add_common(batch, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (cfg.t && *cfg.t < 0) throw ConfigError("t must be ≥ 0");
    if (*parse) return CmdParse(cfg, out);
    if (*compare) return CmdCompare(cfg, out);
    if (*stats) return CmdStats(cfg, out);
    if (*multilevel) {
      if (cfg.rep == "d" && !multilevel->count("--rep")) cfg.rep = "c";
      return CmdMultilevel(cfg, out);
    }
    if (*validate) return CmdValidateModel(cfg, out);
    if (*replay) return CmdReplay(cfg, out);
    if (*batch) return CmdBatch(cfg, out);
    if (*verify_cmd) {
      verify.seed = cfg.seed;
      verify.ell = cfg.ell;
      verify.prune = !cfg.no_prune;
      const CostModel model = ModelOf(cfg, Representation::kGeneric);
      Output o(cfg.out_path, out);
      return RunVerify(verify, model, o.stream());
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON report: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace rnatreedit::cli
