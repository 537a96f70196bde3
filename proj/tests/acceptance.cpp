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


// Acceptance run: one PASS/FAIL line per criterion. Exit status is 0 only
// when every criterion passes.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rnatreedit/error.hpp"
#include "rnatreedit/fusion.hpp"
#include "rnatreedit/generate.hpp"
#include "rnatreedit/multilevel.hpp"
#include "rnatreedit/oracle.hpp"
#include "rnatreedit/zhang_shasha.hpp"

namespace rnatreedit {
namespace {

namespace fs = std::filesystem;

// Largest deviation accepted where two independent computations sum the
// same costs in a different order.
constexpr double kExact = 1e-9;

constexpr char kHelixA[] = "E:0(H:3[helix:13])";
constexpr char kHelixB[] = "E:0(I:2[helix:7](H:3[helix:5]))";
constexpr char kBulgeA[] = "E:0(B:2[helix:4](I:2[helix:1](H:3[helix:4])))";
constexpr char kBulgeB[] = "E:0(I:5[helix:4](H:3[helix:4]))";

const std::vector<std::string> kAlphabet{"a", "b"};

class Clock {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Verdict {
  bool ok = true;
  std::string detail;
  std::string failure;

  void Fail(const std::string& what) {
    if (ok) failure = what;
    ok = false;
  }
};

int failures = 0;

void Report(int id, const std::string& name, const Verdict& v, double seconds) {
  char time[32];
  std::snprintf(time, sizeof(time), "%.1f s", seconds);
  std::printf("[%s] %d %s: %s (%s)%s%s\n", v.ok ? "PASS" : "FAIL", id, name.c_str(),
              v.detail.c_str(), time, v.ok ? "" : " first failure: ",
              v.failure.c_str());
  std::fflush(stdout);
  if (!v.ok) ++failures;
}

std::string Fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

std::string Pair(const LabeledTree& a, const LabeledTree& b) {
  return ToText(a) + " vs " + ToText(b);
}

CostModel Structural(double t) { return StructuralModel(Representation::kGeneric, t); }

bool UsesEdgeFusion(const EditScript& s) {
  return s.Count(OpKind::kEdgeFusion) + s.Count(OpKind::kEdgeSplit) > 0;
}

// 1: classical distance against the mapping oracle.
void ClassicalOracle() {
  Clock clock;
  Verdict v;
  const auto trees = AllTrees(5, kAlphabet);
  const std::vector<IndexedTree> idx(trees.begin(), trees.end());
  const std::vector<CostModel> models{UnitModel(), Structural(0.1)};
  long pairs = 0;
  double worst = 0;
  for (const CostModel& m : models) {
    for (size_t a = 0; a < trees.size(); ++a) {
      for (size_t b = 0; b < trees.size(); ++b) {
        const double dp = ZsDistance(idx[a], idx[b], m).distance;
        const double oracle = MappingOracle(trees[a], trees[b], m);
        worst = std::max(worst, std::abs(dp - oracle));
        if (std::abs(dp - oracle) > kExact) {
          v.Fail(Pair(trees[a], trees[b]) + " dp=" + Fmt(dp) + " oracle=" + Fmt(oracle));
        }
        ++pairs;
      }
    }
  }
  Rng rng(101);
  std::uniform_int_distribution<int> size(1, kOracleMaxNodes);
  for (int k = 0; k < 200; ++k) {
    const CostModel& m = models[k % 2];
    const LabeledTree a = RandomTree(rng, size(rng), 4, kAlphabet);
    const LabeledTree b = RandomTree(rng, size(rng), 4, kAlphabet);
    const double dp = ZsDistance(IndexedTree(a), IndexedTree(b), m).distance;
    const double oracle = MappingOracle(a, b, m);
    worst = std::max(worst, std::abs(dp - oracle));
    if (std::abs(dp - oracle) > kExact) {
      v.Fail(Pair(a, b) + " dp=" + Fmt(dp) + " oracle=" + Fmt(oracle));
    }
  }
  v.detail = std::to_string(pairs) + " exhaustive pairs (<=5 nodes, unit and structural) + "
             "200 random <=8-node pairs, max |dp-oracle| = " + Fmt(worst);
  Report(1, "classical distance equals mapping oracle", v, clock.Seconds());
}

// 2 and 5: fusion distance against the script-search oracle, pruned against
// unpruned, on the same exhaustive suite.
// Returns the pruning verdict, reported in order by the caller.
Verdict FusionOracleAndPruning() {
  Clock clock;
  Verdict oracle_v, prune_v;
  const auto trees = AllTrees(5, kAlphabet);
  const std::vector<IndexedTree> idx(trees.begin(), trees.end());
  const std::vector<double> ts{0.0, 0.05, 0.2};
  std::vector<CostModel> models;
  for (double t : ts) models.push_back(Structural(t));
  FusionOracle oracle(models, 2, false);
  long comparisons = 0, prune_comparisons = 0;
  double worst = 0;
  for (size_t a = 0; a < trees.size(); ++a) {
    for (size_t b = 0; b < trees.size(); ++b) {
      const auto expected = oracle.Distances(trees[a], trees[b]);
      for (size_t k = 0; k < models.size(); ++k) {
        for (int ell = 1; ell <= 2; ++ell) {
          const double unpruned =
              FusionDistance(idx[a], idx[b], models[k], {ell, false}).distance;
          const double pruned =
              FusionDistance(idx[a], idx[b], models[k], {ell, true}).distance;
          const double diff = std::abs(unpruned - expected[k][ell]);
          worst = std::max(worst, diff);
          if (diff > kExact) {
            oracle_v.Fail(Pair(trees[a], trees[b]) + " t=" + Fmt(ts[k]) +
                          " l=" + std::to_string(ell) + " dp=" + Fmt(unpruned) +
                          " oracle=" + Fmt(expected[k][ell]));
          }
          if (pruned != unpruned) {
            prune_v.Fail(Pair(trees[a], trees[b]) + " t=" + Fmt(ts[k]) + " l=" +
                         std::to_string(ell));
          }
          ++comparisons;
          ++prune_comparisons;
        }
      }
    }
  }
  oracle_v.detail = std::to_string(comparisons) +
                    " comparisons (<=5 nodes, l in {1,2}, t in {0,0.05,0.2}), "
                    "max |dp-oracle| = " + Fmt(worst);
  prune_v.detail = std::to_string(prune_comparisons) +
                   " comparisons on the criterion-2 suite, pruned and unpruned bitwise equal";
  Report(2, "fusion distance equals script-search oracle", oracle_v, clock.Seconds());
  return prune_v;
}

// 3: metric axioms of the fusion distance.
void MetricAxioms() {
  Clock clock;
  Verdict v;
  Rng rng(303);
  std::uniform_int_distribution<int> size(1, 12);
  const std::vector<std::string> alphabet{"a", "b", "c"};
  auto tree = [&] { return RandomTree(rng, size(rng), 3, alphabet); };
  long checks = 0;
  for (const CostModel& m : {UnitModel(0.1), Structural(0.1)}) {
    for (int ell = 1; ell <= 2; ++ell) {
      const FusionParams params{ell, true};
      auto d = [&](const IndexedTree& x, const IndexedTree& y) {
        return FusionDistance(x, y, m, params).distance;
      };
      for (int k = 0; k < 200; ++k) {
        const LabeledTree a = tree(), b = tree();
        const IndexedTree ia(a), ib(b);
        const double ab = d(ia, ib), ba = d(ib, ia);
        if (ab < 0) v.Fail("negative: " + Pair(a, b));
        if (ab != ba) v.Fail("asymmetric: " + Pair(a, b) + " " + Fmt(ab) + " vs " + Fmt(ba));
        if (d(ia, ia) != 0) v.Fail("d(T,T) != 0 for " + ToText(a));
        if ((ab == 0) != Isomorphic(a, b)) v.Fail("indiscernibles: " + Pair(a, b));
        ++checks;
      }
      for (int k = 0; k < 200; ++k) {
        const IndexedTree a(tree()), b(tree()), c(tree());
        const double ac = d(a, c), ab = d(a, b), bc = d(b, c);
        if (ac > ab + bc + kExact) {
          v.Fail("triangle: " + ToText(a.tree()) + ", " + ToText(b.tree()) + ", " +
                 ToText(c.tree()));
        }
        ++checks;
      }
    }
  }
  v.detail = std::to_string(checks) +
             " pairs/triples over unit and structural models, l in {1,2}";
  Report(3, "metric axioms", v, clock.Seconds());
}

// 4: l = 0 reduces to the classical distance; fusions never hurt and help
// strictly on the two fixtures.
void ReductionAndDominance() {
  Clock clock;
  Verdict v;
  Rng rng(404);
  std::uniform_int_distribution<int> size(1, 25);
  const CostModel m = Structural(0.05);
  for (int k = 0; k < 500; ++k) {
    const LabeledTree a = RandomTree(rng, size(rng), 4, kAlphabet);
    const LabeledTree b = RandomTree(rng, size(rng), 4, kAlphabet);
    const IndexedTree ia(a), ib(b);
    const double zs = ZsDistance(ia, ib, m).distance;
    if (FusionDistance(ia, ib, m, {0, true}).distance != zs) v.Fail("l=0: " + Pair(a, b));
    for (int ell = 1; ell <= 2; ++ell) {
      if (FusionDistance(ia, ib, m, {ell, true}).distance > zs) {
        v.Fail("dominance l=" + std::to_string(ell) + ": " + Pair(a, b));
      }
    }
  }
  std::string fixtures;
  for (auto [sa, sb] : {std::pair{kHelixA, kHelixB}, std::pair{kBulgeA, kBulgeB}}) {
    const IndexedTree a(ParseTreeText(sa)), b(ParseTreeText(sb));
    const CostModel rna = StructuralModel(Representation::kRepD, 0.05);
    const double zs = ZsDistance(a, b, rna).distance;
    for (int ell = 1; ell <= 2; ++ell) {
      const double fused = FusionDistance(a, b, rna, {ell, true}).distance;
      if (!(fused < zs)) v.Fail("not strict on " + std::string(sa));
      if (ell == 1) fixtures += " " + Fmt(fused) + " < " + Fmt(zs) + ";";
    }
  }
  v.detail = "500 random pairs bitwise at l=0, dominance at l=1,2; fixtures (t=0.05):" +
             fixtures;
  Report(4, "reduction and dominance", v, clock.Seconds());
}

// 6: the helix-split fixture switches from an edge fusion to none at t*.
void ThresholdInT() {
  Clock clock;
  Verdict v;
  const IndexedTree a(ParseTreeText(kHelixA)), b(ParseTreeText(kHelixB));
  std::vector<bool> edge;
  std::vector<double> ts, dist;
  for (int k = 0; k < 20; ++k) {
    const double t = 0.05 * k;
    const CostModel m = StructuralModel(Representation::kRepD, t);
    const FusionResult r = FusionDistance(a, b, m, {1, true});
    ts.push_back(t);
    dist.push_back(r.distance);
    edge.push_back(UsesEdgeFusion(ExtractFusionScript(r, m).script));
  }
  int switch_at = 0;
  while (switch_at < 20 && edge[switch_at]) ++switch_at;
  const bool threshold = switch_at > 0 && switch_at < 20 &&
                         std::none_of(edge.begin() + switch_at, edge.end(),
                                      [](bool e) { return e; });
  if (!threshold) v.Fail("no single switch from edge fusion to none");
  for (int k = 1; k < 20; ++k) {
    if (dist[k] < dist[k - 1]) v.Fail("distance decreases at t=" + Fmt(ts[k]));
  }
  if (threshold) {
    v.detail = "edge fusion for t <= " + Fmt(ts[switch_at - 1]) + ", none for t >= " +
               Fmt(ts[switch_at]) + "; distance " + Fmt(dist.front()) + " -> " +
               Fmt(dist.back()) + " non-decreasing over 20 points";
  }
  Report(6, "threshold t* on the helix-split fixture", v, clock.Seconds());
}

long PeakRssKb() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss;
}

// 7: time and memory envelope.
void Performance() {
  Clock clock;
  Verdict v;
  Rng rng(707);
  const CostModel m = Structural(0.05);
  auto time_one = [&](int nodes, int ell) {
    const IndexedTree a(RandomTree(rng, nodes, 4, kAlphabet));
    const IndexedTree b(RandomTree(rng, nodes, 4, kAlphabet));
    Clock c;
    FusionDistance(a, b, m, {ell, true});
    return c.Seconds();
  };
  double worst1 = 0, worst2 = 0;
  for (int k = 0; k < 3; ++k) worst1 = std::max(worst1, time_one(80, 1));
  for (int k = 0; k < 3; ++k) worst2 = std::max(worst2, time_one(40, 2));
  const double rss_mb = PeakRssKb() / 1024.0;
  if (worst1 >= 2) v.Fail("l=1 at 80 nodes took " + Fmt(worst1) + " s");
  if (worst2 >= 60) v.Fail("l=2 at 40 nodes took " + Fmt(worst2) + " s");
  if (rss_mb >= 1024) v.Fail("peak RSS " + Fmt(rss_mb) + " MB");
  v.detail = "l=1, 80 nodes: " + Fmt(worst1) + " s; l=2, 40 nodes: " + Fmt(worst2) +
             " s; peak RSS " + Fmt(std::round(rss_mb)) + " MB";
  Report(7, "performance envelope", v, clock.Seconds());
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CorpusEntry {
  std::string name;
  SecondaryStructure from_db;
  SecondaryStructure from_ct;
};

std::vector<CorpusEntry> LoadCorpus() {
  std::vector<CorpusEntry> out;
  const fs::path dir = fs::path(RNATREEDIT_TEST_DATA) / "corpus";
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".db") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& db : files) {
    fs::path ct = db;
    ct.replace_extension(".ct");
    out.push_back({db.stem().string(), ParseDotBracket(ReadFile(db)), ParseCt(ReadFile(ct))});
  }
  return out;
}

// 8: every corpus comparison replays to its target at the reported cost.
void ScriptReplay(const std::vector<CorpusEntry>& corpus) {
  Clock clock;
  Verdict v;
  long runs = 0;
  double worst = 0;
  struct Setting {
    Representation rep;
    int ell;
  };
  for (const Setting s : {Setting{Representation::kRepD, 1}, Setting{Representation::kRepC, 1}}) {
    const CostModel m = StructuralModel(s.rep, 0.05);
    std::vector<LabeledTree> trees;
    for (const auto& c : corpus) trees.push_back(BuildRepresentation(c.from_db, s.rep));
    for (size_t a = 0; a < trees.size(); ++a) {
      const IndexedTree ia(trees[a]);
      for (size_t b = 0; b < trees.size(); ++b) {
        if (s.rep == Representation::kRepC && (a + b) % 4 != 0) continue;
        const IndexedTree ib(trees[b]);
        const FusionResult r = FusionDistance(ia, ib, m, {s.ell, true});
        const ExtractedScript ex = ExtractFusionScript(r, m);
        const ReplayResult replay = Replay(trees[a], ex.script, m);
        const double diff = std::abs(replay.cost - r.distance);
        worst = std::max(worst, diff);
        if (!Isomorphic(replay.tree, trees[b]) || diff > kExact) {
          v.Fail(corpus[a].name + " vs " + corpus[b].name + " (" + ToString(s.rep) + ")");
        }
        ++runs;
      }
    }
  }
  if (runs < 1000) v.Fail("only " + std::to_string(runs) + " runs");
  v.detail = std::to_string(runs) + " compare runs (Rep-D and Rep-C, l=1), max |replay-dp| = " +
             Fmt(worst);
  Report(8, "script replay", v, clock.Seconds());
}

// 9: the fine pass keeps matches inside coarse colors.
void MultilevelRestriction() {
  Clock clock;
  Verdict v;
  // Two arms. The first hairpin of the target has grown an inner stem-loop
  // where the source has one long loop; the second arm is conserved. An
  // unrestricted base-level alignment scatters source loop bases into the
  // new inner hairpin.
  const std::string db_a = "..((((((..............))))))..((((....))))..";
  const std::string db_b = "..((((((....((((....))))....))))))..((((....))))..";
  constexpr int kLoopA = 8;   // first base of the source's long loop
  constexpr int kLoopB = 16;  // first base of the target's inner hairpin loop
  auto make = [](const std::string& db, const std::string& id) {
    std::string seq;
    int k = 0;
    for (char c : db) seq += c == '(' ? 'G' : c == ')' ? 'C' : "AUCG"[k++ % 4];
    auto s = ParseDotBracket(seq + "\n" + db);
    s.id = id;
    return s;
  };
  const SecondaryStructure a = make(db_a, "source");
  const SecondaryStructure b = make(db_b, "target");
  const CostModel fine = StructuralModel(Representation::kRepB, 0.05);
  const MultilevelResult r = RunMultilevel(a, b, Representation::kRepC,
                                           StructuralModel(Representation::kRepC, 0.05),
                                           fine, {1, true});
  const IndexedTree ua(BuildRepB(a)), ub(BuildRepB(b));
  const double unrestricted = ZsDistance(ua, ub, fine).distance;

  auto hairpin_with = [](const SecondaryStructure& s, int base) {
    for (const auto& e : Decompose(s).elements) {
      if (e.kind != ElementKind::kHairpinLoop) continue;
      std::set<int> bases;
      for (const auto& range : e.ranges) {
        for (int i = range.first; i <= range.last; ++i) bases.insert(i);
      }
      if (bases.count(base)) return bases;
    }
    return std::set<int>{};
  };
  const std::set<int> loop_a = hairpin_with(a, kLoopA);
  const std::set<int> loop_b = hairpin_with(b, kLoopB);
  if (loop_a.empty() || loop_b.empty()) v.Fail("fixture has no divergent hairpins");

  int cross = 0, shared = 0;
  for (const MappedPair& p : r.fine.extracted.mapping.pairs) {
    const int i = p.source.front(), j = p.target.front();
    if (r.source_colored.colors[i] != r.target_colored.colors[j]) ++cross;
    const auto& na = r.fine.source->tree().nodes[r.fine.source->node_id(i)];
    const auto& nb = r.fine.target->tree().nodes[r.fine.target->node_id(j)];
    for (int x : na.bases) {
      for (int y : nb.bases) {
        if (loop_a.count(x) && loop_b.count(y)) ++shared;
      }
    }
  }
  // The same count for the unrestricted alignment, for reference.
  int unrestricted_shared = 0;
  for (const MappedPair& p : ExtractScript(ZsDistance(ua, ub, fine), fine).mapping.pairs) {
    const auto& na = ua.tree().nodes[ua.node_id(p.source.front())];
    const auto& nb = ub.tree().nodes[ub.node_id(p.target.front())];
    for (int x : na.bases) {
      for (int y : nb.bases) {
        if (loop_a.count(x) && loop_b.count(y)) ++unrestricted_shared;
      }
    }
  }
  if (unrestricted_shared == 0) v.Fail("fixture does not scatter without colors");
  if (cross > 0) v.Fail(std::to_string(cross) + " cross-color pairs");
  if (shared > 0) v.Fail(std::to_string(shared) + " mapped bases shared by divergent loops");
  if (r.fine.distance + kExact < unrestricted) v.Fail("fine distance below unrestricted");
  v.detail = std::to_string(r.fine.extracted.mapping.pairs.size()) + " fine pairs, " +
             std::to_string(cross) + " cross-color, " + std::to_string(shared) +
             " shared divergent-loop bases (unrestricted: " +
             std::to_string(unrestricted_shared) + "); fine " + Fmt(r.fine.distance) +
             " >= unrestricted " + Fmt(unrestricted);
  Report(9, "multilevel restriction", v, clock.Seconds());
}

// 10: both encodings of the corpus agree; pseudoknots are refused.
void Parsing(const std::vector<CorpusEntry>& corpus) {
  Clock clock;
  Verdict v;
  if (corpus.size() != 50) v.Fail("corpus has " + std::to_string(corpus.size()) + " entries");
  for (const auto& c : corpus) {
    if (!(c.from_db == c.from_ct)) v.Fail(c.name + " differs between CT and dot-bracket");
  }
  int rejected = 0, knots = 0;
  const fs::path dir = fs::path(RNATREEDIT_TEST_DATA) / "pseudoknot";
  for (const auto& e : fs::directory_iterator(dir)) {
    ++knots;
    try {
      ParseCt(ReadFile(e.path()));
      v.Fail(e.path().filename().string() + " accepted");
    } catch (const ParseError& err) {
      if (err.code() == ParseErrorCode::kPseudoknotDetected) {
        ++rejected;
      } else {
        v.Fail(e.path().filename().string() + " rejected with " + ToString(err.code()));
      }
    }
  }
  if (knots == 0) v.Fail("no pseudoknot inputs");
  v.detail = std::to_string(corpus.size()) + " structures identical across CT and "
             "dot-bracket; " + std::to_string(rejected) + "/" + std::to_string(knots) +
             " knotted CT files rejected with PseudoknotDetected";
  Report(10, "parsing", v, clock.Seconds());
}

}  // namespace
}  // namespace rnatreedit

int main() {
  using namespace rnatreedit;
  ClassicalOracle();
  const Verdict pruning = FusionOracleAndPruning();
  MetricAxioms();
  ReductionAndDominance();
  Report(5, "pruning is sound", pruning, 0);
  ThresholdInT();
  Performance();
  std::vector<CorpusEntry> corpus;
  try {
    corpus = LoadCorpus();
  } catch (const std::exception& e) {
    std::printf("corpus failed to load: %s\n", e.what());
  }
  ScriptReplay(corpus);
  MultilevelRestriction();
  Parsing(corpus);
  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures == 0 ? 0 : 1;
}
