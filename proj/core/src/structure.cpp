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


#include "rnatreedit/structure.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "rnatreedit/error.hpp"

namespace rnatreedit {
namespace {

bool CanPair(char a, char b, PairingPolicy policy) {
  if (policy == PairingPolicy::kAny) return true;
  auto is = [&](char x, char y) {
    return (a == x && b == y) || (a == y && b == x);
  };
  if (is('A', 'U') || is('G', 'C')) return true;
  return policy == PairingPolicy::kCanonicalWobble && is('G', 'U');
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::string NormalizeSequence(std::string_view seq, int line) {
  std::string out;
  out.reserve(seq.size());
  for (char c : seq) {
    char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u == 'T') u = 'U';
    if (u != 'A' && u != 'C' && u != 'G' && u != 'U') {
      throw ParseError(ParseErrorCode::kIllegalCharacter, line,
                       std::string("illegal base '") + c + "'");
    }
    out.push_back(u);
  }
  return out;
}

// Scans the unpaired segments and branches of the loop spanning
// [from, to]; branches are reported by their opening index.
void ScanLoop(const std::vector<int>& partner, int from, int to,
              std::vector<BaseRange>& segments, std::vector<int>& branches) {
  BaseRange current{from, from - 1};
  int k = from;
  while (k <= to) {
    if (partner[k] < 0) {
      current.last = k;
      ++k;
      continue;
    }
    segments.push_back(current);
    branches.push_back(k);
    k = partner[k] + 1;
    current = BaseRange{k, k - 1};
  }
  segments.push_back(current);
}

class Decomposer {
 public:
  explicit Decomposer(const SecondaryStructure& s)
      : partner_(s.PartnerTable()) {}

  ElementGraph Run(int length) {
    StructureElement exterior;
    exterior.kind = ElementKind::kExteriorRegion;
    graph_.elements.push_back(exterior);
    graph_.root = 0;
    std::vector<BaseRange> segments;
    std::vector<int> branches;
    ScanLoop(partner_, 0, length - 1, segments, branches);
    FinishLoop(0, segments);
    for (int open : branches) AddHelix(0, open);
    return std::move(graph_);
  }

 private:
  void FinishLoop(int index, const std::vector<BaseRange>& segments) {
    auto& e = graph_.elements[index];
    e.ranges = segments;
    e.sizes.clear();
    for (const auto& r : segments) e.sizes.push_back(r.size());
  }

  void AddHelix(int parent, int open) {
    const int helix = static_cast<int>(graph_.elements.size());
    graph_.elements.push_back({});
    graph_.elements[parent].children.push_back(helix);
    int i = open;
    int j = partner_[open];
    int stacked = 1;
    while (i + 1 < j - 1 && partner_[i + 1] == j - 1) {
      ++i;
      --j;
      ++stacked;
    }
    {
      auto& h = graph_.elements[helix];
      h.kind = ElementKind::kHelix;
      h.parent = parent;
      h.closing_pair = {open, partner_[open]};
      h.ranges = {BaseRange{open, i}, BaseRange{j, partner_[open]}};
      h.sizes = {stacked};
    }

    const int loop = static_cast<int>(graph_.elements.size());
    graph_.elements.push_back({});
    graph_.elements[helix].children.push_back(loop);
    std::vector<BaseRange> segments;
    std::vector<int> branches;
    ScanLoop(partner_, i + 1, j - 1, segments, branches);
    {
      auto& l = graph_.elements[loop];
      l.parent = helix;
      l.closing_pair = {i, j};
      if (branches.empty()) {
        l.kind = ElementKind::kHairpinLoop;
      } else if (branches.size() == 1) {
        const bool left = segments[0].size() > 0;
        const bool right = segments[1].size() > 0;
        l.kind = (left && right) ? ElementKind::kInternalLoop
                                 : ElementKind::kBulge;
      } else {
        l.kind = ElementKind::kMultiloop;
      }
    }
    FinishLoop(loop, segments);
    for (int b : branches) AddHelix(loop, b);
  }

  std::vector<int> partner_;
  ElementGraph graph_;
};

}  // namespace

std::vector<int> SecondaryStructure::PartnerTable() const {
  std::vector<int> partner(sequence.size(), -1);
  for (const auto& [i, j] : pairs) {
    partner[i] = j;
    partner[j] = i;
  }
  return partner;
}

namespace {

SecondaryStructure BuildStructure(std::string id, std::string_view sequence,
                                  std::vector<BasePair> pairs,
                                  const ParseOptions& options, int line) {
  SecondaryStructure s;
  s.id = std::move(id);
  s.sequence = NormalizeSequence(sequence, line);
  const int n = s.length();
  std::vector<int> partner(n, -1);
  for (auto& p : pairs) {
    if (p.first > p.second) std::swap(p.first, p.second);
    if (p.first < 0 || p.second >= n || p.first == p.second) {
      throw ParseError(ParseErrorCode::kMalformedInput, line,
                       "pair (" + std::to_string(p.first) + "," +
                           std::to_string(p.second) + ") out of range");
    }
    if (partner[p.first] >= 0 || partner[p.second] >= 0) {
      throw ParseError(ParseErrorCode::kNonReciprocalPair, line,
                       "base paired twice in pair (" +
                           std::to_string(p.first) + "," +
                           std::to_string(p.second) + ")");
    }
    partner[p.first] = p.second;
    partner[p.second] = p.first;
  }
  std::sort(pairs.begin(), pairs.end());
  // Pseudoknot-free iff the pairs nest like brackets.
  std::vector<int> stack;
  for (int k = 0; k < n; ++k) {
    if (partner[k] < 0) continue;
    if (partner[k] > k) {
      stack.push_back(k);
    } else {
      if (stack.empty() || stack.back() != partner[k]) {
        throw ParseError(ParseErrorCode::kPseudoknotDetected, line,
                         "pair (" + std::to_string(partner[k]) + "," +
                             std::to_string(k) + ") crosses another pair");
      }
      stack.pop_back();
    }
  }
  for (const auto& [i, j] : pairs) {
    if (!CanPair(s.sequence[i], s.sequence[j], options.pairing)) {
      throw ParseError(ParseErrorCode::kNonCanonicalPair, line,
                       std::string("pair ") + s.sequence[i] + "-" +
                           s.sequence[j] + " at (" + std::to_string(i) +
                           "," + std::to_string(j) + ")");
    }
  }
  s.pairs = std::move(pairs);
  return s;
}

}  // namespace

SecondaryStructure MakeStructure(std::string id, std::string_view sequence,
                                 std::vector<BasePair> pairs,
                                 const ParseOptions& options) {
  return BuildStructure(std::move(id), sequence, std::move(pairs), options, 0);
}

SecondaryStructure ParseDotBracket(std::string_view text,
                                   const ParseOptions& options) {
  const auto lines = SplitLines(text);
  std::string id;
  std::vector<std::pair<int, std::string_view>> body;
  for (size_t k = 0; k < lines.size(); ++k) {
    std::string_view line = Trim(lines[k]);
    if (line.empty()) continue;
    if (line.front() == '>' && body.empty() && id.empty()) {
      id = std::string(Trim(line.substr(1)));
      continue;
    }
    body.emplace_back(static_cast<int>(k) + 1, line);
  }
  if (body.size() != 2) {
    throw ParseError(ParseErrorCode::kMalformedInput,
                     body.empty() ? 0 : body.back().first,
                     "expected a sequence line and a structure line");
  }
  const auto [seq_line, seq_raw] = body[0];
  auto [dot_line, dot_raw] = body[1];
  // Trailing annotations such as a free energy follow the first blank.
  const size_t blank = dot_raw.find_first_of(" \t");
  if (blank != std::string_view::npos) dot_raw = dot_raw.substr(0, blank);
  std::string sequence = NormalizeSequence(seq_raw, seq_line);
  if (sequence.size() != dot_raw.size()) {
    throw ParseError(ParseErrorCode::kLengthMismatch, dot_line,
                     "sequence has " + std::to_string(sequence.size()) +
                         " bases, structure has " +
                         std::to_string(dot_raw.size()) + " characters");
  }
  std::vector<BasePair> pairs;
  std::vector<int> stack;
  for (int k = 0; k < static_cast<int>(dot_raw.size()); ++k) {
    const char c = dot_raw[k];
    if (c == '(') {
      stack.push_back(k);
    } else if (c == ')') {
      if (stack.empty()) {
        throw ParseError(ParseErrorCode::kUnbalancedBrackets, dot_line,
                         "unmatched ')' at column " + std::to_string(k + 1));
      }
      pairs.emplace_back(stack.back(), k);
      stack.pop_back();
    } else if (c != '.') {
      throw ParseError(ParseErrorCode::kIllegalCharacter, dot_line,
                       std::string("illegal structure character '") + c +
                           "' at column " + std::to_string(k + 1));
    }
  }
  if (!stack.empty()) {
    throw ParseError(ParseErrorCode::kUnbalancedBrackets, dot_line,
                     "unmatched '(' at column " +
                         std::to_string(stack.back() + 1));
  }
  return BuildStructure(std::move(id), sequence, std::move(pairs), options,
                        dot_line);
}

SecondaryStructure ParseCt(std::string_view text, const ParseOptions& options) {
  const auto lines = SplitLines(text);
  size_t k = 0;
  while (k < lines.size() && Trim(lines[k]).empty()) ++k;
  if (k == lines.size()) {
    throw ParseError(ParseErrorCode::kMalformedInput, 0, "empty CT input");
  }
  const int header_line = static_cast<int>(k) + 1;
  std::istringstream header{std::string(Trim(lines[k]))};
  long declared = -1;
  if (!(header >> declared) || declared < 0) {
    throw ParseError(ParseErrorCode::kMalformedInput, header_line,
                     "CT header must start with the sequence length");
  }
  std::string id;
  std::getline(header, id);
  id = std::string(Trim(id));
  // "ENERGY = -12.3  name" style headers keep only the trailing name.
  if (id.rfind("ENERGY", 0) == 0 || id.rfind("dG", 0) == 0) {
    std::istringstream rest(id);
    std::string tok;
    std::vector<std::string> toks;
    while (rest >> tok) toks.push_back(tok);
    id = toks.size() > 3 ? toks.back() : std::string();
  }

  std::string sequence;
  std::vector<int> partner;
  std::vector<int> line_of;
  for (++k; k < lines.size(); ++k) {
    std::string_view line = Trim(lines[k]);
    if (line.empty()) continue;
    const int line_no = static_cast<int>(k) + 1;
    std::istringstream row{std::string(line)};
    long index = 0, prev = 0, next = 0, pair = 0, natural = 0;
    std::string base;
    if (!(row >> index >> base >> prev >> next >> pair >> natural)) {
      throw ParseError(ParseErrorCode::kMalformedInput, line_no,
                       "CT record needs 6 columns");
    }
    if (index != static_cast<long>(sequence.size()) + 1) {
      throw ParseError(ParseErrorCode::kBadRecordCount, line_no,
                       "expected record " +
                           std::to_string(sequence.size() + 1) + ", got " +
                           std::to_string(index));
    }
    if (base.size() != 1) {
      throw ParseError(ParseErrorCode::kIllegalCharacter, line_no,
                       "base column must be a single letter");
    }
    sequence += NormalizeSequence(base, line_no);
    partner.push_back(static_cast<int>(pair) - 1);
    line_of.push_back(line_no);
  }
  const int n = static_cast<int>(sequence.size());
  if (n != declared) {
    throw ParseError(ParseErrorCode::kBadRecordCount, header_line,
                     "header declares " + std::to_string(declared) +
                         " bases, found " + std::to_string(n));
  }
  std::vector<BasePair> pairs;
  for (int i = 0; i < n; ++i) {
    const int j = partner[i];
    if (j < -1 || j >= n || j == i) {
      throw ParseError(ParseErrorCode::kMalformedInput, line_of[i],
                       "pairing partner out of range");
    }
    if (j < 0) continue;
    if (partner[j] != i) {
      throw ParseError(ParseErrorCode::kNonReciprocalPair, line_of[i],
                       "base " + std::to_string(i + 1) + " pairs with " +
                           std::to_string(j + 1) + " but not vice versa");
    }
    if (i < j) pairs.emplace_back(i, j);
  }
  // Interleaving check with the offending line reported.
  std::vector<int> stack;
  for (int i = 0; i < n; ++i) {
    const int j = partner[i];
    if (j < 0) continue;
    if (j > i) {
      stack.push_back(i);
    } else if (stack.empty() || stack.back() != j) {
      throw ParseError(ParseErrorCode::kPseudoknotDetected, line_of[i],
                       "pair (" + std::to_string(j + 1) + "," +
                           std::to_string(i + 1) + ") interleaves another pair");
    } else {
      stack.pop_back();
    }
  }
  return BuildStructure(std::move(id), sequence, std::move(pairs), options,
                        header_line);
}

std::string ToDotBracketLine(const SecondaryStructure& s) {
  std::string out(s.sequence.size(), '.');
  for (const auto& [i, j] : s.pairs) {
    out[i] = '(';
    out[j] = ')';
  }
  return out;
}

std::string ToDotBracket(const SecondaryStructure& s) {
  return ">" + s.id + "\n" + s.sequence + "\n" + ToDotBracketLine(s) + "\n";
}

std::string ToCt(const SecondaryStructure& s) {
  const auto partner = s.PartnerTable();
  std::ostringstream out;
  out << s.length() << " " << s.id << "\n";
  for (int i = 0; i < s.length(); ++i) {
    out << (i + 1) << " " << s.sequence[i] << " " << i << " "
        << (i + 2 > s.length() ? 0 : i + 2) << " " << (partner[i] + 1) << " "
        << (i + 1) << "\n";
  }
  return out.str();
}

const char* ToString(ElementKind kind) {
  switch (kind) {
    case ElementKind::kHelix: return "Helix";
    case ElementKind::kHairpinLoop: return "HairpinLoop";
    case ElementKind::kInternalLoop: return "InternalLoop";
    case ElementKind::kBulge: return "Bulge";
    case ElementKind::kMultiloop: return "Multiloop";
    case ElementKind::kExteriorRegion: return "ExteriorRegion";
  }
  return "Unknown";
}

int StructureElement::total_size() const {
  int total = 0;
  for (int v : sizes) total += v;
  return total;
}

int StructureElement::base_count() const {
  int total = 0;
  for (const auto& r : ranges) total += r.size();
  return total;
}

int ElementGraph::CountKind(ElementKind kind) const {
  return static_cast<int>(std::count_if(
      elements.begin(), elements.end(),
      [kind](const StructureElement& e) { return e.kind == kind; }));
}

ElementGraph Decompose(const SecondaryStructure& s) {
  return Decomposer(s).Run(s.length());
}

}  // namespace rnatreedit
