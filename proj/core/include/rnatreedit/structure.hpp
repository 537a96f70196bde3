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


#ifndef RNATREEDIT_STRUCTURE_HPP_
#define RNATREEDIT_STRUCTURE_HPP_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rnatreedit {

// Which base pairs the readers accept.
enum class PairingPolicy {
  kAny,              // any two bases may pair
  kCanonicalWobble,  // A-U, G-C and G-U (default)
  kCanonicalOnly,    // A-U and G-C only (--strict-pairs)
};

struct ParseOptions {
  PairingPolicy pairing = PairingPolicy::kCanonicalWobble;
};

using BasePair = std::pair<int, int>;

// An RNA sequence with a pseudoknot-free set of base pairs. Indices are
// 0-based, every pair has first < second, and pairs are sorted by first.
struct SecondaryStructure {
  std::string id;
  std::string sequence;
  std::vector<BasePair> pairs;

  int length() const { return static_cast<int>(sequence.size()); }
  // partner[i] is the index paired with i, or -1.
  std::vector<int> PartnerTable() const;

  friend bool operator==(const SecondaryStructure&,
                         const SecondaryStructure&) = default;
};

// Builds a structure from explicit pairs, normalizing the sequence and
// checking every invariant. Throws ParseError.
SecondaryStructure MakeStructure(std::string id, std::string_view sequence,
                                 std::vector<BasePair> pairs,
                                 const ParseOptions& options = {});

SecondaryStructure ParseDotBracket(std::string_view text,
                                   const ParseOptions& options = {});
SecondaryStructure ParseCt(std::string_view text,
                           const ParseOptions& options = {});

std::string ToDotBracketLine(const SecondaryStructure& s);
// Three-line record: ">id", sequence, structure.
std::string ToDotBracket(const SecondaryStructure& s);
std::string ToCt(const SecondaryStructure& s);

enum class ElementKind {
  kHelix,
  kHairpinLoop,
  kInternalLoop,
  kBulge,
  kMultiloop,
  kExteriorRegion,
};

const char* ToString(ElementKind kind);

struct BaseRange {
  int first = 0;  // inclusive
  int last = -1;  // inclusive; last < first means empty
  int size() const { return last < first ? 0 : last - first + 1; }
  friend bool operator==(const BaseRange&, const BaseRange&) = default;
};

struct StructureElement {
  ElementKind kind = ElementKind::kExteriorRegion;
  // Helix: the 5' strand then the 3' strand. Loops: one range per unpaired
  // segment, in 5'->3' order (segments may be empty).
  std::vector<BaseRange> ranges;
  // Helix: {stacked pairs}. Loops: unpaired count per segment.
  std::vector<int> sizes;
  int parent = -1;
  std::vector<int> children;

  int total_size() const;
  int base_count() const;
  // Outermost pair for helices, closing pair for loops ({-1,-1} for the
  // exterior region).
  BasePair closing_pair{-1, -1};

  friend bool operator==(const StructureElement&,
                         const StructureElement&) = default;
};

// Element-level tree of a structure. The exterior region is the root, each
// helix hangs below the loop it branches from and has the loop it closes as
// its only child.
struct ElementGraph {
  std::vector<StructureElement> elements;
  int root = 0;

  std::vector<int> HelicesOf(int loop) const { return elements[loop].children; }
  // Loop closed by the given helix.
  int LoopClosedBy(int helix) const { return elements[helix].children.front(); }
  int CountKind(ElementKind kind) const;

  friend bool operator==(const ElementGraph&, const ElementGraph&) = default;
};

ElementGraph Decompose(const SecondaryStructure& s);

}  // namespace rnatreedit

#endif  // RNATREEDIT_STRUCTURE_HPP_
