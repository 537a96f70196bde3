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


#ifndef RNATREEDIT_COST_MODEL_HPP_
#define RNATREEDIT_COST_MODEL_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "rnatreedit/tree.hpp"

namespace rnatreedit {

enum class ModelKind { kUnit, kStructural };

// Size-difference term of the structural match cost.
enum class Normalization {
  kRatio,   // |a - b| / (a + b), 0/0 = 0
  kScaled,  // |a - b| / (|a - b| + scale)
};

struct ModelParams {
  ModelKind kind = ModelKind::kUnit;
  Representation rep = Representation::kGeneric;
  double t = 0.1;
  // Clamp the deletion-plus-t part of fusion costs to 1.
  bool cap = false;
  double kind_penalty = 0.5;
  Normalization normalization = Normalization::kRatio;
  // Deletion of an object of total size s costs s / (s + scale).
  double scale = 10.0;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Prices the seven edit operations over node+edge objects. The default
// implementation covers the unit and structural models; tests subclass it
// to inject non-compliant models.
class CostModel {
 public:
  explicit CostModel(ModelParams params);
  virtual ~CostModel() = default;
  CostModel(const CostModel&) = default;
  CostModel& operator=(const CostModel&) = default;

  const ModelParams& params() const { return params_; }
  double t() const { return params_.t; }

  virtual double Match(const ObjectLabel& a, const ObjectLabel& b) const;
  virtual double Delete(const ObjectLabel& a) const;
  virtual double Insert(const ObjectLabel& a) const { return Delete(a); }

  // Label of `parent` after absorbing its child (node fusion): the node
  // label folds in the child's edge and node, the parent's edge is kept.
  virtual ObjectLabel MergeNode(const ObjectLabel& parent,
                                const ObjectLabel& child) const;
  // Label replacing `parent` after fusing its edge with the child's edge:
  // the child's node under an edge folding parent edge, parent node and
  // child edge.
  virtual ObjectLabel MergeEdge(const ObjectLabel& parent,
                                const ObjectLabel& child) const;

  virtual double NodeFusion(const ObjectLabel& parent,
                            const ObjectLabel& child) const;
  virtual double NodeSplit(const ObjectLabel& parent,
                           const ObjectLabel& child) const {
    return NodeFusion(parent, child);
  }
  // `displaced` is the deletion cost of the parent's other subtrees.
  virtual double EdgeFusion(const ObjectLabel& parent, const ObjectLabel& child,
                            double displaced) const;
  virtual double EdgeSplit(const ObjectLabel& parent, const ObjectLabel& child,
                           double displaced) const {
    return EdgeFusion(parent, child, displaced);
  }

 private:
  double SizeDistance(int a, int b) const;

  ModelParams params_;
};

// ins = del = 1, match 0 on equal labels and 1 otherwise.
CostModel UnitModel(double t = 0.1);
// Size-aware costs in [0, 1] tuned to one of the RNA encodings.
CostModel StructuralModel(Representation rep, double t);
CostModel MakeModel(const ModelParams& params);

// key = value lines; '#' starts a comment. Throws ConfigError.
ModelParams ParseModelConfig(std::string_view text);
// Single line listing every effective parameter; doubles are printed in
// shortest round-trip form so the echo is bit-exact.
std::string FormatModelParams(const ModelParams& params);
std::string FormatDouble(double value);

struct ValidityCheck {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct ValidityReport {
  std::vector<ValidityCheck> checks;

  bool ok() const;
  const ValidityCheck* Find(std::string_view name) const;
  std::string ToString() const;
};

// Checks the distance conditions (non-negativity, ins/del and fusion/split
// symmetry, match metric axioms) and subadditivity of deletion under both
// merges over every pair and triple of `samples`.
ValidityReport Validate(const CostModel& model,
                        const std::vector<ObjectLabel>& samples);

// A representative label set for the given encoding.
std::vector<ObjectLabel> SampleLabels(Representation rep);

}  // namespace rnatreedit

#endif  // RNATREEDIT_COST_MODEL_HPP_
