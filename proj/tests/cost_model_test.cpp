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


#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "rnatreedit/cost_model.hpp"
#include "rnatreedit/error.hpp"

namespace rnatreedit {
namespace {

ObjectLabel L(std::string kind, int size, std::string edge = "", int edge_size = 0) {
  return {{std::move(kind), size}, {std::move(edge), edge_size}};
}

TEST(UnitModel, Values) {
  const CostModel m = UnitModel(0.25);
  EXPECT_EQ(m.Match(L("a", 1), L("a", 1)), 0.0);
  EXPECT_EQ(m.Match(L("a", 1), L("b", 1)), 1.0);
  EXPECT_EQ(m.Match(L("a", 1), L("a", 2)), 1.0);
  EXPECT_EQ(m.Delete(L("a", 7)), 1.0);
  EXPECT_EQ(m.Insert(L("a", 7)), 1.0);
  EXPECT_EQ(m.NodeFusion(L("a", 1), L("b", 1)), 1.25);
  EXPECT_EQ(m.EdgeFusion(L("a", 1), L("b", 1), 2.0), 3.25);
}

TEST(StructuralModel, HairpinSizes) {
  const CostModel m = StructuralModel(Representation::kRepD, 0.1);
  EXPECT_DOUBLE_EQ(m.Match(L("H", 4, "helix", 3), L("H", 6, "helix", 3)), 0.2);
  EXPECT_DOUBLE_EQ(m.Match(L("H", 4, "helix", 3), L("I", 4, "helix", 3)), 0.5);
  EXPECT_DOUBLE_EQ(m.Delete(L("H", 4, "helix", 6)), 0.5);
  EXPECT_EQ(m.Match(L("H", 1, "helix", 1), L("M", 99, "helix", 99)), 1.0);
}

TEST(StructuralModel, RepBUsesUnitScale) {
  const CostModel m = StructuralModel(Representation::kRepB, 0.1);
  EXPECT_EQ(m.params().scale, 1.0);
  EXPECT_DOUBLE_EQ(m.Delete(L("GC", 1)), 0.5);
}

TEST(StructuralModel, MergedLabels) {
  const CostModel m = StructuralModel(Representation::kRepD, 0.1);
  const ObjectLabel parent = L("I", 2, "helix", 7);
  const ObjectLabel child = L("H", 3, "helix", 5);
  EXPECT_EQ(m.MergeNode(parent, child), L("H", 10, "helix", 7));
  EXPECT_EQ(m.MergeEdge(parent, child), L("H", 3, "helix", 14));
  EXPECT_EQ(m.MergeNode(L("M", 2, "helix", 1), child).node.kind, "M");
  EXPECT_EQ(m.MergeNode(L("B", 2, "helix", 1), L("I", 4, "helix", 1)).node.kind, "I");
}

TEST(StructuralModel, FusionPricesDeletionPlusT) {
  const CostModel m = StructuralModel(Representation::kRepD, 0.3);
  const ObjectLabel p = L("I", 2, "helix", 8);
  const ObjectLabel c = L("H", 5, "helix", 5);
  EXPECT_DOUBLE_EQ(m.NodeFusion(p, c), m.Delete(c) + 0.3);
  EXPECT_DOUBLE_EQ(m.EdgeFusion(p, c, 0.125), m.Delete(p) + 0.3 + 0.125);
  EXPECT_EQ(m.NodeSplit(p, c), m.NodeFusion(p, c));
}

TEST(StructuralModel, CapClampsTheDeletionPart) {
  ModelParams params;
  params.kind = ModelKind::kUnit;
  params.t = 0.5;
  params.cap = true;
  const CostModel m(params);
  EXPECT_EQ(m.NodeFusion(L("a", 1), L("b", 1)), 1.0);
  EXPECT_EQ(m.EdgeFusion(L("a", 1), L("b", 1), 2.0), 3.0);
}

TEST(StructuralModel, ScaledNormalization) {
  ModelParams params;
  params.kind = ModelKind::kStructural;
  params.normalization = Normalization::kScaled;
  params.scale = 4;
  const CostModel m(params);
  EXPECT_DOUBLE_EQ(m.Match(L("H", 4), L("H", 8)), 0.5);
}

TEST(Construction, RejectsBadParameters) {
  ModelParams p;
  p.t = -0.1;
  EXPECT_THROW(CostModel{p}, ConfigError);
  p.t = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(CostModel{p}, ConfigError);
  p = {};
  p.scale = 0;
  EXPECT_THROW(CostModel{p}, ConfigError);
}

TEST(Validate, ShippedModelsPass) {
  for (auto rep : {Representation::kRepB, Representation::kRepC,
                   Representation::kRepD, Representation::kRepE,
                   Representation::kGeneric}) {
    const auto samples = SampleLabels(rep);
    ASSERT_FALSE(samples.empty());
    for (double t : {0.0, 0.1, 2.0}) {
      EXPECT_TRUE(Validate(StructuralModel(rep, t), samples).ok()) << ToString(rep);
      EXPECT_TRUE(Validate(UnitModel(t), samples).ok());
    }
  }
}

class AsymmetricModel : public CostModel {
 public:
  AsymmetricModel() : CostModel(ModelParams{}) {}
  double Insert(const ObjectLabel& a) const override { return 2 * Delete(a); }
};

class SuperadditiveModel : public CostModel {
 public:
  SuperadditiveModel() : CostModel(ModelParams{}) {}
  double Delete(const ObjectLabel& a) const override {
    return static_cast<double>(a.total_size()) * a.total_size();
  }
};

class AsymmetricMatchModel : public CostModel {
 public:
  AsymmetricMatchModel() : CostModel(ModelParams{}) {}
  double Match(const ObjectLabel& a, const ObjectLabel& b) const override {
    return a == b ? 0.0 : a < b ? 1.0 : 0.5;
  }
};

TEST(Validate, AsymmetricInsertionIsReported) {
  const auto report = Validate(AsymmetricModel(), SampleLabels(Representation::kGeneric));
  EXPECT_FALSE(report.ok());
  const ValidityCheck* c = report.Find("ins-del-symmetry");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->passed);
  EXPECT_NE(c->witness.find("ins("), std::string::npos);
  EXPECT_NE(report.ToString().find("FAIL ins-del-symmetry"), std::string::npos);
}

TEST(Validate, SuperadditiveDeletionIsReported) {
  const auto report = Validate(SuperadditiveModel(), SampleLabels(Representation::kRepD));
  EXPECT_FALSE(report.Find("subadditivity-node-merge")->passed);
  EXPECT_FALSE(report.Find("subadditivity-edge-merge")->passed);
  EXPECT_TRUE(report.Find("ins-del-symmetry")->passed);
}

TEST(Validate, AsymmetricMatchIsReported) {
  const auto report = Validate(AsymmetricMatchModel(), SampleLabels(Representation::kGeneric));
  EXPECT_FALSE(report.Find("match-symmetry")->passed);
}

TEST(Config, ParseAndEcho) {
  const ModelParams p = ParseModelConfig(
      "# structural on the loop encoding\n"
      "model = structural\n"
      "rep = d\n"
      "t = 0.15   # fusion surcharge\n"
      "cap = true\n"
      "kind_penalty = 0.25\n"
      "normalization = scaled\n"
      "scale = 12\n");
  EXPECT_EQ(p.kind, ModelKind::kStructural);
  EXPECT_EQ(p.rep, Representation::kRepD);
  EXPECT_EQ(p.t, 0.15);
  EXPECT_TRUE(p.cap);
  EXPECT_EQ(p.kind_penalty, 0.25);
  EXPECT_EQ(p.normalization, Normalization::kScaled);
  EXPECT_EQ(p.scale, 12);
  const std::string echo = FormatModelParams(p);
  EXPECT_NE(echo.find("t=0.15 "), std::string::npos);
  EXPECT_NE(echo.find("scale=12"), std::string::npos);
}

TEST(Config, RepBDefaultsScaleToOne) {
  EXPECT_EQ(ParseModelConfig("rep = b\n").scale, 1.0);
  EXPECT_EQ(ParseModelConfig("rep = b\nscale = 3\n").scale, 3.0);
}

TEST(Config, Errors) {
  EXPECT_THROW(ParseModelConfig("t = -1\n"), ConfigError);
  EXPECT_THROW(ParseModelConfig("colour = red\n"), ConfigError);
  EXPECT_THROW(ParseModelConfig("model\n"), ConfigError);
  EXPECT_THROW(ParseModelConfig("model = fancy\n"), ConfigError);
  try {
    ParseModelConfig("\n\nbogus = 1\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

}  // namespace
}  // namespace rnatreedit
