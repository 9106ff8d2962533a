// Copyright 2026 The orthocsg Authors.
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

#include "orthocsg/assembler.h"
#include "orthocsg/error.h"
#include "orthocsg/scad_emit.h"
#include "test_util.h"

namespace orthocsg {
namespace {

constexpr double kPpu = 150;

GroundTruthModel Model(const std::string& text) {
  return ParseModel("canvas ppu=150 width=512 height=512 stroke=2\n" + text);
}

void ExpectNear3(const Vec3& got, const Vec3& want, const std::string& what) {
  for (int i = 0; i < 3; ++i)
    EXPECT_NEAR(got[i], want[i], test::Tolerance(want[i], kPpu)) << what << " axis " << i;
}

TEST(Combining, FrontSideRectanglesMakeCube) {
  const Reconstruction r = test::RoundTrip(Model("cube size=2,1,2 at=0,0,0 op=none\n"));
  ASSERT_EQ(r.nodes.size(), 1u);
  const auto* cube = std::get_if<Cube>(&r.nodes[0].primitive);
  ASSERT_NE(cube, nullptr);
  ExpectNear3(cube->size, {2, 1, 2}, "size");
  ExpectNear3(r.nodes[0].translation, {0, 0, 0}, "translation");
  EXPECT_EQ(r.assembly.matched_pairs, 1);
}

TEST(Combining, FrontCircleSideRectangleMakesCylinderAlongY) {
  const Reconstruction r =
      test::RoundTrip(Model("cylinder h=3 r=0.5 fn=100 axis=y at=0,0,0 op=none\n"));
  ASSERT_EQ(r.nodes.size(), 1u);
  const auto* cyl = std::get_if<Cylinder>(&r.nodes[0].primitive);
  ASSERT_NE(cyl, nullptr);
  EXPECT_EQ(cyl->axis, Axis::kY);
  EXPECT_NEAR(cyl->height, 3, test::Tolerance(3, kPpu));
  EXPECT_NEAR(cyl->radius, 0.5, test::Tolerance(0.5, kPpu));
  EXPECT_EQ(cyl->fn, 100);
  EXPECT_NE(r.scad.find("rotate([90,0,0]) cylinder("), std::string::npos);
}

TEST(Combining, SideCircleMakesCylinderAlongX) {
  const Reconstruction r =
      test::RoundTrip(Model("cylinder h=2.5 r=0.6 fn=100 axis=x at=0,0,0 op=none\n"));
  ASSERT_EQ(r.nodes.size(), 1u);
  const auto* cyl = std::get_if<Cylinder>(&r.nodes[0].primitive);
  ASSERT_NE(cyl, nullptr);
  EXPECT_EQ(cyl->axis, Axis::kX);
  EXPECT_NEAR(cyl->height, 2.5, test::Tolerance(2.5, kPpu));
  EXPECT_NEAR(cyl->radius, 0.6, test::Tolerance(0.6, kPpu));
}

TEST(Combining, UprightCylinderFromTopCircle) {
  const Reconstruction r =
      test::RoundTrip(Model("cylinder h=2 r=0.8 fn=100 axis=z at=0,0,0 op=none\n"));
  ASSERT_EQ(r.nodes.size(), 1u);
  const auto* cyl = std::get_if<Cylinder>(&r.nodes[0].primitive);
  ASSERT_NE(cyl, nullptr);
  EXPECT_EQ(cyl->axis, Axis::kZ);
  EXPECT_NEAR(cyl->height, 2, test::Tolerance(2, kPpu));
  EXPECT_NEAR(cyl->radius, 0.8, test::Tolerance(0.8, kPpu));
}

TEST(Combining, TopOnlyCircleDrillsThroughParent) {
  const Reconstruction r = test::RoundTrip(FixtureCatalog()[1].model);
  ASSERT_EQ(r.nodes.size(), 2u);
  EXPECT_EQ(r.nodes[0].op, BoolOp::kNone);
  EXPECT_EQ(r.nodes[1].op, BoolOp::kDifference);
  const auto* cyl = std::get_if<Cylinder>(&r.nodes[1].primitive);
  ASSERT_NE(cyl, nullptr);
  EXPECT_EQ(cyl->axis, Axis::kZ);
  const auto& parent = std::get<Cube>(r.nodes[0].primitive);
  EXPECT_DOUBLE_EQ(cyl->height, parent.size.z);
  ExpectNear3(r.nodes[1].translation, {0.4, 0.3, 0}, "hole");
}

TEST(Combining, StackedCubesUnion) {
  const Reconstruction r = test::RoundTrip(
      Model("cube size=2,2,1 at=0,0,-0.5 op=none\ncube size=1,1,1 at=0,0,0.5 op=union\n"));
  ASSERT_EQ(r.nodes.size(), 2u);
  EXPECT_EQ(r.nodes[0].op, BoolOp::kNone);
  EXPECT_EQ(r.nodes[1].op, BoolOp::kUnion);
  ExpectNear3(std::get<Cube>(r.nodes[0].primitive).size, {2, 2, 1}, "base");
  ExpectNear3(std::get<Cube>(r.nodes[1].primitive).size, {1, 1, 1}, "top");
  ExpectNear3(r.nodes[1].translation, {0, 0, 0.5}, "top");
}

TEST(Combining, ZRotatedBlock) {
  const Reconstruction r = test::RoundTrip(Model("cube size=2,0.8,1 at=0,0,0 rot=0,0,30 op=none\n"));
  ASSERT_EQ(r.nodes.size(), 1u);
  const auto* cube = std::get_if<Cube>(&r.nodes[0].primitive);
  ASSERT_NE(cube, nullptr);
  EXPECT_NEAR(r.nodes[0].rotation.z, 30, 1.0);
  EXPECT_EQ(r.nodes[0].rotation.x, 0);
  EXPECT_EQ(r.nodes[0].rotation.y, 0);
  ExpectNear3(cube->size, {2, 0.8, 1}, "size");
}

TEST(Combining, MismatchedViewsAreRejected) {
  const RenderedViews a = RenderViews(Model("cube size=2,1,2 at=0,0,0 op=none\n"));
  const RenderedViews b = RenderViews(Model("cube size=2,1,1.2 at=0,0,0 op=none\n"));
  try {
    Reconstruct({a.images[0], b.images[1], a.images[2]}, {a.dims[0], b.dims[1], a.dims[2]});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAssemblyMismatch);
  }
}

ShapeRecord Record(Shape shape, Vec2 extent, Vec2 center, View view) {
  ShapeRecord r;
  r.shape = ClassFor(shape);
  r.extent = extent;
  r.length = std::max(extent.x, extent.y);
  r.breadth = std::min(extent.x, extent.y);
  r.along = extent.x;
  r.across = extent.y;
  r.radius = shape == Shape::kCircle ? extent.x / 2 : 0;
  r.box_center = center;
  r.rel_translation = center;
  r.source_view = view;
  return r;
}

ViewObjects Objects(View view, std::vector<std::vector<ShapeRecord>> groups, Vec2 extent) {
  ViewObjects v;
  v.view = view;
  v.groups = std::move(groups);
  v.extent = extent;
  v.ratio = {0.01, view};
  return v;
}

TEST(Combining, MissingDepthNamesTheShape) {
  const auto f = Objects(View::kFront, {{Record(Shape::kTriangle, {2, 2}, {}, View::kFront)}}, {2, 2});
  const auto s = Objects(View::kSide, {{Record(Shape::kTriangle, {2, 2}, {}, View::kSide)}}, {2, 2});
  const auto t = Objects(View::kTop, {{Record(Shape::kTriangle, {2, 2}, {}, View::kTop)}}, {2, 2});
  try {
    Combining(f, s, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingDepth);
    EXPECT_NE(std::string(e.what()).find("front triangle"), std::string::npos);
  }
}

TEST(Combining, TopOnlyShapeWithoutParentIsReported) {
  const auto f = Objects(View::kFront, {{Record(Shape::kSquare, {2, 2}, {}, View::kFront)}}, {2, 2});
  const auto s = Objects(View::kSide, {{Record(Shape::kSquare, {2, 2}, {}, View::kSide)}}, {2, 2});
  const auto t = Objects(View::kTop,
                         {{Record(Shape::kSquare, {2, 2}, {}, View::kTop)},
                          {Record(Shape::kCircle, {0.2, 0.2}, {3, 3}, View::kTop)}},
                         {2, 2});
  const Assembly a = Combining(f, s, t);
  ASSERT_EQ(Flatten(a.groups).size(), 1u);
  int ignored = 0;
  for (const RecordFate& fate : a.fates) {
    if (fate.ignored) {
      ++ignored;
      EXPECT_EQ(fate.view, View::kTop);
      EXPECT_EQ(fate.times_consumed, 0);
    } else {
      EXPECT_EQ(fate.times_consumed, 1);
    }
  }
  EXPECT_EQ(ignored, 1);
  EXPECT_EQ(a.warnings.size(), 1u);
}

TEST(Combining, WrongViewOrderIsPrecondition) {
  const auto f = Objects(View::kFront, {}, {});
  const auto s = Objects(View::kSide, {}, {});
  const auto t = Objects(View::kTop, {}, {});
  EXPECT_THROW(Combining(s, f, t), Error);
  AssemblyConfig bad;
  bad.round_off_approx = -1;
  EXPECT_THROW(Combining(f, s, t, bad), Error);
  EXPECT_TRUE(Combining(f, s, t).groups.empty());
}

TEST(Combining, DegenerateSolidIsRejected) {
  const auto f = Objects(View::kFront, {{Record(Shape::kRectangle, {2, 0.01}, {}, View::kFront)}}, {2, 0.01});
  const auto s = Objects(View::kSide, {{Record(Shape::kRectangle, {1, 0.01}, {}, View::kSide)}}, {1, 0.01});
  const auto t = Objects(View::kTop, {{Record(Shape::kRectangle, {2, 1}, {}, View::kTop)}}, {2, 1});
  try {
    Combining(f, s, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
  }
}

TEST(Combining, CatalogInvariants) {
  for (const Fixture& fx : FixtureCatalog()) {
    const Reconstruction r = test::RoundTrip(fx.model);
    for (const RecordFate& fate : r.assembly.fates)
      EXPECT_TRUE(fate.times_consumed == 1 || (fate.ignored && fate.times_consumed == 0)) << fx.name;
    for (const SolidNode& n : r.nodes) {
      const int turned = (n.rotation.x != 0) + (n.rotation.y != 0) + (n.rotation.z != 0);
      EXPECT_LE(turned, 1) << fx.name;
      if (const auto* c = std::get_if<Cube>(&n.primitive)) {
        EXPECT_GT(std::min({c->size.x, c->size.y, c->size.z}), 0) << fx.name;
      } else {
        const auto& cyl = std::get<Cylinder>(n.primitive);
        EXPECT_GT(cyl.height, 0) << fx.name;
        EXPECT_GT(cyl.radius, 0) << fx.name;
      }
    }
  }
}

TEST(Combining, ToleranceMonotone) {
  for (const Fixture& fx : FixtureCatalog()) {
    const RenderedViews v = RenderViews(fx.model);
    int last = 0;
    for (const double tol : {0.02, 0.05, 0.1, 0.25, 0.5, 1.0}) {
      PipelineConfig cfg;
      cfg.assembly.round_off_approx = tol;
      int matched = 0;
      try {
        matched = Reconstruct(v.images, v.dims, cfg).assembly.matched_pairs;
      } catch (const Error&) {
      }
      EXPECT_GE(matched, last) << fx.name << " tol " << tol;
      last = matched;
    }
  }
}

TEST(Flatten, Structure) {
  EXPECT_TRUE(Flatten({}).empty());
  SolidNode a{Cube{{1, 1, 1}}}, b{Cylinder{1, 0.2}}, c{Cube{{2, 2, 2}}};
  b.op = BoolOp::kDifference;
  const auto flat = Flatten({{a, b}, {c}});
  ASSERT_EQ(flat.size(), 3u);
  EXPECT_EQ(flat[0].op, BoolOp::kNone);
  EXPECT_EQ(flat[1].op, BoolOp::kDifference);
  EXPECT_EQ(flat[2].op, BoolOp::kNone);
}

TEST(Geometry, AxisOrientationLaysCylinders) {
  const Vec3 z{0, 0, 1};
  const Vec3 x = AxisOrientation(Axis::kX) * z, y = AxisOrientation(Axis::kY) * z;
  EXPECT_NEAR(std::abs(x.x), 1, 1e-12);
  EXPECT_NEAR(std::abs(y.y), 1, 1e-12);
  SolidNode n{Cylinder{4, 1, 100, Axis::kX}};
  const Aabb b = Bounds(n);
  EXPECT_NEAR(b.Size().x, 4, 1e-12);
  EXPECT_NEAR(b.Size().y, 2, 1e-12);
  EXPECT_NEAR(b.Size().z, 2, 1e-12);
}

}  // namespace
}  // namespace orthocsg
