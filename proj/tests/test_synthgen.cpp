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

#include "oracles.h"
#include "orthocsg/error.h"
#include "orthocsg/synthgen.h"
#include "orthocsg/view_parser.h"
#include "test_util.h"

namespace orthocsg {
namespace {

struct InkBox {
  int x0 = 1 << 30, y0 = 1 << 30, x1 = -1, y1 = -1;
  int w() const { return x1 - x0 + 1; }
  int h() const { return y1 - y0 + 1; }
};

InkBox Ink(const GrayImage& img) {
  InkBox b;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      if (img.at(x, y) < 128) {
        b.x0 = std::min(b.x0, x);
        b.y0 = std::min(b.y0, y);
        b.x1 = std::max(b.x1, x);
        b.y1 = std::max(b.y1, y);
      }
  return b;
}

GroundTruthModel Model(const std::string& parts) {
  return ParseModel("canvas ppu=150 width=512 height=512 stroke=2\n" + parts);
}

std::vector<Shape> Shapes(const GrayImage& img, View view) {
  std::vector<Shape> out;
  for (const auto& g : ValidContours(img, view, {0.01, view}).groups)
    for (const ShapeRecord& r : g) out.push_back(r.shape.shape);
  return out;
}

TEST(RenderViews, CubeOutlineSizes) {
  const RenderedViews v = RenderViews(Model("cube size=2,1,2\n"));
  // Outline centred on the silhouette edge: 300 px span plus the stroke.
  const int want[3][2] = {{300, 300}, {150, 300}, {300, 150}};
  for (int i = 0; i < 3; ++i) {
    const InkBox b = Ink(v.images[i]);
    EXPECT_NEAR(b.w(), want[i][0] + 2, 1) << i;
    EXPECT_NEAR(b.h(), want[i][1] + 2, 1) << i;
    EXPECT_NEAR((b.x0 + b.x1) / 2.0, 256, 1) << i;
    EXPECT_NEAR((b.y0 + b.y1) / 2.0, 256, 1) << i;
    EXPECT_DOUBLE_EQ(v.dims[i], 2);
  }
}

TEST(RenderViews, ThroughHoleVisibleOnlyAlongItsAxis) {
  const RenderedViews v = RenderViews(FixtureCatalog()[1].model);
  EXPECT_EQ(Shapes(v.images[0], View::kFront), std::vector<Shape>{Shape::kRectangle});
  EXPECT_EQ(Shapes(v.images[1], View::kSide), std::vector<Shape>{Shape::kRectangle});
  const auto top = Shapes(v.images[2], View::kTop);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[1], Shape::kCircle);
}

TEST(RenderViews, BlindHoleIsHidden) {
  const RenderedViews blind =
      RenderViews(Model("cube size=2,2,1\ncylinder h=0.5 r=0.4 axis=z at=0,0,0.25 op=difference\n"));
  const RenderedViews plain = RenderViews(Model("cube size=2,2,1\n"));
  for (int i = 0; i < 3; ++i) EXPECT_EQ(blind.images[i], plain.images[i]) << i;
}

TEST(RenderViews, UprightCylinder) {
  const RenderedViews v = RenderViews(Model("cylinder h=2 r=0.7 axis=z\n"));
  EXPECT_EQ(Shapes(v.images[0], View::kFront), std::vector<Shape>{Shape::kRectangle});
  EXPECT_EQ(Shapes(v.images[1], View::kSide), std::vector<Shape>{Shape::kRectangle});
  EXPECT_EQ(Shapes(v.images[2], View::kTop), std::vector<Shape>{Shape::kCircle});
  const InkBox top = Ink(v.images[2]);
  EXPECT_NEAR(top.w(), 210 + 2, 1);
}

TEST(RenderViews, HexagonalPrismAlongY) {
  const RenderedViews v = RenderViews(FixtureCatalog()[3].model);
  EXPECT_EQ(Shapes(v.images[0], View::kFront), std::vector<Shape>{Shape::kHexagon});
  EXPECT_EQ(Shapes(v.images[1], View::kSide), std::vector<Shape>{Shape::kRectangle});
  EXPECT_EQ(Shapes(v.images[2], View::kTop), std::vector<Shape>{Shape::kSquare});
}

TEST(RenderViews, StrokeWidthControlsInk) {
  for (const double stroke : {1.0, 2.0, 3.0, 4.0}) {
    GroundTruthModel m = Model("cube size=2,2,2\n");
    m.canvas.stroke = stroke;
    const GrayImage img = RenderViews(m).images[0];
    // Count ink along the middle row: two crossings of the outline.
    int ink = 0;
    for (int x = 0; x < img.width(); ++x) ink += img.at(x, 256) < 128;
    EXPECT_EQ(ink, 2 * int(stroke)) << stroke;
  }
}

TEST(RenderViews, Deterministic) {
  for (const Fixture& fx : FixtureCatalog()) {
    const RenderedViews a = RenderViews(fx.model), b = RenderViews(fx.model);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(a.images[i], b.images[i]) << fx.name;
  }
}

TEST(RenderViews, OversizedModelFails) {
  try {
    RenderViews(Model("cube size=4,1,1\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRender);
  }
}

TEST(ParseModel, Defaults) {
  const GroundTruthModel m = ParseModel("# just a cube\ncube size=1,2,3\n");
  ASSERT_EQ(m.parts.size(), 1u);
  EXPECT_DOUBLE_EQ(m.canvas.ppu, 100);
  EXPECT_EQ(m.parts[0].op, BoolOp::kNone);
  const Vec3 s = std::get<Cube>(m.parts[0].primitive).size;
  EXPECT_EQ(s.x, 1);
  EXPECT_EQ(s.z, 3);
  const GroundTruthModel c = ParseModel("cylinder h=2 r=0.5 fn=6 axis=x at=1,0,0\n");
  const auto& cyl = std::get<Cylinder>(c.parts[0].primitive);
  EXPECT_EQ(cyl.fn, 6);
  EXPECT_EQ(cyl.axis, Axis::kX);
  EXPECT_EQ(c.parts[0].translation.x, 1);
}

TEST(ParseModel, ErrorsNameTheLine) {
  const std::pair<const char*, const char*> cases[] = {
      {"cube size=1,1,1\ncube bogus=1\n", "line 2"},
      {"cube size=1,1,1 size=2,2,2\n", "line 1"},
      {"cube size=1,x,1\n", "line 1"},
      {"cube size=1,1\n", "line 1"},
      {"cube size=1,1,1 rot=10,0,10\n", "line 1"},
      {"cube size=1,1,1 op=union\n", "line 1"},
      {"cube size=1,1,1\nsphere r=1\n", "line 2"},
      {"\n\ncube size=1,1,1 op=xor\n", "line 3"},
      {"cylinder h=1 r=1 axis=w\n", "line 1"},
      {"canvas ppu=-1\n", "line 1"},
  };
  for (const auto& [text, where] : cases) {
    try {
      ParseModel(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kFormat) << text;
      EXPECT_NE(std::string(e.what()).find(where), std::string::npos) << text << ": " << e.what();
    }
  }
}

TEST(ParseModel, FormatRoundTrip) {
  for (const Fixture& fx : FixtureCatalog()) {
    const GroundTruthModel back = ParseModel(FormatModel(fx.model));
    EXPECT_EQ(back.parts, fx.model.parts) << fx.name;
    EXPECT_EQ(back.canvas.ppu, fx.model.canvas.ppu);
    EXPECT_EQ(back.canvas.stroke, fx.model.canvas.stroke);
    EXPECT_EQ(FormatModel(back), FormatModel(fx.model));
  }
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    GroundTruthModel m;
    m.parts = oracle::RandomNodeList(rng);
    const GroundTruthModel back = ParseModel(FormatModel(m));
    ASSERT_EQ(back.parts.size(), m.parts.size());
    // Six decimals survive the trip.
    EXPECT_EQ(FormatModel(back), FormatModel(m));
  }
}

TEST(FixtureCatalog, MatchesShippedFiles) {
  const std::filesystem::path dir = std::filesystem::path(ORTHOCSG_SOURCE_DIR) / "data" / "fixtures";
  const auto catalog = FixtureCatalog();
  ASSERT_EQ(catalog.size(), 4u);
  for (const Fixture& fx : catalog) {
    const GroundTruthModel m = LoadModel(dir / (fx.name + ".txt"));
    EXPECT_EQ(m.parts, fx.model.parts) << fx.name;
    const RenderedViews v = RenderViews(fx.model);
    const char* names[3] = {"front", "side", "top"};
    for (int i = 0; i < 3; ++i)
      EXPECT_EQ(LoadGray(dir / (fx.name + "_" + names[i] + ".png")), v.images[i]) << fx.name << " " << names[i];
  }
  EXPECT_THROW(LoadModel(dir / "no_such_model.txt"), Error);
}

}  // namespace
}  // namespace orthocsg
