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
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "oracles.h"
#include "orthocsg/error.h"
#include "orthocsg/scad_emit.h"
#include "test_util.h"

namespace orthocsg {
namespace {

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ExpectRecovered(const GroundTruthModel& m, const Reconstruction& r, const std::string& what) {
  for (const std::string& e : test::RoundTripErrors(m, r.nodes)) ADD_FAILURE() << what << ": " << e;
}

TEST(Reconstruct, CatalogRoundTrip) {
  for (const Fixture& fx : FixtureCatalog()) ExpectRecovered(fx.model, test::RoundTrip(fx.model), fx.name);
}

TEST(Reconstruct, StrokeWidthsKeepTopology) {
  for (const Fixture& fx : FixtureCatalog()) {
    for (const double stroke : {1.0, 2.0, 3.0}) {
      GroundTruthModel m = fx.model;
      m.canvas.stroke = stroke;
      ExpectRecovered(m, test::RoundTrip(m), fx.name + " stroke " + std::to_string(stroke));
    }
  }
}

TEST(Reconstruct, ExtraModels) {
  const char* models[] = {
      "cube size=2,1,2 at=0,0,0\n",
      "cylinder h=3 r=0.5 fn=100 axis=y\n",
      "cylinder h=2 r=0.8 fn=100 axis=z\n",
      "cube size=2,2,1 at=0,0,-0.5\ncube size=1,1,1 at=0,0,0.5 op=union\n",
      "cube size=2.5,1.5,1\ncylinder h=1.5 r=0.3 fn=100 axis=y at=-0.6,0,0 op=difference\n",
  };
  for (const char* text : models) {
    const GroundTruthModel m = ParseModel(std::string("canvas ppu=150 width=512 height=512 stroke=2\n") + text);
    ExpectRecovered(m, test::RoundTrip(m), text);
  }
}

TEST(Reconstruct, DeterministicAndOrderIndependent) {
  for (const Fixture& fx : FixtureCatalog()) {
    PipelineConfig serial;
    serial.parallel_views = false;
    const Reconstruction a = test::RoundTrip(fx.model), b = test::RoundTrip(fx.model, serial);
    EXPECT_EQ(a.scad, b.scad) << fx.name;
    EXPECT_EQ(a.nodes, b.nodes) << fx.name;
    EXPECT_EQ(a.scad, EmitScad(a.nodes));
    EXPECT_GE(a.timings.total_ms, a.timings.emit_ms);
  }
}

TEST(Reconstruct, BlankDrawingFails) {
  const GrayImage blank(64, 64, 255);
  try {
    Reconstruct({blank, blank, blank}, {1, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyDrawing);
  }
}

TEST(Reconstruct, DebugOutput) {
  const auto dir = test::TempDir();
  WriteDebug(test::RoundTrip(FixtureCatalog()[1].model), dir);
  for (const char* f : {"front_dimension.png", "side_dimension.png", "top_dimension.png", "report.txt"})
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
}

TEST(Reconstruct, MatchesGoldenFiles) {
  const std::filesystem::path src(ORTHOCSG_SOURCE_DIR);
  for (const Fixture& fx : FixtureCatalog())
    EXPECT_EQ(test::RoundTrip(fx.model).scad, Slurp(src / "tests" / "golden" / (fx.name + ".scad"))) << fx.name;
}

// ---- command line ----

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun Cli(const std::string& args, const std::filesystem::path& dir) {
  const auto log = dir / "cli.log";
  const std::string cmd = std::string(ORTHOCSG_CLI) + " " + args + " </dev/null >" + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, Slurp(log)};
}

std::string FixtureArgs(const std::string& name) {
  const std::string d = std::string(ORTHOCSG_SOURCE_DIR) + "/data/fixtures/" + name;
  return "--front " + d + "_front.png --side " + d + "_side.png --top " + d + "_top.png" +
         " --front-dim 2 --side-dim 2 --top-dim 2";
}

TEST(Cli, ReconstructsFixture) {
  const auto dir = test::TempDir();
  const CliRun r = Cli(FixtureArgs("block_hole") + " --out " + (dir / "m.scad").string(), dir);
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("reconstruction: "), std::string::npos);
  EXPECT_NE(r.out.find(" ms"), std::string::npos);
  const std::string scad = Slurp(dir / "m.scad");
  EXPECT_EQ(oracle::CountSubstr(scad, "difference() {"), 1);
  EXPECT_EQ(scad, Slurp(std::filesystem::path(ORTHOCSG_SOURCE_DIR) / "tests" / "golden" / "block_hole.scad"));
}

TEST(Cli, MissingViewWithoutTerminal) {
  const auto dir = test::TempDir();
  const std::string d = std::string(ORTHOCSG_SOURCE_DIR) + "/data/fixtures/block";
  const CliRun r = Cli("--front " + d + "_front.png --top " + d + "_top.png --front-dim 2 --top-dim 2", dir);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("error: missing-input"), std::string::npos) << r.out;
  const CliRun no_dim = Cli("--front " + d + "_front.png --side " + d + "_side.png --top " + d + "_top.png", dir);
  EXPECT_EQ(no_dim.status, 2);
}

TEST(Cli, ExitCodes) {
  const auto dir = test::TempDir();
  SavePng(GrayImage(64, 64, 255), dir / "blank.png");
  const std::string b = (dir / "blank.png").string();
  EXPECT_EQ(Cli("--front " + b + " --side " + b + " --top " + b + " --front-dim 1 --side-dim 1 --top-dim 1", dir).status, 3);
  std::ofstream(dir / "junk.png") << "not an image";
  const std::string j = (dir / "junk.png").string();
  EXPECT_EQ(Cli("--front " + j + " --side " + j + " --top " + j + " --front-dim 1 --side-dim 1 --top-dim 1", dir).status, 5);
  const std::string f = std::string(ORTHOCSG_SOURCE_DIR) + "/data/fixtures/";
  const CliRun mismatch = Cli("--front " + f + "block_front.png --side " + f + "block_hole_side.png --top " + f +
                               "block_top.png --front-dim 2 --side-dim 2 --top-dim 2 --out " + (dir / "x.scad").string(),
                           dir);
  EXPECT_EQ(mismatch.status, 4) << mismatch.out;
}

TEST(Cli, RepeatableOutputs) {
  const auto dir = test::TempDir();
  for (const char* run : {"a", "b"}) {
    const CliRun r = Cli(FixtureArgs("block_boss") + " --out " + (dir / (std::string(run) + ".scad")).string() +
                          " --cloud " + (dir / (std::string(run) + ".ply")).string() + " --points 2000 --seed 9",
                      dir);
    ASSERT_EQ(r.status, 0) << r.out;
  }
  EXPECT_EQ(Slurp(dir / "a.scad"), Slurp(dir / "b.scad"));
  EXPECT_EQ(Slurp(dir / "a.ply"), Slurp(dir / "b.ply"));
  EXPECT_NE(Slurp(dir / "a.ply").find("element vertex 2000\n"), std::string::npos);
}

}  // namespace
}  // namespace orthocsg
