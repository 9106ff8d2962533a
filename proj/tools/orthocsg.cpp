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

// Rebuilds a CSG solid from front, side and top drawings and writes SCAD,
// optionally with a sampled point cloud.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "orthocsg/cloud.h"
#include "orthocsg/error.h"
#include "orthocsg/pipeline.h"
#include "orthocsg/scad_emit.h"

namespace fs = std::filesystem;
using namespace orthocsg;

namespace {

enum Exit { kOk = 0, kOther = 1, kMissingInput = 2, kEmpty = 3, kMismatch = 4, kIoFailure = 5 };

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyDrawing: return kEmpty;
    case ErrorCode::kAssemblyMismatch:
    case ErrorCode::kMissingDepth: return kMismatch;
    case ErrorCode::kIo:
    case ErrorCode::kFormat: return kIoFailure;
    default: return kOther;
  }
}

int MissingInput(const CLI::App& app, const std::string& msg) {
  std::cerr << "error: missing-input: " << msg << "\n" << app.help();
  return kMissingInput;
}

std::optional<double> Prompt(const char* view) {
  std::cerr << "Length of the longest side of the " << view << " view: " << std::flush;
  double v = 0;
  if (std::cin >> v) return v;
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruct a CSG model from three orthographic drawings"};
  std::string paths[3];
  std::optional<double> dims[3];
  std::string out = "model.scad", cloud_path, debug_dir;
  size_t points = 10000;
  uint64_t seed = 0;
  double poisson = 0;
  bool normals = false;
  std::vector<double> band;
  PipelineConfig cfg;

  app.add_option("--front", paths[0], "Front view image (PNG or BMP)");
  app.add_option("--side", paths[1], "Side view image");
  app.add_option("--top", paths[2], "Top view image");
  app.add_option("--front-dim", dims[0], "Longest side of the front outline, model units");
  app.add_option("--side-dim", dims[1], "Longest side of the side outline, model units");
  app.add_option("--top-dim", dims[2], "Longest side of the top outline, model units");
  app.add_option("--out", out, "SCAD output path")->capture_default_str();
  app.add_option("--cloud", cloud_path, "Also write a sampled point cloud (PLY)");
  app.add_option("--points", points, "Point count for --cloud")->capture_default_str();
  app.add_option("--seed", seed, "Sampling seed")->capture_default_str();
  app.add_option("--poisson", poisson, "Blue-noise thinning radius, 0 = off");
  app.add_flag("--normals", normals, "Include normals in the PLY");
  app.add_option("--threshold", cfg.parse.threshold, "Binarization threshold")
      ->capture_default_str()
      ->check(CLI::Range(0, 254));
  app.add_option("--round-off", cfg.assembly.round_off_approx, "Matching tolerance, model units")
      ->capture_default_str();
  app.add_option("--square-band", band, "Aspect band accepted as square: LO HI")->expected(2);
  app.add_option("--debug-dir", debug_dir, "Write annotated images and a report here");
  CLI11_PARSE(app, argc, argv);

  const char* names[3] = {"front", "side", "top"};
  for (int i = 0; i < 3; ++i) {
    if (paths[i].empty()) return MissingInput(app, std::string("--") + names[i] + " is required");
    if (!fs::exists(paths[i])) return MissingInput(app, paths[i] + " does not exist");
  }
  const bool tty = isatty(fileno(stdin));
  for (int i = 0; i < 3; ++i) {
    if (!dims[i] && tty) dims[i] = Prompt(names[i]);
    if (!dims[i]) return MissingInput(app, std::string("--") + names[i] + "-dim is required");
  }
  if (band.size() == 2) {
    cfg.parse.detect.square_lo = band[0];
    cfg.parse.detect.square_hi = band[1];
  }

  try {
    std::array<GrayImage, 3> images;
    for (int i = 0; i < 3; ++i) images[i] = LoadGray(paths[i]);
    const Reconstruction r = Reconstruct(images, {*dims[0], *dims[1], *dims[2]}, cfg);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    if (!debug_dir.empty()) WriteDebug(r, debug_dir);
    if (!WriteScad(r.nodes, out)) return kEmpty;

    std::printf("views: %.3f ms\nassembly: %.3f ms\nemit: %.3f ms\nreconstruction: %.3f ms\n",
                r.timings.views_ms, r.timings.assembly_ms, r.timings.emit_ms, r.timings.total_ms);
    std::printf("wrote %s (%zu primitives)\n", out.c_str(), r.nodes.size());

    if (!cloud_path.empty()) {
      const auto t0 = std::chrono::steady_clock::now();
      SampleOptions opts;
      opts.seed = seed;
      PointCloud cloud = SampleSurface(CsgSdf(r.nodes), points, opts);
      if (poisson > 0) cloud = ThinPoisson(cloud, poisson);
      WritePly(cloud, cloud_path, normals);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      std::printf("point cloud: %.3f ms\nwrote %s (%zu points)\n", ms, cloud_path.c_str(),
                  cloud.points.size());
    }
  } catch (const Error& e) {
    std::cerr << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return ExitFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kOther;
  }
  return kOk;
}
