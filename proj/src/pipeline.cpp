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

#include "orthocsg/pipeline.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>

#include "orthocsg/error.h"
#include "orthocsg/scad_emit.h"

namespace orthocsg {

namespace {

using Clock = std::chrono::steady_clock;

double Ms(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

struct ParsedView {
  DimensionResult dim;
  ViewObjects objs;
};

ParsedView ParseView(const GrayImage& img, double length, View view, const ParseConfig& cfg) {
  ParsedView out;
  out.dim = Dimensioning(img, length, view, cfg.threshold);
  out.objs = ReArrange(ValidContours(img, view, out.dim.ratio, cfg));
  return out;
}

}  // namespace

Reconstruction Reconstruct(const std::array<GrayImage, 3>& images,
                           const std::array<double, 3>& lengths, const PipelineConfig& cfg) {
  Reconstruction r;
  const auto t0 = Clock::now();
  constexpr View kViews[3] = {View::kFront, View::kSide, View::kTop};

  std::array<ParsedView, 3> parsed;
  if (cfg.parallel_views) {
    std::array<std::future<ParsedView>, 3> jobs;
    for (int i = 0; i < 3; ++i)
      jobs[i] = std::async(std::launch::async, ParseView, std::cref(images[i]), lengths[i],
                           kViews[i], std::cref(cfg.parse));
    // get() in view order so the first failing view is the one reported.
    for (int i = 0; i < 3; ++i) parsed[i] = jobs[i].get();
  } else {
    for (int i = 0; i < 3; ++i) parsed[i] = ParseView(images[i], lengths[i], kViews[i], cfg.parse);
  }
  for (int i = 0; i < 3; ++i) {
    r.dimensions[i] = std::move(parsed[i].dim);
    r.views[i] = std::move(parsed[i].objs);
    for (const auto& w : r.views[i].warnings) r.warnings.push_back(w);
  }
  const auto t1 = Clock::now();

  AssemblyConfig acfg = cfg.assembly;
  acfg.smooth_fn = cfg.parse.detect.smooth_fn;
  r.assembly = Combining(r.views[0], r.views[1], r.views[2], acfg);
  r.nodes = Flatten(r.assembly.groups);
  for (const auto& w : r.assembly.warnings) r.warnings.push_back(w);
  const auto t2 = Clock::now();

  r.scad = EmitScad(r.nodes);
  const auto t3 = Clock::now();

  r.timings = {Ms(t0, t1), Ms(t1, t2), Ms(t2, t3), Ms(t0, t3)};
  return r;
}

void WriteDebug(const Reconstruction& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
  for (int i = 0; i < 3; ++i) {
    const auto name = std::string(ViewName(View(i)));
    if (!r.dimensions[i].annotated.data().empty())
      SavePng(r.dimensions[i].annotated, dir / (name + "_dimension.png"));
  }
  std::ofstream f(dir / "report.txt");
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + (dir / "report.txt").string());
  char buf[256];
  for (const ViewObjects& v : r.views) {
    std::snprintf(buf, sizeof(buf), "%s view: %.6f units/px, extent %.4f x %.4f\n",
                  std::string(ViewName(v.view)).c_str(), v.ratio.units_per_pixel, v.extent.x,
                  v.extent.y);
    f << buf;
    for (size_t g = 0; g < v.groups.size(); ++g)
      for (size_t i = 0; i < v.groups[g].size(); ++i) {
        const ShapeRecord& s = v.groups[g][i];
        std::snprintf(buf, sizeof(buf),
                      "  [%zu.%zu] %-10s len %.4f br %.4f r %.4f rot %.2f at (%.4f, %.4f) %s\n", g,
                      i, std::string(ShapeName(s.shape.shape)).c_str(), s.length, s.breadth,
                      s.radius, s.rotation_deg, s.box_center.x, s.box_center.y,
                      std::string(BoolOpName(s.op)).c_str());
        f << buf;
      }
  }
  f << "fates:\n";
  for (const RecordFate& fate : r.assembly.fates) {
    f << "  " << ViewName(fate.view) << " [" << fate.group << "." << fate.index << "] consumed "
      << fate.times_consumed << (fate.ignored ? " ignored: " + fate.reason : "") << "\n";
  }
  for (const auto& w : r.warnings) f << "warning: " << w << "\n";
  std::snprintf(buf, sizeof(buf), "views %.3f ms, assembly %.3f ms, emit %.3f ms, total %.3f ms\n",
                r.timings.views_ms, r.timings.assembly_ms, r.timings.emit_ms, r.timings.total_ms);
  f << buf;
}

}  // namespace orthocsg
