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

#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "orthocsg/assembler.h"
#include "orthocsg/image.h"
#include "orthocsg/shape_detect.h"
#include "orthocsg/view_parser.h"

namespace orthocsg {

struct PipelineConfig {
  ParseConfig parse;
  AssemblyConfig assembly;
  /// Parse the three views on separate threads.
  bool parallel_views = true;
};

/// Wall times in milliseconds.
struct StageTimings {
  double views_ms = 0;     // dimensioning, detection, grouping
  double assembly_ms = 0;
  double emit_ms = 0;
  double total_ms = 0;
};

struct Reconstruction {
  std::array<DimensionResult, 3> dimensions;  // front, side, top
  std::array<ViewObjects, 3> views;
  Assembly assembly;
  std::vector<SolidNode> nodes;
  std::string scad;
  StageTimings timings;
  std::vector<std::string> warnings;
};

/// Images and user lengths in front, side, top order.
Reconstruction Reconstruct(const std::array<GrayImage, 3>& images,
                           const std::array<double, 3>& lengths,
                           const PipelineConfig& cfg = {});

/// Writes the annotated dimensioning images and a text report of every
/// record and its fate into `dir`.
void WriteDebug(const Reconstruction& r, const std::filesystem::path& dir);

}  // namespace orthocsg
