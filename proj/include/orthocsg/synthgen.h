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
#include <string_view>
#include <vector>

#include "orthocsg/assembler.h"
#include "orthocsg/image.h"

namespace orthocsg {

struct Canvas {
  double ppu = 100;  // pixels per model unit
  int width = 512;
  int height = 512;
  double stroke = 2;  // line width, pixels
};

/// A model to draw. Parts use the same conventions as assembled solids:
/// op kNone marks a parent, children follow it.
struct GroundTruthModel {
  std::vector<SolidNode> parts;
  Canvas canvas;
};

struct RenderedViews {
  std::array<GrayImage, 3> images;  // front, side, top
  /// Longest side of each view's outer silhouette, model units.
  std::array<double, 3> dims{};
};

/// Parses the line-based model format:
///
///   # comment
///   canvas ppu=150 width=512 height=512 stroke=2
///   cube size=2,1,2 at=0,0,0 rot=0,0,0 op=none
///   cylinder h=1 r=0.4 fn=100 axis=z at=0.4,0.3,0 op=difference
///
/// Keys may appear in any order; omitted ones take the defaults shown by
/// FormatModel. Throws kFormat with the line number on bad input.
GroundTruthModel ParseModel(std::string_view text);
GroundTruthModel LoadModel(const std::filesystem::path& path);
std::string FormatModel(const GroundTruthModel& m);

/// Orthographic outline drawings, black strokes on white. Parents and unions
/// are outlined in every view; a difference only where it cuts through the
/// model along the viewing direction, the rest being hidden. Throws kRender
/// when a silhouette leaves the canvas margin.
RenderedViews RenderViews(const GroundTruthModel& m);

struct Fixture {
  std::string name;
  GroundTruthModel model;
};

/// block, block_hole, block_boss, prism.
std::vector<Fixture> FixtureCatalog();

}  // namespace orthocsg
