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

#include <string_view>

#include "orthocsg/contour.h"
#include "orthocsg/image.h"

namespace orthocsg {

enum class View { kFront, kSide, kTop };
std::string_view ViewName(View v);

enum class Shape {
  kTriangle,
  kSquare,
  kRectangle,
  kPentagon,
  kHexagon,
  kCircle,
  kUnidentified,
};
std::string_view ShapeName(Shape s);

/// Shape name plus the facet count SCAD's cylinder() needs to build it as a
/// regular prism: 3/5/6 for polygons, 1 for a circle (emitted smooth), 0 for
/// the cube family and unidentified shapes.
struct ShapeClass {
  Shape shape = Shape::kUnidentified;
  int cylinder_fn = 0;

  bool IsBoxLike() const {
    return shape == Shape::kSquare || shape == Shape::kRectangle;
  }
  bool IsRound() const {
    return shape == Shape::kTriangle || shape == Shape::kPentagon ||
           shape == Shape::kHexagon || shape == Shape::kCircle;
  }
  friend bool operator==(const ShapeClass&, const ShapeClass&) = default;
};

ShapeClass ClassFor(Shape s);

struct DetectConfig {
  /// Min-area-rect aspect ratio band accepted as a square.
  double square_lo = 0.95;
  double square_hi = 1.05;
  /// Facet count used when emitting circles.
  int smooth_fn = 100;
  /// RDP tolerance as a fraction of the closed perimeter.
  double rdp_fraction = 0.015;

  static DetectConfig StrictSquareBand() {
    DetectConfig c;
    c.square_lo = 0.999;
    c.square_hi = 1.001;
    return c;
  }
};

struct Detection {
  ShapeClass cls;
  Contour approx;
};

/// Classifies a closed contour by the vertex count of its RDP simplification.
Detection Detect(const Contour& c, const DetectConfig& cfg = {});

/// Facet count to emit for a detected class.
int EmittedFn(const ShapeClass& cls, const DetectConfig& cfg);

struct DimensionRatio {
  double units_per_pixel = 0;
  View view = View::kFront;
};

struct DimensionResult {
  DimensionRatio ratio;
  Contour outer;
  RotatedRect rect;
  /// Input with the outer contour and its measured (longest) side drawn.
  RgbImage annotated;
};

/// Per-view scale from the user's length of the longest side of the min-area
/// rectangle around the largest outer contour.
DimensionResult Dimensioning(const GrayImage& img, double user_length, View view,
                             int threshold = 127);

}  // namespace orthocsg
