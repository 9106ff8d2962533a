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

#include <optional>
#include <string>
#include <vector>

#include "orthocsg/contour.h"
#include "orthocsg/shape_detect.h"

namespace orthocsg {

enum class BoolOp { kNone, kUnion, kDifference };
std::string_view BoolOpName(BoolOp op);

// Every view is described in its own right-handed (u, v) drawing frame, v
// pointing up the page:
//   front: looks along +y, (u, v) = (x, z)
//   side:  looks along -x, (u, v) = (y, z)
//   top:   looks along -z, (u, v) = (x, y)

/// One detected 2D shape in one view. Lengths are model units; positions are
/// relative to the centre of the view's outermost contour.
struct ShapeRecord {
  ShapeClass shape;
  Contour contour;
  Contour approx;
  double area_px = 0;
  Vec2 center_px;  // centroid of the enclosed pixels

  /// Min-area-rect sides, length >= breadth.
  double length = 0;
  double breadth = 0;
  /// Rect sides along and across `rotation_deg` (box-like shapes).
  double along = 0;
  double across = 0;
  /// Circumradius for circles and regular polygons, 0 otherwise.
  double radius = 0;
  /// Counter-clockwise rotation in the (u, v) frame. For box-like shapes in
  /// [0, 90); for polygons relative to the orientation SCAD gives an
  /// unrotated prism seen in this view.
  double rotation_deg = 0;

  Vec2 rel_translation;  // centroid
  Vec2 box_center;       // axis-aligned box centre
  Vec2 extent;           // axis-aligned box size

  std::optional<double> depth;
  BoolOp op = BoolOp::kNone;
  bool consumed = false;
  View source_view = View::kFront;
};

struct ViewObjects {
  View view = View::kFront;
  /// Each group is [parent, children...].
  std::vector<std::vector<ShapeRecord>> groups;
  DimensionRatio ratio;
  Vec2 origin_px;
  /// Axis-aligned size of the outermost contour, model units.
  Vec2 extent;
  std::vector<std::string> warnings;
};

struct ParseConfig {
  int threshold = 127;
  DetectConfig detect;
  double rotation_snap_deg = 1.5;
  /// Two contours are one stroked outline when they share a shape family,
  /// their centroids are closer than this and their area ratio is above
  /// `duplicate_area_ratio`.
  double duplicate_centroid_px = 3.0;
  double duplicate_area_ratio = 0.6;
};

/// Vertex direction, in degrees in the (u, v) frame, of a regular polygon
/// prism emitted without rotation and seen in `view`.
double PrismBaseVertexAngle(View view);

/// Maps image pixel coordinates to the view's (u, v) model frame.
Vec2 PixelToView(Vec2 px, Vec2 origin_px, double units_per_pixel);

ViewObjects ValidContours(const GrayImage& img, View view, DimensionRatio ratio,
                          const ParseConfig& cfg = {});

/// Orders groups by parent centre x: descending in the front view, ascending
/// otherwise. Group contents keep their order.
ViewObjects ReArrange(ViewObjects objs);

}  // namespace orthocsg
