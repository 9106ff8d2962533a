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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "orthocsg/geometry.h"
#include "orthocsg/image.h"

namespace orthocsg {

/// Closed loop of pixel coordinates. Extraction produces a full 8-connected
/// chain; holes link back to the outer border of their component.
struct Contour {
  std::vector<Point> points;
  int id = 0;
  std::optional<int> parent_id;
  bool is_hole = false;
};

/// Raw discrete moments, sum over pixels of x^i y^j I(x, y). Integer exact.
struct Moments {
  int64_t m00 = 0, m10 = 0, m01 = 0;
  int64_t m20 = 0, m11 = 0, m02 = 0;
  friend bool operator==(const Moments&, const Moments&) = default;
};

struct Centroid {
  double cx = 0;
  double cy = 0;
};

/// Axis-aligned box: w and h are coordinate spans, so a single point has
/// zero size.
struct Rect {
  int x = 0, y = 0, w = 0, h = 0;
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Minimum-area enclosing rectangle. `angle` is in degrees in [0, 90) and
/// gives the direction of one side in the coordinate frame of the input
/// points; `length_along_angle` tells whether that side is the long one.
struct RotatedRect {
  Vec2 center;
  double length = 0;
  double breadth = 0;
  double angle = 0;
  bool length_along_angle = true;

  double Area() const { return length * breadth; }
  /// Side lengths (along angle, across angle).
  Vec2 SidesAlongAngle() const {
    return length_along_angle ? Vec2{length, breadth} : Vec2{breadth, length};
  }
};

/// Border following on the foreground (non-zero) pixels: 8-connectivity for
/// the foreground, 4-connectivity for background holes. Returns outer borders
/// and hole borders in raster-scan discovery order; only two hierarchy levels
/// are kept, so an island inside a hole is a new outer contour.
std::vector<Contour> FindContours(const BinaryImage& img);

double ContourArea(std::span<const Point> pts);
inline double ContourArea(const Contour& c) { return ContourArea(c.points); }

/// Stable sort, largest shoelace area first.
std::vector<Contour> SortByAreaDesc(std::vector<Contour> contours);

/// Calls `span(y, x0, x1)` for every maximal run of lattice points lying
/// inside or on the closed polygon, row by row from the top.
void ScanRegion(std::span<const Point> pts,
                const std::function<void(int y, int x0, int x1)>& span);

/// Moments of the whole image, weighted by pixel intensity.
Moments ImageMoments(const GrayImage& img);

/// Moments of the pixels enclosed by the contour (boundary included). With
/// no image every enclosed pixel weighs 1; otherwise its intensity, and
/// pixels outside the image are skipped.
Moments ContourMoments(const Contour& c, const GrayImage* img = nullptr);

/// Throws kDegenerate when m00 == 0.
Centroid CentroidOf(const Moments& m);

Rect BoundingRect(std::span<const Point> pts);
inline Rect BoundingRect(const Contour& c) { return BoundingRect(c.points); }

/// Andrew's monotone chain; counter-clockwise in a y-up frame, no collinear
/// points.
std::vector<Vec2> ConvexHull(std::vector<Vec2> pts);

RotatedRect MinAreaRect(std::span<const Vec2> pts);
RotatedRect MinAreaRect(const Contour& c);

/// Signed distance from p to the closed polygon: positive inside, negative
/// outside, 0 on the boundary. When `measure_dist` is false returns only
/// +1 / -1 / 0.
double PointPolygonTest(std::span<const Point> poly, Vec2 p, bool measure_dist);
inline double PointPolygonTest(const Contour& c, Vec2 p, bool measure_dist) {
  return PointPolygonTest(c.points, p, measure_dist);
}

double ArcLength(std::span<const Point> pts, bool closed);
inline double ArcLength(const Contour& c, bool closed) {
  return ArcLength(c.points, closed);
}

/// Ramer-Douglas-Peucker simplification. The result keeps the id/hierarchy
/// of the input.
Contour ApproxPolyDP(const Contour& c, double epsilon, bool closed);

/// Distance from p to segment ab.
double SegmentDistance(Vec2 p, Vec2 a, Vec2 b);

}  // namespace orthocsg
