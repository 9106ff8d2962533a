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

#include "orthocsg/shape_detect.h"

#include <cmath>

#include "orthocsg/error.h"

namespace orthocsg {

std::string_view ViewName(View v) {
  switch (v) {
    case View::kFront: return "front";
    case View::kSide: return "side";
    case View::kTop: return "top";
  }
  return "?";
}

std::string_view ShapeName(Shape s) {
  switch (s) {
    case Shape::kTriangle: return "triangle";
    case Shape::kSquare: return "square";
    case Shape::kRectangle: return "rectangle";
    case Shape::kPentagon: return "pentagon";
    case Shape::kHexagon: return "hexagon";
    case Shape::kCircle: return "circle";
    case Shape::kUnidentified: return "unidentified";
  }
  return "?";
}

ShapeClass ClassFor(Shape s) {
  switch (s) {
    case Shape::kTriangle: return {s, 3};
    case Shape::kPentagon: return {s, 5};
    case Shape::kHexagon: return {s, 6};
    case Shape::kCircle: return {s, 1};
    default: return {s, 0};
  }
}

int EmittedFn(const ShapeClass& cls, const DetectConfig& cfg) {
  return cls.shape == Shape::kCircle ? cfg.smooth_fn : cls.cylinder_fn;
}

Detection Detect(const Contour& c, const DetectConfig& cfg) {
  const double peri = ArcLength(c, true);
  Detection d;
  d.approx = ApproxPolyDP(c, cfg.rdp_fraction * peri, true);
  switch (d.approx.points.size()) {
    case 0:
    case 1:
    case 2:
      d.cls = ClassFor(Shape::kUnidentified);
      break;
    case 3:
      d.cls = ClassFor(Shape::kTriangle);
      break;
    case 4: {
      const RotatedRect rect = MinAreaRect(c);
      const double ar = rect.breadth > 0 ? rect.length / rect.breadth : 0;
      const bool square = ar >= cfg.square_lo && ar <= cfg.square_hi;
      d.cls = ClassFor(square ? Shape::kSquare : Shape::kRectangle);
      break;
    }
    case 5:
      d.cls = ClassFor(Shape::kPentagon);
      break;
    case 6:
      d.cls = ClassFor(Shape::kHexagon);
      break;
    default:
      d.cls = ClassFor(Shape::kCircle);
      break;
  }
  return d;
}

DimensionResult Dimensioning(const GrayImage& img, double user_length, View view,
                             int threshold) {
  if (!(user_length > 0) || !std::isfinite(user_length))
    throw Error(ErrorCode::kPrecondition, "dimension must be a positive length");
  std::vector<Contour> outers;
  for (Contour& c : FindContours(ThresholdInv(img, threshold)))
    if (!c.is_hole) outers.push_back(std::move(c));
  if (outers.empty())
    throw Error(ErrorCode::kEmptyDrawing,
                "no closed contour in " + std::string(ViewName(view)) + " view");
  outers = SortByAreaDesc(std::move(outers));

  DimensionResult r;
  r.outer = outers.front();
  r.rect = MinAreaRect(r.outer);
  if (!(r.rect.length > 0))
    throw Error(ErrorCode::kDegenerate,
                "outermost contour of " + std::string(ViewName(view)) +
                    " view has zero extent");
  r.ratio = {user_length / r.rect.length, view};

  r.annotated = RgbImage(img);
  DrawClosedPolyline(r.annotated, r.outer.points, kHighlight);
  // Long side of the rectangle, offset to the rect's edge.
  const double a = Radians(r.rect.angle + (r.rect.length_along_angle ? 0 : 90));
  const Vec2 along{std::cos(a), std::sin(a)}, across{-along.y, along.x};
  const Vec2 mid = r.rect.center + across * (r.rect.breadth / 2);
  const Vec2 p0 = mid - along * (r.rect.length / 2), p1 = mid + along * (r.rect.length / 2);
  for (const Point p : RasterLine({int(std::lround(p0.x)), int(std::lround(p0.y))},
                                  {int(std::lround(p1.x)), int(std::lround(p1.y))}))
    if (r.annotated.Contains(p.x, p.y)) r.annotated.at(p.x, p.y) = kMeasureHighlight;
  return r;
}

}  // namespace orthocsg
