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

#include "orthocsg/view_parser.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "orthocsg/error.h"

namespace orthocsg {

std::string_view BoolOpName(BoolOp op) {
  switch (op) {
    case BoolOp::kNone: return "none";
    case BoolOp::kUnion: return "union";
    case BoolOp::kDifference: return "difference";
  }
  return "?";
}

double PrismBaseVertexAngle(View view) {
  // Front prisms are laid along y by rotate([90,0,0]) and side prisms along
  // x by rotate([0,90,0]), which turns their first vertex to point down.
  return view == View::kSide ? -90.0 : 0.0;
}

Vec2 PixelToView(Vec2 px, Vec2 origin_px, double units_per_pixel) {
  return {(px.x - origin_px.x) * units_per_pixel,
          (origin_px.y - px.y) * units_per_pixel};
}

namespace {

struct Candidate {
  Contour contour;
  Detection det;
  double area = 0;
  std::optional<Centroid> centroid;
};

bool SameFamily(const ShapeClass& a, const ShapeClass& b) {
  if (a.IsBoxLike() && b.IsBoxLike()) return true;
  return a.shape == b.shape;
}

bool IsStrokeDuplicate(const Candidate& outer, const Candidate& hole,
                       const ParseConfig& cfg) {
  if (!outer.centroid || !hole.centroid) return false;
  if (!SameFamily(outer.det.cls, hole.det.cls)) return false;
  const double d = std::hypot(outer.centroid->cx - hole.centroid->cx,
                              outer.centroid->cy - hole.centroid->cy);
  if (d >= cfg.duplicate_centroid_px) return false;
  const double hi = std::max(outer.area, hole.area);
  const double lo = std::min(outer.area, hole.area);
  return hi > 0 && lo / hi > cfg.duplicate_area_ratio;
}

double WrapHalf(double deg, double period) {
  double a = std::fmod(deg, period);
  if (a < -period / 2) a += period;
  if (a >= period / 2) a -= period;
  return a;
}

// Rotation of a regular n-gon from its simplified vertices: circular mean of
// n * (vertex angle - base angle).
double PolygonRotation(const ShapeRecord& r, View view, double snap) {
  const int n = r.shape.cylinder_fn;
  if (n < 3 || int(r.approx.points.size()) != n) return 0;
  std::complex<double> acc;
  for (const Point p : r.approx.points) {
    const double phi = Degrees(std::atan2(-(p.y - r.center_px.y), p.x - r.center_px.x));
    acc += std::polar(1.0, Radians(n * (phi - PrismBaseVertexAngle(view))));
  }
  if (std::abs(acc) < 1e-9) return 0;
  const double alpha = WrapHalf(Degrees(std::arg(acc)) / n, 360.0 / n);
  return std::abs(alpha) < snap ? 0 : alpha;
}

ShapeRecord MakeRecord(const Candidate& c, View view, Vec2 origin, double ratio,
                       const ParseConfig& cfg) {
  ShapeRecord r;
  r.shape = c.det.cls;
  r.contour = c.contour;
  r.approx = c.det.approx;
  r.area_px = c.area;
  r.center_px = {c.centroid->cx, c.centroid->cy};
  r.source_view = view;

  const RotatedRect rect = MinAreaRect(c.contour);
  r.length = rect.length * ratio;
  r.breadth = rect.breadth * ratio;

  // Image angles run clockwise on screen; the view frame is y-up.
  const Vec2 sides = rect.SidesAlongAngle();
  double alpha = 0, along = sides.x, across = sides.y;
  if (rect.angle > 0) {
    alpha = 90.0 - rect.angle;
    std::swap(along, across);
  }
  if (alpha < cfg.rotation_snap_deg) {
    alpha = 0;
  } else if (alpha > 90.0 - cfg.rotation_snap_deg) {
    alpha = 0;
    std::swap(along, across);
  }
  r.along = along * ratio;
  r.across = across * ratio;

  if (r.shape.IsBoxLike()) {
    r.rotation_deg = alpha;
  } else if (r.shape.shape == Shape::kCircle) {
    r.radius = (rect.length + rect.breadth) / 4 * ratio;
  } else {
    const int n = r.shape.cylinder_fn;
    const double a = ContourArea(c.contour);
    r.radius = std::sqrt(2 * a / (n * std::sin(2 * std::numbers::pi / n))) * ratio;
    r.rotation_deg = PolygonRotation(r, view, cfg.rotation_snap_deg);
  }

  const Rect box = BoundingRect(c.contour);
  r.rel_translation = PixelToView(r.center_px, origin, ratio);
  r.box_center = PixelToView({box.x + box.w / 2.0, box.y + box.h / 2.0}, origin, ratio);
  r.extent = {box.w * ratio, box.h * ratio};
  return r;
}

}  // namespace

ViewObjects ValidContours(const GrayImage& img, View view, DimensionRatio ratio,
                          const ParseConfig& cfg) {
  if (!(ratio.units_per_pixel > 0) || !std::isfinite(ratio.units_per_pixel))
    throw Error(ErrorCode::kPrecondition, "unit-per-pixel ratio must be positive");
  ViewObjects objs;
  objs.view = view;
  objs.ratio = ratio;

  std::vector<Contour> contours = FindContours(ThresholdInv(img, cfg.threshold));
  if (contours.empty()) return objs;

  std::vector<Candidate> cand(contours.size());
  for (size_t i = 0; i < contours.size(); ++i) {
    Candidate& c = cand[i];
    c.contour = contours[i];
    c.area = ContourArea(c.contour);
    c.det = Detect(c.contour, cfg.detect);
    const Moments m = ContourMoments(c.contour);
    if (m.m00 > 0) c.centroid = CentroidOf(m);
  }

  // Outermost contour: the largest outer border.
  const Candidate* outermost = nullptr;
  for (const Candidate& c : cand)
    if (!c.contour.is_hole && (!outermost || c.area > outermost->area)) outermost = &c;
  const Rect obox = BoundingRect(outermost->contour);
  objs.origin_px = {obox.x + obox.w / 2.0, obox.y + obox.h / 2.0};
  objs.extent = {obox.w * ratio.units_per_pixel, obox.h * ratio.units_per_pixel};

  // Collapse stroked outlines to their inner side. An outer border whose
  // component encloses several faces is a composite silhouette and is
  // represented by those faces instead.
  std::vector<char> keep(cand.size(), 1);
  for (size_t i = 0; i < cand.size(); ++i) {
    if (cand[i].contour.is_hole) continue;
    int holes = 0;
    bool duplicate = false;
    for (const Candidate& h : cand) {
      if (!h.contour.is_hole || h.contour.parent_id != cand[i].contour.id) continue;
      ++holes;
      duplicate = duplicate || IsStrokeDuplicate(cand[i], h, cfg);
    }
    if (duplicate || holes >= 2) keep[i] = 0;
  }

  std::vector<Candidate> kept;
  for (size_t i = 0; i < cand.size(); ++i) {
    if (!keep[i]) continue;
    if (!cand[i].centroid) continue;
    if (cand[i].det.cls.shape == Shape::kUnidentified) {
      objs.warnings.push_back("dropped unidentified contour #" +
                              std::to_string(cand[i].contour.id) + " in " +
                              std::string(ViewName(view)) + " view");
      continue;
    }
    kept.push_back(cand[i]);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const Candidate& a, const Candidate& b) { return a.area > b.area; });

  for (const Candidate& c : kept) {
    ShapeRecord rec = MakeRecord(c, view, objs.origin_px, ratio.units_per_pixel, cfg);
    bool placed = false;
    for (auto& group : objs.groups) {
      if (PointPolygonTest(group.front().contour, rec.center_px, false) > 0) {
        rec.op = BoolOp::kDifference;  // provisional; assembly decides
        group.push_back(std::move(rec));
        placed = true;
        break;
      }
    }
    if (!placed) objs.groups.push_back({std::move(rec)});
  }
  return objs;
}

ViewObjects ReArrange(ViewObjects objs) {
  const bool descending = objs.view == View::kFront;
  std::stable_sort(objs.groups.begin(), objs.groups.end(),
                   [&](const auto& a, const auto& b) {
                     const double xa = a.front().center_px.x, xb = b.front().center_px.x;
                     return descending ? xa > xb : xa < xb;
                   });
  return objs;
}

}  // namespace orthocsg
