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

#include "orthocsg/contour.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <utility>

#include "orthocsg/error.h"

namespace orthocsg {

namespace {

// Direction k steps counter-clockwise on screen (y grows downwards).
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, -1, -1, -1, 0, 1, 1, 1};

int DirectionOf(int dx, int dy) {
  for (int k = 0; k < 8; ++k)
    if (kDx[k] == dx && kDy[k] == dy) return k;
  return -1;
}

struct BorderInfo {
  bool is_hole = false;
  int parent = 0;  // border number
};

// Sum of k for k in [lo, hi], and of k^2.
int64_t SumRange(int64_t lo, int64_t hi) {
  return (hi * (hi + 1) - (lo - 1) * lo) / 2;
}
int64_t SumSqRange(int64_t lo, int64_t hi) {
  auto p = [](int64_t k) { return k * (k + 1) * (2 * k + 1); };
  return (p(hi) - p(lo - 1)) / 6;
}

}  // namespace

std::vector<Contour> FindContours(const BinaryImage& img) {
  const int w = img.width() + 2, h = img.height() + 2;
  std::vector<int> f(size_t(w) * h, 0);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      f[size_t(y + 1) * w + x + 1] = img.at(x, y) != 0 ? 1 : 0;
  auto F = [&](int x, int y) -> int& { return f[size_t(y) * w + x]; };

  std::vector<Contour> out;
  // Border number -> info; border 1 is the image frame, treated as a hole.
  std::vector<BorderInfo> borders = {{}, {true, 0}};
  std::unordered_map<int, int> border_to_contour;
  int nbd = 1;

  for (int y = 1; y < h - 1; ++y) {
    int lnbd = 1;
    for (int x = 1; x < w - 1; ++x) {
      const int v = F(x, y);
      if (v == 0) continue;
      int fromx = 0, fromy = 0;
      bool hole;
      if (v == 1 && F(x - 1, y) == 0) {
        hole = false;
        fromx = x - 1;
        fromy = y;
      } else if (v >= 1 && F(x + 1, y) == 0) {
        hole = true;
        fromx = x + 1;
        fromy = y;
        if (v > 1) lnbd = v;
      } else {
        if (v != 1) lnbd = std::abs(v);
        continue;
      }

      ++nbd;
      const BorderInfo& last = borders[lnbd];
      BorderInfo info{hole, 0};
      if (hole == last.is_hole)
        info.parent = last.parent;
      else
        info.parent = lnbd;
      borders.push_back(info);

      Contour c;
      c.id = int(out.size());
      c.is_hole = hole;
      c.points.push_back({x - 1, y - 1});

      // Clockwise search for the first non-zero neighbour.
      const int start_dir = DirectionOf(fromx - x, fromy - y);
      int first = -1;
      for (int s = 0; s < 8; ++s) {
        const int k = (start_dir - s + 8) % 8;
        if (F(x + kDx[k], y + kDy[k]) != 0) {
          first = k;
          break;
        }
      }
      if (first < 0) {
        F(x, y) = -nbd;
      } else {
        const int x1 = x + kDx[first], y1 = y + kDy[first];
        int x2 = x1, y2 = y1, x3 = x, y3 = y;
        for (;;) {
          const int back = DirectionOf(x2 - x3, y2 - y3);
          bool east_zero = false;
          int x4 = x3, y4 = y3;
          for (int s = 1; s <= 8; ++s) {
            const int k = (back + s) % 8;
            const int nx = x3 + kDx[k], ny = y3 + kDy[k];
            if (F(nx, ny) != 0) {
              x4 = nx;
              y4 = ny;
              break;
            }
            if (k == 0) east_zero = true;
          }
          if (east_zero)
            F(x3, y3) = -nbd;
          else if (F(x3, y3) == 1)
            F(x3, y3) = nbd;
          if (x4 == x && y4 == y && x3 == x1 && y3 == y1) break;
          c.points.push_back({x4 - 1, y4 - 1});
          x2 = x3;
          y2 = y3;
          x3 = x4;
          y3 = y4;
        }
        // The loop closes back on the start pixel; drop the duplicate.
        if (c.points.size() > 1 && c.points.back() == c.points.front())
          c.points.pop_back();
      }

      if (hole) {
        // The parent of a hole border is always an outer border.
        auto it = border_to_contour.find(info.parent);
        if (it != border_to_contour.end()) c.parent_id = it->second;
      }
      border_to_contour[nbd] = c.id;
      out.push_back(std::move(c));

      if (F(x, y) != 1) lnbd = std::abs(F(x, y));
    }
  }
  return out;
}

double ContourArea(std::span<const Point> pts) {
  if (pts.size() < 3) return 0;
  int64_t twice = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const Point a = pts[i], b = pts[(i + 1) % pts.size()];
    twice += int64_t(a.x) * b.y - int64_t(b.x) * a.y;
  }
  return std::abs(double(twice)) / 2.0;
}

std::vector<Contour> SortByAreaDesc(std::vector<Contour> contours) {
  std::vector<std::pair<double, size_t>> keys;
  keys.reserve(contours.size());
  for (size_t i = 0; i < contours.size(); ++i)
    keys.emplace_back(ContourArea(contours[i]), i);
  std::stable_sort(keys.begin(), keys.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Contour> out;
  out.reserve(contours.size());
  for (const auto& k : keys) out.push_back(std::move(contours[k.second]));
  return out;
}

void ScanRegion(std::span<const Point> pts,
                const std::function<void(int, int, int)>& span) {
  if (pts.empty()) return;
  int ymin = pts[0].y, ymax = pts[0].y;
  for (const Point p : pts) {
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const size_t n = pts.size();
  std::vector<double> xs;
  std::vector<std::pair<int, int>> runs;
  for (int y = ymin; y <= ymax; ++y) {
    xs.clear();
    runs.clear();
    for (size_t i = 0; i < n; ++i) {
      const Point a = pts[i], b = pts[(i + 1) % n];
      const int lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
      if (y < lo || y > hi) continue;
      if (a.y == b.y) {
        runs.emplace_back(std::min(a.x, b.x), std::max(a.x, b.x));
        continue;
      }
      const int64_t num = int64_t(y - a.y) * (b.x - a.x);
      const int64_t den = b.y - a.y;
      if (num % den == 0) {
        const int x = int(a.x + num / den);
        runs.emplace_back(x, x);
      }
      // Half-open rule so vertices are not counted twice.
      if (y < hi) xs.push_back(a.x + double(num) / double(den));
    }
    std::sort(xs.begin(), xs.end());
    for (size_t i = 0; i + 1 < xs.size(); i += 2) {
      const int x0 = int(std::ceil(xs[i])), x1 = int(std::floor(xs[i + 1]));
      if (x0 <= x1) runs.emplace_back(x0, x1);
    }
    if (runs.empty()) continue;
    std::sort(runs.begin(), runs.end());
    int cur0 = runs[0].first, cur1 = runs[0].second;
    for (size_t i = 1; i < runs.size(); ++i) {
      if (runs[i].first <= cur1 + 1) {
        cur1 = std::max(cur1, runs[i].second);
      } else {
        span(y, cur0, cur1);
        cur0 = runs[i].first;
        cur1 = runs[i].second;
      }
    }
    span(y, cur0, cur1);
  }
}

Moments ImageMoments(const GrayImage& img) {
  Moments m;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const int64_t v = img.at(x, y);
      if (v == 0) continue;
      m.m00 += v;
      m.m10 += v * x;
      m.m01 += v * y;
      m.m20 += v * x * x;
      m.m11 += v * x * y;
      m.m02 += v * y * y;
    }
  return m;
}

Moments ContourMoments(const Contour& c, const GrayImage* img) {
  Moments m;
  ScanRegion(c.points, [&](int y, int x0, int x1) {
    if (img == nullptr) {
      const int64_t n = int64_t(x1) - x0 + 1;
      const int64_t sx = SumRange(x0, x1), sxx = SumSqRange(x0, x1);
      m.m00 += n;
      m.m10 += sx;
      m.m01 += n * y;
      m.m20 += sxx;
      m.m11 += sx * y;
      m.m02 += n * y * y;
      return;
    }
    if (y < 0 || y >= img->height()) return;
    for (int x = std::max(x0, 0); x <= std::min(x1, img->width() - 1); ++x) {
      const int64_t v = img->at(x, y);
      m.m00 += v;
      m.m10 += v * x;
      m.m01 += v * y;
      m.m20 += v * x * x;
      m.m11 += v * x * y;
      m.m02 += v * y * y;
    }
  });
  return m;
}

Centroid CentroidOf(const Moments& m) {
  if (m.m00 == 0) throw Error(ErrorCode::kDegenerate, "zero-mass moments");
  return {double(m.m10) / double(m.m00), double(m.m01) / double(m.m00)};
}

Rect BoundingRect(std::span<const Point> pts) {
  if (pts.empty())
    throw Error(ErrorCode::kPrecondition, "bounding rect of empty contour");
  int x0 = pts[0].x, x1 = pts[0].x, y0 = pts[0].y, y1 = pts[0].y;
  for (const Point p : pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return {x0, y0, x1 - x0, y1 - y0};
}

std::vector<Vec2> ConvexHull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  size_t k = 0;
  auto cross = [](Vec2 o, Vec2 a, Vec2 b) { return (a - o).Cross(b - o); };
  for (const Vec2 p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

RotatedRect MinAreaRect(std::span<const Vec2> pts) {
  if (pts.empty())
    throw Error(ErrorCode::kPrecondition, "min-area rect of empty point set");
  const std::vector<Vec2> hull = ConvexHull({pts.begin(), pts.end()});
  RotatedRect best;
  if (hull.size() == 1) {
    best.center = hull[0];
    return best;
  }
  double best_area = std::numeric_limits<double>::infinity();
  double best_along = 0, best_across = 0, best_dir = 0;
  const size_t edges = hull.size() == 2 ? 1 : hull.size();
  for (size_t i = 0; i < edges; ++i) {
    const Vec2 e = hull[(i + 1) % hull.size()] - hull[i];
    const double len = e.Norm();
    if (len == 0) continue;
    const Vec2 u = e * (1.0 / len), v{-u.y, u.x};
    double umin = std::numeric_limits<double>::infinity(), umax = -umin;
    double vmin = umin, vmax = -umin;
    for (const Vec2 p : hull) {
      const double pu = (p - hull[i]).Dot(u), pv = (p - hull[i]).Dot(v);
      umin = std::min(umin, pu);
      umax = std::max(umax, pu);
      vmin = std::min(vmin, pv);
      vmax = std::max(vmax, pv);
    }
    const double area = (umax - umin) * (vmax - vmin);
    if (area < best_area * (1 - 1e-12) || best_area == std::numeric_limits<double>::infinity()) {
      best_area = area;
      best_along = umax - umin;
      best_across = vmax - vmin;
      best_dir = Degrees(std::atan2(u.y, u.x));
      best.center = hull[i] + u * ((umin + umax) / 2) + v * ((vmin + vmax) / 2);
    }
  }
  double a = std::fmod(best_dir, 180.0);
  if (a < 0) a += 180.0;
  if (a >= 180.0 - 1e-9) a = 0;
  if (a >= 90.0 - 1e-9) {
    a -= 90.0;
    std::swap(best_along, best_across);
  }
  best.angle = std::max(a, 0.0);
  best.length = std::max(best_along, best_across);
  best.breadth = std::min(best_along, best_across);
  best.length_along_angle = best_along >= best_across;
  return best;
}

RotatedRect MinAreaRect(const Contour& c) {
  std::vector<Vec2> pts;
  pts.reserve(c.points.size());
  for (const Point p : c.points) pts.push_back(ToVec2(p));
  return MinAreaRect(pts);
}

double SegmentDistance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.Dot(ab);
  if (len2 == 0) return (p - a).Norm();
  const double t = std::clamp((p - a).Dot(ab) / len2, 0.0, 1.0);
  return (p - (a + ab * t)).Norm();
}

double PointPolygonTest(std::span<const Point> poly, Vec2 p, bool measure_dist) {
  if (poly.empty()) return measure_dist ? -std::numeric_limits<double>::infinity() : -1;
  const size_t n = poly.size();
  double dmin = std::numeric_limits<double>::infinity();
  bool inside = false;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = ToVec2(poly[i]), b = ToVec2(poly[(i + 1) % n]);
    const Vec2 ab = b - a, ap = p - a;
    if (ab.Cross(ap) == 0 && ap.Dot(ab) >= 0 && ap.Dot(ab) <= ab.Dot(ab))
      return 0;  // on the boundary
    if (measure_dist) dmin = std::min(dmin, SegmentDistance(p, a, b));
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xi = a.x + (p.y - a.y) * ab.x / ab.y;
      if (p.x < xi) inside = !inside;
    }
  }
  if (n < 3) inside = false;
  if (!measure_dist) return inside ? 1 : -1;
  return inside ? dmin : -dmin;
}

double ArcLength(std::span<const Point> pts, bool closed) {
  if (pts.size() < 2) return 0;
  double len = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    len += (ToVec2(pts[i + 1]) - ToVec2(pts[i])).Norm();
  if (closed) len += (ToVec2(pts.front()) - ToVec2(pts.back())).Norm();
  return len;
}

namespace {

// Marks the vertices RDP keeps on pts[first..last] (inclusive, both kept).
void RdpMark(std::span<const Vec2> pts, size_t first, size_t last, double eps,
             std::vector<char>& keep) {
  std::vector<std::pair<size_t, size_t>> stack{{first, last}};
  keep[first] = keep[last] = 1;
  while (!stack.empty()) {
    const auto [s, e] = stack.back();
    stack.pop_back();
    double dmax = -1;
    size_t idx = s;
    for (size_t i = s + 1; i < e; ++i) {
      const double d = SegmentDistance(pts[i], pts[s], pts[e]);
      if (d > dmax) {
        dmax = d;
        idx = i;
      }
    }
    if (idx != s && dmax > eps) {
      keep[idx] = 1;
      stack.emplace_back(s, idx);
      stack.emplace_back(idx, e);
    }
  }
}

size_t Farthest(std::span<const Vec2> pts, size_t from) {
  size_t best = from;
  double dbest = -1;
  for (size_t i = 0; i < pts.size(); ++i) {
    const Vec2 d = pts[i] - pts[from];
    if (d.Dot(d) > dbest) {
      dbest = d.Dot(d);
      best = i;
    }
  }
  return best;
}

}  // namespace

Contour ApproxPolyDP(const Contour& c, double epsilon, bool closed) {
  if (epsilon < 0)
    throw Error(ErrorCode::kPrecondition, "RDP epsilon must be non-negative");
  Contour out = c;
  const size_t n = c.points.size();
  if (epsilon == 0 || n <= 2) return out;

  std::vector<Vec2> pts;
  pts.reserve(n + 1);
  for (const Point p : c.points) pts.push_back(ToVec2(p));

  std::vector<char> keep(n, 0);
  if (!closed) {
    RdpMark(pts, 0, n - 1, epsilon, keep);
  } else {
    // Split the loop at two mutually far points, then simplify both arcs.
    size_t a = Farthest(pts, 0);
    size_t b = Farthest(pts, a);
    for (int iter = 0; iter < 2; ++iter) {
      const size_t nb = Farthest(pts, b);
      a = b;
      b = nb;
    }
    if (a > b) std::swap(a, b);
    if (a == b) {
      keep[a] = 1;
    } else {
      RdpMark(pts, a, b, epsilon, keep);
      // Second arc, rotated so that it is contiguous: b..n-1, 0..a.
      std::vector<Vec2> arc;
      for (size_t i = b; i < n; ++i) arc.push_back(pts[i]);
      for (size_t i = 0; i <= a; ++i) arc.push_back(pts[i]);
      std::vector<char> arc_keep(arc.size(), 0);
      RdpMark(arc, 0, arc.size() - 1, epsilon, arc_keep);
      for (size_t i = 0; i < arc.size(); ++i)
        if (arc_keep[i]) keep[(b + i) % n] = 1;
    }
    // RDP keeps the split points unconditionally, and a staircase pixel next
    // to a corner can outscore the corner itself. Drop vertices, cheapest
    // first, while every original point stays within epsilon.
    std::vector<size_t> kept;
    for (size_t i = 0; i < n; ++i)
      if (keep[i]) kept.push_back(i);
    auto deviation = [&](size_t prev, size_t next) {
      double d = 0;
      for (size_t i = (prev + 1) % n; i != next; i = (i + 1) % n)
        d = std::max(d, SegmentDistance(pts[i], pts[prev], pts[next]));
      return d;
    };
    while (kept.size() > 3) {
      double best = std::numeric_limits<double>::infinity();
      size_t best_pos = 0;
      for (size_t k = 0; k < kept.size(); ++k) {
        const double d = deviation(kept[(k + kept.size() - 1) % kept.size()],
                                   kept[(k + 1) % kept.size()]);
        if (d < best) {
          best = d;
          best_pos = k;
        }
      }
      if (best > epsilon) break;
      keep[kept[best_pos]] = 0;
      kept.erase(kept.begin() + best_pos);
    }
  }
  out.points.clear();
  for (size_t i = 0; i < n; ++i)
    if (keep[i]) out.points.push_back(c.points[i]);
  return out;
}

}  // namespace orthocsg
