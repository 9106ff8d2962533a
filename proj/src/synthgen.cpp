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

#include "orthocsg/synthgen.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "orthocsg/contour.h"
#include "orthocsg/error.h"

namespace orthocsg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCircleSamples = 720;

[[noreturn]] void Fail(int line, const std::string& msg) {
  throw Error(ErrorCode::kFormat, "model line " + std::to_string(line) + ": " + msg);
}

double ParseDouble(const std::string& s, int line) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    Fail(line, "bad number '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) Fail(line, "bad number '" + s + "'");
  return v;
}

Vec3 ParseVec3(const std::string& s, int line) {
  Vec3 v;
  std::stringstream ss(s);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i == 3) Fail(line, "expected three components in '" + s + "'");
    v[i++] = ParseDouble(item, line);
  }
  if (i != 3) Fail(line, "expected three components in '" + s + "'");
  return v;
}

BoolOp ParseOp(const std::string& s, int line) {
  if (s == "none") return BoolOp::kNone;
  if (s == "union") return BoolOp::kUnion;
  if (s == "difference") return BoolOp::kDifference;
  Fail(line, "unknown op '" + s + "'");
}

Axis ParseAxis(const std::string& s, int line) {
  if (s == "x") return Axis::kX;
  if (s == "y") return Axis::kY;
  if (s == "z") return Axis::kZ;
  Fail(line, "unknown axis '" + s + "'");
}

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v == 0 ? 0.0 : v);
  return buf;
}

std::string Vec(const Vec3& v) { return Num(v.x) + "," + Num(v.y) + "," + Num(v.z); }

// World axis a view looks along, and its (u, v) projection.
int ViewAxis(View v) { return v == View::kFront ? 1 : (v == View::kSide ? 0 : 2); }

Vec2 Project(View v, const Vec3& p) {
  switch (v) {
    case View::kFront: return {p.x, p.z};
    case View::kSide: return {p.y, p.z};
    case View::kTop: return {p.x, p.y};
  }
  return {};
}

struct Outline {
  bool circle = false;
  Vec2 center;
  double radius = 0;
  std::vector<Vec2> hull;  // closed convex polygon, or circle samples
};

Outline OutlineOf(const SolidNode& n, View view) {
  const Mat3 rot = WorldRotation(n);
  std::vector<Vec2> pts;
  auto add = [&](const Vec3& local) { pts.push_back(Project(view, rot * local + n.translation)); };
  Outline out;
  if (const auto* c = std::get_if<Cube>(&n.primitive)) {
    const Vec3 h = c->size * 0.5;
    for (int k = 0; k < 8; ++k) add({k & 1 ? h.x : -h.x, k & 2 ? h.y : -h.y, k & 4 ? h.z : -h.z});
  } else {
    const auto& cyl = std::get<Cylinder>(n.primitive);
    const Vec3 axis = rot * Vec3{0, 0, 1};
    const bool round = cyl.fn > 6;
    if (round && std::abs(axis[ViewAxis(view)]) > 1 - 1e-9) {
      out.circle = true;
      out.center = Project(view, n.translation);
      out.radius = cyl.radius;
    }
    const int samples = round ? kCircleSamples : cyl.fn;
    for (int k = 0; k < samples; ++k) {
      const double a = 2 * kPi * k / samples;
      for (const double z : {-cyl.height / 2, cyl.height / 2})
        add({cyl.radius * std::cos(a), cyl.radius * std::sin(a), z});
    }
  }
  out.hull = ConvexHull(std::move(pts));
  return out;
}

double DistanceToOutline(const Outline& o, Vec2 p) {
  if (o.circle) return std::abs((p - o.center).Norm() - o.radius);
  double d = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < o.hull.size(); ++i)
    d = std::min(d, SegmentDistance(p, o.hull[i], o.hull[(i + 1) % o.hull.size()]));
  return d;
}

// Stroke centres sit on pixel centres for odd widths and between pixels for
// even ones, so an axis-aligned edge is exactly `stroke` pixels wide.
Vec2 CanvasOrigin(const Canvas& c) {
  const double shift = std::fmod(c.stroke, 2.0) == 0 ? 0.5 : 0.0;
  return {c.width / 2.0 - shift, c.height / 2.0 - shift};
}

GrayImage Draw(const std::vector<Outline>& outlines, const Canvas& c) {
  GrayImage img(c.width, c.height, 255);
  const Vec2 o = CanvasOrigin(c);
  const double half = c.stroke / 2.0;
  for (const Outline& ol : outlines) {
    double umin = std::numeric_limits<double>::infinity(), umax = -umin, vmin = umin, vmax = -umin;
    for (const Vec2& p : ol.hull) {
      umin = std::min(umin, p.x);
      umax = std::max(umax, p.x);
      vmin = std::min(vmin, p.y);
      vmax = std::max(vmax, p.y);
    }
    const int x0 = std::max(0, int(std::floor(o.x + umin * c.ppu - half - 1)));
    const int x1 = std::min(c.width - 1, int(std::ceil(o.x + umax * c.ppu + half + 1)));
    const int y0 = std::max(0, int(std::floor(o.y - vmax * c.ppu - half - 1)));
    const int y1 = std::min(c.height - 1, int(std::ceil(o.y - vmin * c.ppu + half + 1)));
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        const Vec2 uv{(x - o.x) / c.ppu, (o.y - y) / c.ppu};
        if (DistanceToOutline(ol, uv) * c.ppu <= half) img.at(x, y) = 0;
      }
  }
  return img;
}

const char* kCatalog[][2] = {
    {"block",
     "canvas ppu=150 width=512 height=512 stroke=2\n"
     "cube size=2,1,2 at=0,0,0 op=none\n"},
    {"block_hole",
     "canvas ppu=150 width=512 height=512 stroke=2\n"
     "cube size=2,2,1 at=0,0,0 op=none\n"
     "cylinder h=1 r=0.4 fn=100 axis=z at=0.4,0.3,0 op=difference\n"},
    {"block_boss",
     "canvas ppu=150 width=512 height=512 stroke=2\n"
     "cube size=2,2,1 at=0,0,-0.25 op=none\n"
     "cylinder h=0.5 r=0.5 fn=100 axis=z at=0.4,-0.3,0.5 op=union\n"},
    {"prism",
     "canvas ppu=150 width=512 height=512 stroke=2\n"
     "cylinder h=2 r=1 fn=6 axis=y at=0,0,0 op=none\n"},
};

}  // namespace

GroundTruthModel ParseModel(std::string_view text) {
  GroundTruthModel m;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string kind;
    if (!(ls >> kind)) continue;
    std::map<std::string, std::string> kv;
    for (std::string tok; ls >> tok;) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) Fail(line, "expected key=value, got '" + tok + "'");
      if (!kv.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second)
        Fail(line, "duplicate key '" + tok.substr(0, eq) + "'");
    }
    auto take = [&](const char* key) -> std::optional<std::string> {
      const auto it = kv.find(key);
      if (it == kv.end()) return std::nullopt;
      std::string v = it->second;
      kv.erase(it);
      return v;
    };
    if (kind == "canvas") {
      if (auto v = take("ppu")) m.canvas.ppu = ParseDouble(*v, line);
      if (auto v = take("width")) m.canvas.width = int(ParseDouble(*v, line));
      if (auto v = take("height")) m.canvas.height = int(ParseDouble(*v, line));
      if (auto v = take("stroke")) m.canvas.stroke = ParseDouble(*v, line);
      if (!(m.canvas.ppu > 0)) Fail(line, "ppu must be positive");
      if (m.canvas.width <= 0 || m.canvas.height <= 0) Fail(line, "canvas size must be positive");
      if (!(m.canvas.stroke >= 1)) Fail(line, "stroke must be at least 1 px");
    } else if (kind == "cube" || kind == "cylinder") {
      SolidNode n;
      if (kind == "cube") {
        Cube c;
        const auto size = take("size");
        if (!size) Fail(line, "cube needs size=");
        c.size = ParseVec3(*size, line);
        if (!(c.size.x > 0 && c.size.y > 0 && c.size.z > 0)) Fail(line, "cube size must be positive");
        n.primitive = c;
      } else {
        Cylinder c;
        const auto h = take("h"), r = take("r");
        if (!h || !r) Fail(line, "cylinder needs h= and r=");
        c.height = ParseDouble(*h, line);
        c.radius = ParseDouble(*r, line);
        if (auto v = take("fn")) c.fn = int(ParseDouble(*v, line));
        if (auto v = take("axis")) c.axis = ParseAxis(*v, line);
        if (!(c.height > 0 && c.radius > 0)) Fail(line, "cylinder dimensions must be positive");
        if (c.fn < 3) Fail(line, "fn must be at least 3");
        n.primitive = c;
      }
      if (auto v = take("at")) n.translation = ParseVec3(*v, line);
      if (auto v = take("rot")) n.rotation = ParseVec3(*v, line);
      if (auto v = take("op")) n.op = ParseOp(*v, line);
      if (auto v = take("label")) n.label = *v;
      const int turned = (n.rotation.x != 0) + (n.rotation.y != 0) + (n.rotation.z != 0);
      if (turned > 1) Fail(line, "rotation about more than one axis");
      if (m.parts.empty() && n.op != BoolOp::kNone) Fail(line, "first part must have op=none");
      m.parts.push_back(std::move(n));
    } else {
      Fail(line, "unknown record '" + kind + "'");
    }
    if (!kv.empty()) Fail(line, "unknown key '" + kv.begin()->first + "'");
  }
  if (m.parts.empty()) throw Error(ErrorCode::kFormat, "model has no parts");
  return m;
}

GroundTruthModel LoadModel(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return ParseModel(ss.str());
}

std::string FormatModel(const GroundTruthModel& m) {
  std::string out = "canvas ppu=" + Num(m.canvas.ppu) + " width=" + std::to_string(m.canvas.width) +
                    " height=" + std::to_string(m.canvas.height) + " stroke=" + Num(m.canvas.stroke) +
                    "\n";
  for (const SolidNode& n : m.parts) {
    if (const auto* c = std::get_if<Cube>(&n.primitive)) {
      out += "cube size=" + Vec(c->size);
    } else {
      const auto& cyl = std::get<Cylinder>(n.primitive);
      const char* axis = cyl.axis == Axis::kX ? "x" : (cyl.axis == Axis::kY ? "y" : "z");
      out += "cylinder h=" + Num(cyl.height) + " r=" + Num(cyl.radius) +
             " fn=" + std::to_string(cyl.fn) + " axis=" + axis;
    }
    out += " at=" + Vec(n.translation);
    if (n.rotation != Vec3{}) out += " rot=" + Vec(n.rotation);
    out += " op=" + std::string(BoolOpName(n.op));
    if (!n.label.empty()) out += " label=" + n.label;
    out += "\n";
  }
  return out;
}

RenderedViews RenderViews(const GroundTruthModel& m) {
  if (m.parts.empty()) throw Error(ErrorCode::kPrecondition, "model has no parts");
  if (!(m.canvas.ppu > 0)) throw Error(ErrorCode::kPrecondition, "ppu must be positive");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  Aabb solid{{kInf, kInf, kInf}, {-kInf, -kInf, -kInf}};
  for (const SolidNode& n : m.parts) {
    if (n.op == BoolOp::kDifference) continue;
    const Aabb b = Bounds(n);
    for (int i = 0; i < 3; ++i) {
      solid.min[i] = std::min(solid.min[i], b.min[i]);
      solid.max[i] = std::max(solid.max[i], b.max[i]);
    }
  }

  RenderedViews out;
  const Vec2 origin = CanvasOrigin(m.canvas);
  const double margin = m.canvas.stroke + 1;
  for (const View view : {View::kFront, View::kSide, View::kTop}) {
    const int a = ViewAxis(view);
    std::vector<Outline> outlines;
    std::vector<Vec2> silhouette;
    for (const SolidNode& n : m.parts) {
      if (n.op == BoolOp::kDifference) {
        const Aabb b = Bounds(n);
        if (b.min[a] > solid.min[a] + 1e-9 || b.max[a] < solid.max[a] - 1e-9) continue;
      }
      outlines.push_back(OutlineOf(n, view));
      if (n.op != BoolOp::kDifference)
        silhouette.insert(silhouette.end(), outlines.back().hull.begin(), outlines.back().hull.end());
    }
    for (const Outline& ol : outlines)
      for (const Vec2& p : ol.hull) {
        const double x = origin.x + p.x * m.canvas.ppu, y = origin.y - p.y * m.canvas.ppu;
        if (x < margin || y < margin || x > m.canvas.width - 1 - margin ||
            y > m.canvas.height - 1 - margin)
          throw Error(ErrorCode::kRender, std::string(ViewName(view)) + " view exceeds the canvas");
      }
    const size_t vi = size_t(view);
    out.images[vi] = Draw(outlines, m.canvas);
    out.dims[vi] = MinAreaRect(silhouette).length;
  }
  return out;
}

std::vector<Fixture> FixtureCatalog() {
  std::vector<Fixture> out;
  for (const auto& [name, text] : kCatalog) out.push_back({name, ParseModel(text)});
  return out;
}

}  // namespace orthocsg
