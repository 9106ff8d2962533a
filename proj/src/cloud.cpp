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

#include "orthocsg/cloud.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "orthocsg/error.h"

namespace orthocsg {

namespace {

constexpr double kPi = std::numbers::pi;

bool IsPrism(const Cylinder& c) { return c.fn >= 3 && c.fn <= 6; }

Vec2 PolygonVertex(int k, int n, double r) {
  const double a = 2 * kPi * k / n;
  return {r * std::cos(a), r * std::sin(a)};
}

// Signed distance to a centred regular n-gon with its first vertex on +x.
double RegularPolygonSdf(Vec2 p, int n, double r) {
  double dmin = std::numeric_limits<double>::infinity();
  bool inside = true;
  for (int k = 0; k < n; ++k) {
    const Vec2 a = PolygonVertex(k, n, r), b = PolygonVertex(k + 1, n, r);
    const Vec2 ab = b - a, ap = p - a;
    dmin = std::min(dmin, (ap - ab * std::clamp(ap.Dot(ab) / ab.Dot(ab), 0.0, 1.0)).Norm());
    if (ab.Cross(ap) < 0) inside = false;
  }
  return inside ? -dmin : dmin;
}

double Extrude(double d2, double z, double half_height) {
  const double wx = d2, wy = std::abs(z) - half_height;
  return std::min(std::max(wx, wy), 0.0) + std::hypot(std::max(wx, 0.0), std::max(wy, 0.0));
}

double Uniform(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

struct Sample {
  Vec3 p;
  Vec3 n;
};

double SurfaceArea(const SolidNode& node) {
  if (const auto* c = std::get_if<Cube>(&node.primitive)) {
    const Vec3 s = c->size;
    return 2 * (s.x * s.y + s.y * s.z + s.x * s.z);
  }
  const auto& cyl = std::get<Cylinder>(node.primitive);
  if (IsPrism(cyl)) {
    const int n = cyl.fn;
    const double cap = 0.5 * n * cyl.radius * cyl.radius * std::sin(2 * kPi / n);
    const double side = 2 * cyl.radius * std::sin(kPi / n);
    return 2 * cap + n * side * cyl.height;
  }
  return 2 * kPi * cyl.radius * cyl.radius + 2 * kPi * cyl.radius * cyl.height;
}

// Area-uniform point on a primitive's boundary, local frame.
Sample SampleLocal(const SolidNode& node, std::mt19937_64& rng) {
  if (const auto* c = std::get_if<Cube>(&node.primitive)) {
    const Vec3 h = c->size * 0.5;
    const double areas[3] = {c->size.y * c->size.z, c->size.x * c->size.z,
                             c->size.x * c->size.y};
    double pick = Uniform(rng) * 2 * (areas[0] + areas[1] + areas[2]);
    int axis = 0;
    while (axis < 2 && pick >= 2 * areas[axis]) pick -= 2 * areas[axis++];
    const double sign = pick < areas[axis] ? -1.0 : 1.0;
    Vec3 p, n;
    for (int i = 0; i < 3; ++i) p[i] = (2 * Uniform(rng) - 1) * h[i];
    p[axis] = sign * h[axis];
    n[axis] = sign;
    return {p, n};
  }
  const auto& cyl = std::get<Cylinder>(node.primitive);
  const double r = cyl.radius, hz = cyl.height / 2;
  if (IsPrism(cyl)) {
    const int n = cyl.fn;
    const double cap = 0.5 * n * r * r * std::sin(2 * kPi / n);
    const double side = 2 * r * std::sin(kPi / n);
    const double lateral = n * side * cyl.height;
    const double pick = Uniform(rng) * (2 * cap + lateral);
    const int k = std::min(int(Uniform(rng) * n), n - 1);
    const Vec2 a = PolygonVertex(k, n, r), b = PolygonVertex(k + 1, n, r);
    if (pick < 2 * cap) {
      // Uniform in the fan triangle (centre, a, b).
      double s = Uniform(rng), t = Uniform(rng);
      if (s + t > 1) {
        s = 1 - s;
        t = 1 - t;
      }
      const Vec2 q = a * s + b * t;
      const double sign = pick < cap ? -1.0 : 1.0;
      return {{q.x, q.y, sign * hz}, {0, 0, sign}};
    }
    const Vec2 q = a + (b - a) * Uniform(rng);
    const Vec2 mid = (a + b) * 0.5;
    const Vec2 out = mid * (1.0 / mid.Norm());
    return {{q.x, q.y, (2 * Uniform(rng) - 1) * hz}, {out.x, out.y, 0}};
  }
  const double cap = kPi * r * r, lateral = 2 * kPi * r * cyl.height;
  const double pick = Uniform(rng) * (2 * cap + lateral);
  const double theta = 2 * kPi * Uniform(rng);
  if (pick < 2 * cap) {
    const double rho = r * std::sqrt(Uniform(rng));
    const double sign = pick < cap ? -1.0 : 1.0;
    return {{rho * std::cos(theta), rho * std::sin(theta), sign * hz}, {0, 0, sign}};
  }
  return {{r * std::cos(theta), r * std::sin(theta), (2 * Uniform(rng) - 1) * hz},
          {std::cos(theta), std::sin(theta), 0}};
}

}  // namespace

double PrimitiveSdf(const SolidNode& n, const Vec3& p) {
  if (const auto* c = std::get_if<Cube>(&n.primitive)) {
    const Vec3 q{std::abs(p.x) - c->size.x / 2, std::abs(p.y) - c->size.y / 2,
                 std::abs(p.z) - c->size.z / 2};
    const Vec3 pos{std::max(q.x, 0.0), std::max(q.y, 0.0), std::max(q.z, 0.0)};
    return pos.Norm() + std::min(std::max({q.x, q.y, q.z}), 0.0);
  }
  const auto& cyl = std::get<Cylinder>(n.primitive);
  const double d2 = IsPrism(cyl) ? RegularPolygonSdf({p.x, p.y}, cyl.fn, cyl.radius)
                                 : std::hypot(p.x, p.y) - cyl.radius;
  return Extrude(d2, p.z, cyl.height / 2);
}

CsgSdf::CsgSdf(std::span<const SolidNode> nodes) {
  for (const SolidNode& n : nodes) leaves_.push_back({n, WorldRotation(n)});
}

double CsgSdf::Eval(const Vec3& p) const {
  if (leaves_.empty()) throw Error(ErrorCode::kPrecondition, "empty CSG model");
  double result = std::numeric_limits<double>::infinity();
  double acc = 0;
  bool open = false;
  for (const Leaf& leaf : leaves_) {
    const double d = PrimitiveSdf(leaf.node, leaf.rotation.Transposed() * (p - leaf.node.translation));
    if (leaf.node.op == BoolOp::kNone || !open) {
      if (open) result = SdfUnion(result, acc);
      acc = d;
      open = true;
    } else if (leaf.node.op == BoolOp::kUnion) {
      acc = SdfUnion(acc, d);
    } else {
      acc = SdfDifference(acc, d);
    }
  }
  return SdfUnion(result, acc);
}

Aabb CsgSdf::Bounds() const {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Aabb box{{kInf, kInf, kInf}, {-kInf, -kInf, -kInf}};
  for (const Leaf& leaf : leaves_) {
    if (leaf.node.op == BoolOp::kDifference) continue;
    const Aabb b = orthocsg::Bounds(leaf.node);
    for (int i = 0; i < 3; ++i) {
      box.min[i] = std::min(box.min[i], b.min[i]);
      box.max[i] = std::max(box.max[i], b.max[i]);
    }
  }
  return box;
}

PointCloud SampleSurface(const CsgSdf& model, size_t n_points, const SampleOptions& opts) {
  if (n_points == 0) throw Error(ErrorCode::kPrecondition, "point count must be positive");
  if (model.empty()) throw Error(ErrorCode::kPrecondition, "empty CSG model");
  if (!(opts.tol > 0)) throw Error(ErrorCode::kPrecondition, "surface tolerance must be positive");

  const auto& leaves = model.leaves();
  std::vector<double> cumulative;
  double total = 0;
  for (const auto& leaf : leaves) cumulative.push_back(total += SurfaceArea(leaf.node));
  if (!(total > 0)) throw Error(ErrorCode::kEmptyCloud, "model has no surface area");

  std::mt19937_64 rng(opts.seed);
  const double probe = opts.tol / 2;
  const size_t budget = n_points * opts.budget_factor;
  const size_t batch = std::max<size_t>(4096, n_points);
  const unsigned threads =
      opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());

  PointCloud cloud;
  std::vector<Sample> cand;
  std::vector<signed char> verdict;  // 0 drop, 1 keep, -1 keep flipped
  for (size_t drawn = 0; drawn < budget && cloud.points.size() < n_points;) {
    const size_t count = std::min(batch, budget - drawn);
    cand.resize(count);
    for (Sample& s : cand) {
      const double pick = Uniform(rng) * total;
      const size_t li = std::min<size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin(),
          leaves.size() - 1);
      const Sample local = SampleLocal(leaves[li].node, rng);
      s.p = leaves[li].rotation * local.p + leaves[li].node.translation;
      s.n = leaves[li].rotation * local.n;
    }
    drawn += count;

    verdict.assign(count, 0);
    auto work = [&](size_t begin, size_t end) {
      for (size_t i = begin; i < end; ++i) {
        const Sample& s = cand[i];
        if (std::abs(model.Eval(s.p)) > opts.tol) continue;
        const double behind = model.Eval(s.p - s.n * probe);
        const double ahead = model.Eval(s.p + s.n * probe);
        if (behind < 0 && ahead > 0) verdict[i] = 1;
        else if (behind > 0 && ahead < 0) verdict[i] = -1;
      }
    };
    if (threads <= 1 || count < 2048) {
      work(0, count);
    } else {
      std::vector<std::thread> pool;
      const size_t chunk = (count + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        const size_t b = t * chunk, e = std::min(count, b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
      }
      for (auto& th : pool) th.join();
    }
    for (size_t i = 0; i < count && cloud.points.size() < n_points; ++i) {
      if (!verdict[i]) continue;
      cloud.points.push_back(cand[i].p);
      cloud.normals.push_back(verdict[i] > 0 ? cand[i].n : -cand[i].n);
    }
  }
  if (cloud.points.empty())
    throw Error(ErrorCode::kEmptyCloud, "no sample survived on the model surface");
  return cloud;
}

PointCloud ThinPoisson(const PointCloud& cloud, double min_distance) {
  if (!(min_distance > 0)) return cloud;
  struct KeyHash {
    size_t operator()(const std::array<int64_t, 3>& k) const {
      return size_t(k[0] * 73856093 ^ k[1] * 19349663 ^ k[2] * 83492791);
    }
  };
  std::unordered_map<std::array<int64_t, 3>, std::vector<size_t>, KeyHash> grid;
  auto key = [&](const Vec3& p) {
    return std::array<int64_t, 3>{int64_t(std::floor(p.x / min_distance)),
                                  int64_t(std::floor(p.y / min_distance)),
                                  int64_t(std::floor(p.z / min_distance))};
  };
  PointCloud out;
  const bool normals = cloud.normals.size() == cloud.points.size();
  for (size_t i = 0; i < cloud.points.size(); ++i) {
    const Vec3& p = cloud.points[i];
    const auto k = key(p);
    bool close = false;
    for (int dx = -1; dx <= 1 && !close; ++dx)
      for (int dy = -1; dy <= 1 && !close; ++dy)
        for (int dz = -1; dz <= 1 && !close; ++dz) {
          auto it = grid.find({k[0] + dx, k[1] + dy, k[2] + dz});
          if (it == grid.end()) continue;
          for (const size_t j : it->second)
            if ((out.points[j] - p).Norm() < min_distance) {
              close = true;
              break;
            }
        }
    if (close) continue;
    grid[k].push_back(out.points.size());
    out.points.push_back(p);
    if (normals) out.normals.push_back(cloud.normals[i]);
  }
  return out;
}

void WritePly(const PointCloud& cloud, const std::filesystem::path& path, bool with_normals) {
  if (cloud.points.empty()) throw Error(ErrorCode::kPrecondition, "refusing to write an empty cloud");
  with_normals = with_normals && cloud.normals.size() == cloud.points.size();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  f << "ply\nformat ascii 1.0\nelement vertex " << cloud.points.size()
    << "\nproperty float x\nproperty float y\nproperty float z\n";
  if (with_normals) f << "property float nx\nproperty float ny\nproperty float nz\n";
  f << "end_header\n";
  char buf[160];
  auto fix = [](double v) { return std::abs(v) < 5e-7 ? 0.0 : v; };
  for (size_t i = 0; i < cloud.points.size(); ++i) {
    const Vec3& p = cloud.points[i];
    int len = std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f", fix(p.x), fix(p.y), fix(p.z));
    f.write(buf, len);
    if (with_normals) {
      const Vec3& n = cloud.normals[i];
      len = std::snprintf(buf, sizeof(buf), " %.6f %.6f %.6f", fix(n.x), fix(n.y), fix(n.z));
      f.write(buf, len);
    }
    f.put('\n');
  }
  if (!f) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

PointCloud ReadPly(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::string line;
  if (!std::getline(f, line) || line != "ply")
    throw Error(ErrorCode::kFormat, "not a PLY file: " + path.string());
  size_t count = 0;
  std::vector<std::string> props;
  bool in_vertex = false;
  while (std::getline(f, line) && line != "end_header") {
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    if (word == "format") {
      std::string fmt;
      ss >> fmt;
      if (fmt != "ascii") throw Error(ErrorCode::kFormat, "only ASCII PLY is supported");
    } else if (word == "element") {
      std::string name;
      ss >> name >> count;
      in_vertex = name == "vertex";
      if (!in_vertex) throw Error(ErrorCode::kFormat, "unexpected PLY element " + name);
    } else if (word == "property" && in_vertex) {
      std::string type, name;
      ss >> type >> name;
      props.push_back(name);
    }
  }
  auto index = [&](const char* name) {
    const auto it = std::find(props.begin(), props.end(), name);
    return it == props.end() ? -1 : int(it - props.begin());
  };
  const int ix = index("x"), iy = index("y"), iz = index("z");
  const int inx = index("nx"), iny = index("ny"), inz = index("nz");
  if (ix < 0 || iy < 0 || iz < 0) throw Error(ErrorCode::kFormat, "PLY lacks x/y/z");
  PointCloud cloud;
  std::vector<double> vals(props.size());
  for (size_t i = 0; i < count; ++i) {
    for (double& v : vals)
      if (!(f >> v)) throw Error(ErrorCode::kFormat, "truncated PLY body");
    cloud.points.push_back({vals[ix], vals[iy], vals[iz]});
    if (inx >= 0 && iny >= 0 && inz >= 0) cloud.normals.push_back({vals[inx], vals[iny], vals[inz]});
  }
  return cloud;
}

std::optional<std::string> ExternalRenderer() {
  const char* exe = std::getenv("ORTHOCSG_SCAD_RENDERER");
  if (!exe || !*exe) return std::nullopt;
  return std::string(exe);
}

bool RenderStl(const std::filesystem::path& scad, const std::filesystem::path& stl) {
  const auto exe = ExternalRenderer();
  if (!exe) return false;
  const std::string cmd = "\"" + *exe + "\" -o \"" + stl.string() + "\" \"" + scad.string() + "\"";
  return std::system(cmd.c_str()) == 0;
}

}  // namespace orthocsg
