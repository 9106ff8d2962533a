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
#include <cmath>
#include <numbers>

namespace orthocsg {

/// Integer pixel coordinate: x is the column, y the row (growing downwards).
struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Vec2 {
  double x = 0;
  double y = 0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double Dot(Vec2 o) const { return x * o.x + y * o.y; }
  double Cross(Vec2 o) const { return x * o.y - y * o.x; }
  double Norm() const { return std::hypot(x, y); }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 ToVec2(Point p) { return {double(p.x), double(p.y)}; }

struct Vec3 {
  double x = 0;
  double y = 0;
  double z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  double Dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double Norm() const { return std::sqrt(Dot(*this)); }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// Row-major 3x3 matrix; only what rotations need.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  Vec3 operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += m[i * 3 + k] * o.m[k * 3 + j];
        r.m[i * 3 + j] = s;
      }
    return r;
  }
  Mat3 Transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i * 3 + j] = m[j * 3 + i];
    return r;
  }
};

inline double Radians(double deg) { return deg * std::numbers::pi / 180.0; }
inline double Degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

inline Mat3 RotX(double deg) {
  const double c = std::cos(Radians(deg)), s = std::sin(Radians(deg));
  return {{1, 0, 0, 0, c, -s, 0, s, c}};
}
inline Mat3 RotY(double deg) {
  const double c = std::cos(Radians(deg)), s = std::sin(Radians(deg));
  return {{c, 0, s, 0, 1, 0, -s, 0, c}};
}
inline Mat3 RotZ(double deg) {
  const double c = std::cos(Radians(deg)), s = std::sin(Radians(deg));
  return {{c, -s, 0, s, c, 0, 0, 0, 1}};
}

/// Same composition order as SCAD's rotate([a, b, c]): x first, then y, then z.
inline Mat3 EulerXYZ(const Vec3& deg) {
  return RotZ(deg.z) * RotY(deg.y) * RotX(deg.x);
}

}  // namespace orthocsg
