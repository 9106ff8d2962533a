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

#include <string>
#include <variant>
#include <vector>

#include "orthocsg/geometry.h"
#include "orthocsg/view_parser.h"

namespace orthocsg {

enum class Axis { kX, kY, kZ };

struct Cube {
  Vec3 size;
  friend bool operator==(const Cube&, const Cube&) = default;
};

/// Centered cylinder or regular prism (fn <= 6) whose axis is `axis`.
/// A prism's first vertex points along +x before any rotation.
struct Cylinder {
  double height = 0;
  double radius = 0;
  int fn = 100;
  Axis axis = Axis::kZ;
  friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

/// One placed primitive. `rotation` is applied after the fixed rotation
/// that lays a cylinder along its axis and may be non-zero about one world
/// axis only.
struct SolidNode {
  std::variant<Cube, Cylinder> primitive;
  Vec3 translation;
  Vec3 rotation;
  BoolOp op = BoolOp::kNone;
  std::string label;

  friend bool operator==(const SolidNode& a, const SolidNode& b) {
    return a.primitive == b.primitive && a.translation == b.translation &&
           a.rotation == b.rotation && a.op == b.op;
  }
};

struct Aabb {
  Vec3 min;
  Vec3 max;
  Vec3 Center() const { return (min + max) * 0.5; }
  Vec3 Size() const { return max - min; }
};

/// Rotation laying a z-aligned cylinder along `axis`.
Mat3 AxisOrientation(Axis axis);
Mat3 WorldRotation(const SolidNode& n);
Aabb Bounds(const SolidNode& n);

struct AssemblyConfig {
  double round_off_approx = 0.5;
  /// Gap below which two parent solids count as touching and are unioned.
  double touch_tolerance = 0.1;
  /// Facet count emitted for circles.
  int smooth_fn = 100;
};

/// What became of one ShapeRecord during assembly.
struct RecordFate {
  View view = View::kFront;
  size_t group = 0;
  size_t index = 0;
  int times_consumed = 0;
  bool ignored = false;
  std::string reason;
};

struct Assembly {
  /// Each group is [parent, children...]; children are unions first, then
  /// differences.
  std::vector<std::vector<SolidNode>> groups;
  std::vector<RecordFate> fates;
  int matched_pairs = 0;  // front/side height matches
  std::vector<std::string> warnings;
};

/// Fuses the three re-arranged views into 3D solids.
Assembly Combining(const ViewObjects& front, const ViewObjects& side,
                   const ViewObjects& top, const AssemblyConfig& cfg = {});

std::vector<SolidNode> Flatten(const std::vector<std::vector<SolidNode>>& groups);

}  // namespace orthocsg
