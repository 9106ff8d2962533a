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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orthocsg/assembler.h"

namespace orthocsg {

inline double SdfUnion(double a, double b) { return std::min(a, b); }
inline double SdfDifference(double a, double b) { return std::max(a, -b); }

/// Signed distance of a primitive in its own centred, unrotated frame
/// (cylinders along local z). Negative inside.
double PrimitiveSdf(const SolidNode& n, const Vec3& local);

/// Signed distance field of a flattened CSG node list: each parent starts a
/// tree, its children fold in left to right, and the trees are unioned.
class CsgSdf {
 public:
  struct Leaf {
    SolidNode node;
    Mat3 rotation;  // local -> world
  };

  explicit CsgSdf(std::span<const SolidNode> nodes);

  /// Throws kPrecondition on an empty model.
  double Eval(const Vec3& p) const;

  bool empty() const { return leaves_.empty(); }
  const std::vector<Leaf>& leaves() const { return leaves_; }
  /// Bound of the parents and unions; differences only remove material.
  Aabb Bounds() const;

 private:
  std::vector<Leaf> leaves_;
};

struct PointCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;  // empty or one per point
};

struct SampleOptions {
  double tol = 1e-3;
  uint64_t seed = 0;
  /// Candidate budget as a multiple of the requested point count.
  size_t budget_factor = 50;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Area-uniform samples on the primitives' boundaries, kept when they lie on
/// the composite surface: |sdf| <= tol and the field changes sign across the
/// surface within tol/2 along the primitive normal. Output order depends only
/// on the seed.
PointCloud SampleSurface(const CsgSdf& model, size_t n_points, const SampleOptions& opts = {});

/// Greedy blue-noise thinning: keeps points in order, dropping any closer
/// than `min_distance` to an already kept one.
PointCloud ThinPoisson(const PointCloud& cloud, double min_distance);

/// ASCII PLY 1.0, six decimals.
void WritePly(const PointCloud& cloud, const std::filesystem::path& path,
              bool with_normals = false);
PointCloud ReadPly(const std::filesystem::path& path);

/// Executable named by ORTHOCSG_SCAD_RENDERER, if set.
std::optional<std::string> ExternalRenderer();

/// Runs `<renderer> -o stl scad`. Returns false when no renderer is
/// configured or it fails.
bool RenderStl(const std::filesystem::path& scad, const std::filesystem::path& stl);

}  // namespace orthocsg
