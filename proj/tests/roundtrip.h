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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "orthocsg/synthgen.h"

namespace orthocsg::test {

/// Round-trip tolerance for a reconstructed length: two pixels or 2%.
inline double Tolerance(double want, double ppu) { return std::max(2.0 / ppu, 0.02 * std::abs(want)); }

/// Reconstructed node of the same kind and role nearest to `truth`.
inline const SolidNode* Counterpart(const SolidNode& truth, const std::vector<SolidNode>& nodes) {
  const SolidNode* best = nullptr;
  double dist = 1e9;
  for (const SolidNode& n : nodes) {
    if (n.op != truth.op || n.primitive.index() != truth.primitive.index()) continue;
    const double d = (n.translation - truth.translation).Norm();
    if (d < dist) {
      dist = d;
      best = &n;
    }
  }
  return best;
}

/// Every way `nodes` misses the ground truth; empty when recovered.
inline std::vector<std::string> RoundTripErrors(const GroundTruthModel& m, const std::vector<SolidNode>& nodes) {
  std::vector<std::string> errs;
  const double ppu = m.canvas.ppu;
  auto check = [&](double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol))
      errs.push_back(what + ": got " + std::to_string(got) + ", want " + std::to_string(want));
  };
  if (nodes.size() != m.parts.size()) {
    errs.push_back("node count " + std::to_string(nodes.size()) + ", want " + std::to_string(m.parts.size()));
    return errs;
  }
  for (size_t i = 0; i < m.parts.size(); ++i) {
    const SolidNode& truth = m.parts[i];
    const std::string part = "part " + std::to_string(i);
    const SolidNode* got = Counterpart(truth, nodes);
    if (!got) {
      errs.push_back(part + ": no node of that kind and role");
      continue;
    }
    for (int a = 0; a < 3; ++a)
      check(got->translation[a], truth.translation[a], Tolerance(1, ppu), part + " translation[" + std::to_string(a) + "]");
    for (int a = 0; a < 3; ++a) check(got->rotation[a], truth.rotation[a], 1.0, part + " rotation[" + std::to_string(a) + "]");
    if (const auto* c = std::get_if<Cube>(&truth.primitive)) {
      const Vec3 s = std::get<Cube>(got->primitive).size;
      for (int a = 0; a < 3; ++a) check(s[a], c->size[a], Tolerance(c->size[a], ppu), part + " size[" + std::to_string(a) + "]");
    } else {
      const auto& want = std::get<Cylinder>(truth.primitive);
      const auto& cyl = std::get<Cylinder>(got->primitive);
      if (cyl.axis != want.axis) errs.push_back(part + ": wrong axis");
      if (cyl.fn != want.fn) errs.push_back(part + ": fn " + std::to_string(cyl.fn));
      check(cyl.height, want.height, Tolerance(want.height, ppu), part + " height");
      check(cyl.radius, want.radius, Tolerance(want.radius, ppu), part + " radius");
    }
  }
  return errs;
}

}  // namespace orthocsg::test
