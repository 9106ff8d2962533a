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

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orthocsg/assembler.h"

namespace orthocsg {

/// Fixed-point, six decimals, never "-0.000000".
std::string FormatNumber(double v);

/// One SCAD statement (no trailing newline), e.g.
/// `translate([1.000000,0.000000,0.000000]) cube(size=[...], center=true);`
std::string PrimitiveText(const SolidNode& n);

/// Binary emission tree. Leaves hold a primitive; interior nodes join their
/// two children with `op`. An interior node without a right child stands for
/// its left child alone.
struct EmitNode {
  std::optional<SolidNode> leaf;
  BoolOp op = BoolOp::kNone;
  std::unique_ptr<EmitNode> left;
  std::unique_ptr<EmitNode> right;

  std::string Text(int indent = 0) const;
};

/// One left-leaning tree per parent: each child becomes the right operand of
/// the current node, or of a new node wrapping the current tree once the
/// right slot is taken.
std::vector<std::unique_ptr<EmitNode>> CreateTree(std::span<const SolidNode> nodes);

/// Full SCAD source for a flattened node list; empty for no nodes.
std::string EmitScad(std::span<const SolidNode> nodes);

/// Writes EmitScad(nodes). With no nodes nothing is written, "No shapes
/// detected" goes to stderr and false is returned.
bool WriteScad(std::span<const SolidNode> nodes, const std::filesystem::path& path);

}  // namespace orthocsg
