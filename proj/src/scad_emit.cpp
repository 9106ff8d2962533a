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

#include "orthocsg/scad_emit.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "orthocsg/error.h"

namespace orthocsg {

std::string FormatNumber(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::kInternal, "non-finite number in SCAD output");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

namespace {

std::string Vector(const Vec3& v) {
  return "[" + FormatNumber(v.x) + "," + FormatNumber(v.y) + "," + FormatNumber(v.z) + "]";
}

bool IsZero(const Vec3& v) {
  return FormatNumber(v.x) == "0.000000" && FormatNumber(v.y) == "0.000000" &&
         FormatNumber(v.z) == "0.000000";
}

void RequirePositive(double v, const SolidNode& n) {
  if (!(v > 0) || !std::isfinite(v))
    throw Error(ErrorCode::kInternal, "unset dimension on " + (n.label.empty() ? "solid" : n.label));
}

}  // namespace

std::string PrimitiveText(const SolidNode& n) {
  std::string out;
  if (!IsZero(n.translation)) out += "translate(" + Vector(n.translation) + ") ";
  if (!IsZero(n.rotation)) out += "rotate(" + Vector(n.rotation) + ") ";
  if (const auto* c = std::get_if<Cube>(&n.primitive)) {
    RequirePositive(c->size.x, n);
    RequirePositive(c->size.y, n);
    RequirePositive(c->size.z, n);
    out += "cube(size=" + Vector(c->size) + ", center=true);";
    return out;
  }
  const auto& cyl = std::get<Cylinder>(n.primitive);
  RequirePositive(cyl.height, n);
  RequirePositive(cyl.radius, n);
  if (cyl.fn < 3) throw Error(ErrorCode::kInternal, "cylinder facet count below 3");
  if (cyl.axis == Axis::kX) out += "rotate([0,90,0]) ";
  if (cyl.axis == Axis::kY) out += "rotate([90,0,0]) ";
  out += "cylinder(h=" + FormatNumber(cyl.height) + ", r=" + FormatNumber(cyl.radius) +
         ", center=true, $fn=" + std::to_string(cyl.fn) + ");";
  return out;
}

std::string EmitNode::Text(int indent) const {
  const std::string pad(size_t(indent) * 2, ' ');
  if (leaf) return pad + PrimitiveText(*leaf) + "\n";
  if (!right) return left ? left->Text(indent) : std::string();
  const char* name = op == BoolOp::kDifference ? "difference" : "union";
  return pad + name + "() {\n" + left->Text(indent + 1) + right->Text(indent + 1) + pad + "}\n";
}

std::vector<std::unique_ptr<EmitNode>> CreateTree(std::span<const SolidNode> nodes) {
  std::vector<std::unique_ptr<EmitNode>> trees;
  auto leaf = [](const SolidNode& n) {
    auto e = std::make_unique<EmitNode>();
    e->leaf = n;
    return e;
  };
  std::unique_ptr<EmitNode> present;
  for (const SolidNode& n : nodes) {
    if (n.op == BoolOp::kNone || !present) {
      if (present) trees.push_back(std::move(present));
      present = std::make_unique<EmitNode>();
      present->left = leaf(n);
      continue;
    }
    if (!present->right) {
      present->right = leaf(n);
      present->op = n.op;
    } else {
      auto parent = std::make_unique<EmitNode>();
      parent->left = std::move(present);
      parent->right = leaf(n);
      parent->op = n.op;
      present = std::move(parent);
    }
  }
  if (present) trees.push_back(std::move(present));
  return trees;
}

std::string EmitScad(std::span<const SolidNode> nodes) {
  std::string out;
  for (const auto& tree : CreateTree(nodes)) out += tree->Text();
  return out;
}

bool WriteScad(std::span<const SolidNode> nodes, const std::filesystem::path& path) {
  if (nodes.empty()) {
    std::cerr << "No shapes detected\n";
    return false;
  }
  const std::string text = EmitScad(nodes);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  f << text;
  if (!f) throw Error(ErrorCode::kIo, "failed writing " + path.string());
  return true;
}

}  // namespace orthocsg
