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

#include "orthocsg/assembler.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "orthocsg/error.h"

namespace orthocsg {

Mat3 AxisOrientation(Axis axis) {
  switch (axis) {
    case Axis::kX: return RotY(90);
    case Axis::kY: return RotX(90);
    case Axis::kZ: return {};
  }
  return {};
}

Mat3 WorldRotation(const SolidNode& n) {
  Mat3 r = EulerXYZ(n.rotation);
  if (const auto* c = std::get_if<Cylinder>(&n.primitive)) r = r * AxisOrientation(c->axis);
  return r;
}

Aabb Bounds(const SolidNode& n) {
  std::vector<Vec3> corners;
  if (const auto* c = std::get_if<Cube>(&n.primitive)) {
    for (int i = 0; i < 8; ++i)
      corners.push_back({(i & 1 ? 0.5 : -0.5) * c->size.x, (i & 2 ? 0.5 : -0.5) * c->size.y,
                         (i & 4 ? 0.5 : -0.5) * c->size.z});
  } else {
    const auto& cyl = std::get<Cylinder>(n.primitive);
    const double hz = cyl.height / 2;
    if (cyl.fn >= 3 && cyl.fn <= 6) {
      for (int k = 0; k < cyl.fn; ++k) {
        const double a = 2 * std::numbers::pi * k / cyl.fn;
        for (const double z : {-hz, hz})
          corners.push_back({cyl.radius * std::cos(a), cyl.radius * std::sin(a), z});
      }
    } else {
      // The disc's own extent stays exact when it is only spun about its axis.
      for (int k = 0; k < 4; ++k) {
        const double a = std::numbers::pi / 2 * k;
        for (const double z : {-hz, hz})
          corners.push_back({cyl.radius * std::cos(a), cyl.radius * std::sin(a), z});
      }
    }
  }
  const Mat3 rot = WorldRotation(n);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Aabb box{{kInf, kInf, kInf}, {-kInf, -kInf, -kInf}};
  for (const Vec3& c : corners) {
    const Vec3 p = rot * c + n.translation;
    for (int i = 0; i < 3; ++i) {
      box.min[i] = std::min(box.min[i], p[i]);
      box.max[i] = std::max(box.max[i], p[i]);
    }
  }
  return box;
}

namespace {

struct Rec {
  const ShapeRecord* r = nullptr;
  View view = View::kFront;
  size_t g = 0, i = 0;
  int consumed = 0;
  int solid = -1;  // solid group that consumed it
  bool ignored = false;
  std::string reason;

  bool head() const { return i == 0; }
};

struct ViewState {
  View view;
  double ratio = 0;
  std::vector<std::vector<Rec>> groups;
};

ViewState MakeState(const ViewObjects& objs) {
  ViewState s{objs.view, objs.ratio.units_per_pixel, {}};
  for (size_t g = 0; g < objs.groups.size(); ++g) {
    s.groups.emplace_back();
    for (size_t i = 0; i < objs.groups[g].size(); ++i) {
      Rec r;
      r.r = &objs.groups[g][i];
      r.view = objs.view;
      r.g = g;
      r.i = i;
      s.groups.back().push_back(std::move(r));
    }
  }
  return s;
}

std::string Label(const Rec& r) {
  return std::string(ViewName(r.view)) + " " + std::string(ShapeName(r.r->shape.shape)) +
         " (group " + std::to_string(r.g) + ", #" + std::to_string(r.i) + ")";
}

bool Compatible(const ShapeRecord& a, const ShapeRecord& b) {
  return (a.shape.IsBoxLike() && b.shape.IsRound()) ||
         (a.shape.IsRound() && b.shape.IsBoxLike()) ||
         (a.shape.IsBoxLike() && b.shape.IsBoxLike());
}

Axis ViewAxis(View v) {
  switch (v) {
    case View::kFront: return Axis::kY;
    case View::kSide: return Axis::kX;
    case View::kTop: return Axis::kZ;
  }
  return Axis::kZ;
}

// World axes shown as (u, v) in a view.
std::pair<int, int> ViewAxes(View v) {
  switch (v) {
    case View::kFront: return {0, 2};
    case View::kSide: return {1, 2};
    case View::kTop: return {0, 1};
  }
  return {0, 1};
}

class Assembler {
 public:
  Assembler(const ViewObjects& front, const ViewObjects& side, const ViewObjects& top,
            const AssemblyConfig& cfg)
      : cfg_(cfg),
        tol_(cfg.round_off_approx),
        front_(MakeState(front)),
        side_(MakeState(side)),
        top_(MakeState(top)) {
    min_ratio_ = std::min({front_.ratio, side_.ratio, top_.ratio});
  }

  Assembly Run(const ViewObjects& front, const ViewObjects& side, const ViewObjects& top) {
    CheckOutermost(front, side, top);
    FrontPass();
    SidePass();
    TopPass();
    for (const auto& g : groups_)
      for (const SolidNode& n : g) CheckThickness(n);
    Assembly out;
    out.groups = MergeTouching();
    out.matched_pairs = matched_;
    out.warnings = warnings_;
    for (ViewState* vs : {&front_, &side_, &top_})
      for (const auto& g : vs->groups)
        for (const Rec& r : g)
          out.fates.push_back({r.view, r.g, r.i, r.consumed, r.ignored, r.reason});
    return out;
  }

 private:
  bool Near(double a, double b) const { return std::abs(a - b) <= tol_; }

  void Consume(Rec& r, int solid) {
    if (r.consumed == 0) {
      r.consumed = 1;
      r.solid = solid;
    }
  }

  void CheckOutermost(const ViewObjects& f, const ViewObjects& s, const ViewObjects& t) {
    const bool fe = f.groups.empty(), se = s.groups.empty(), te = t.groups.empty();
    if (fe && se && te) return;
    if (fe || se || te)
      throw Error(ErrorCode::kAssemblyMismatch, "a view has no shapes while others do");
    auto check = [&](double a, double b, const char* what) {
      if (!Near(a, b))
        throw Error(ErrorCode::kAssemblyMismatch,
                    std::string("outermost contours disagree on ") + what + ": " +
                        std::to_string(a) + " vs " + std::to_string(b));
    };
    check(f.extent.y, s.extent.y, "height (front/side)");
    check(f.extent.x, t.extent.x, "width (front/top)");
    check(s.extent.x, t.extent.y, "depth (side/top)");
  }

  void CheckThickness(const SolidNode& n) const {
    const double min_size = 2 * min_ratio_;
    double smallest;
    if (const auto* c = std::get_if<Cube>(&n.primitive))
      smallest = std::min({c->size.x, c->size.y, c->size.z});
    else
      smallest = std::min(std::get<Cylinder>(n.primitive).height,
                          std::get<Cylinder>(n.primitive).radius);
    if (!(smallest >= min_size))
      throw Error(ErrorCode::kDegenerate,
                  "degenerate zero-thickness solid from " + n.label);
  }

  int FnFor(const ShapeRecord& r) const {
    return r.shape.shape == Shape::kCircle ? cfg_.smooth_fn : r.shape.cylinder_fn;
  }

  // Best unconsumed (then, if allowed, consumed) record passing `ok`, by
  // smallest score; list order breaks ties.
  template <typename Ok, typename Score>
  Rec* Best(ViewState& vs, bool allow_consumed, Ok ok, Score score) {
    Rec* best = nullptr;
    double best_score = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass < (allow_consumed ? 2 : 1) && !best; ++pass) {
      for (auto& g : vs.groups)
        for (Rec& r : g) {
          if ((r.consumed > 0) != (pass == 1) || r.ignored) continue;
          if (!ok(r)) continue;
          const double s = score(r);
          if (s < best_score) {
            best_score = s;
            best = &r;
          }
        }
    }
    return best;
  }

  Rec* FindSide(const ShapeRecord& f, bool allow_consumed, int exclude_solid) {
    return Best(
        side_, allow_consumed,
        [&](const Rec& s) {
          return (exclude_solid < 0 || s.solid != exclude_solid) && Compatible(f, *s.r) &&
                 Near(f.extent.y, s.r->extent.y) && Near(f.box_center.y, s.r->box_center.y);
        },
        [&](const Rec& s) { return std::abs(f.extent.y - s.r->extent.y); });
  }

  // Top record spanning the same x as a front record and the same y as a
  // side record.
  Rec* FindTopBoth(const ShapeRecord& f, const ShapeRecord& s) {
    return Best(
        top_, false,
        [&](const Rec& t) {
          return Near(t.r->extent.x, f.extent.x) && Near(t.r->box_center.x, f.box_center.x) &&
                 Near(t.r->extent.y, s.extent.x) && Near(t.r->box_center.y, s.box_center.x);
        },
        [&](const Rec& t) {
          return std::abs(t.r->extent.x - f.extent.x) + std::abs(t.r->extent.y - s.extent.x);
        });
  }

  Rec* FindTopByX(const ShapeRecord& f, int exclude_solid) {
    return Best(
        top_, true,
        [&](const Rec& t) {
          return (exclude_solid < 0 || t.solid != exclude_solid) &&
                 Near(t.r->extent.x, f.extent.x) && Near(t.r->box_center.x, f.box_center.x) &&
                 !(f.shape.IsRound() && t.r->shape.IsRound());
        },
        [&](const Rec& t) { return std::abs(t.r->extent.x - f.extent.x); });
  }

  Rec* FindTopByY(const ShapeRecord& s, int exclude_solid, bool allow_consumed) {
    return Best(
        top_, allow_consumed,
        [&](const Rec& t) {
          return (exclude_solid < 0 || t.solid != exclude_solid) &&
                 Near(t.r->extent.y, s.extent.x) && Near(t.r->box_center.y, s.box_center.x) &&
                 !(s.shape.IsRound() && t.r->shape.IsRound());
        },
        [&](const Rec& t) { return std::abs(t.r->extent.y - s.extent.x); });
  }

  static SolidNode MakeCube(Vec3 size, Vec3 center, Vec3 rot, BoolOp op, std::string label) {
    return {Cube{size}, center, rot, op, std::move(label)};
  }
  SolidNode MakeCylinder(const ShapeRecord& r, double height, Axis axis, Vec3 center,
                         Vec3 rot, BoolOp op, std::string label) const {
    return {Cylinder{height, r.radius, FnFor(r), axis}, center, rot, op, std::move(label)};
  }

  // Adds a solid; heads open a new group. Returns the group index.
  int AddSolid(SolidNode n, int group) {
    if (n.op == BoolOp::kNone) {
      groups_.push_back({std::move(n)});
      group = int(groups_.size()) - 1;
      ProjectConsume(groups_[group].front(), group);
    } else {
      groups_[group].push_back(std::move(n));
      if (groups_[group].back().op == BoolOp::kUnion)
        ProjectConsume(groups_[group].back(), group);
    }
    return group;
  }

  // Marks every record whose outline is this solid's silhouette in its view.
  void ProjectConsume(const SolidNode& n, int group) {
    const Aabb box = Bounds(n);
    for (ViewState* vs : {&front_, &side_, &top_}) {
      const auto [ua, va] = ViewAxes(vs->view);
      const Vec2 ext{box.max[ua] - box.min[ua], box.max[va] - box.min[va]};
      const Vec2 ctr{(box.max[ua] + box.min[ua]) / 2, (box.max[va] + box.min[va]) / 2};
      const auto* cyl = std::get_if<Cylinder>(&n.primitive);
      const bool round = cyl && cyl->axis == ViewAxis(vs->view);
      for (auto& g : vs->groups)
        for (Rec& r : g) {
          if (r.consumed || r.ignored) continue;
          const ShapeRecord& s = *r.r;
          if (round) {
            if (!s.shape.IsRound()) continue;
            const int fn = s.shape.shape == Shape::kCircle ? 0 : s.shape.cylinder_fn;
            const int want = cyl->fn >= 3 && cyl->fn <= 6 ? cyl->fn : 0;
            if (fn != want) continue;
          } else if (!s.shape.IsBoxLike()) {
            continue;
          }
          if (Near(s.extent.x, ext.x) && Near(s.extent.y, ext.y) &&
              Near(s.box_center.x, ctr.x) && Near(s.box_center.y, ctr.y))
            Consume(r, group);
        }
    }
  }

  // Solid seen as `f` in the front view and `s` in the side view.
  SolidNode FromFrontSide(const Rec& fr, const Rec& sr, BoolOp op) {
    const ShapeRecord& f = *fr.r;
    const ShapeRecord& s = *sr.r;
    const std::string label = Label(fr);
    if (f.shape.IsRound()) {
      return MakeCylinder(f, s.extent.x, Axis::kY,
                          {f.rel_translation.x, s.box_center.x, f.rel_translation.y},
                          {0, -f.rotation_deg, 0}, op, label);
    }
    if (s.shape.IsRound()) {
      return MakeCylinder(s, f.extent.x, Axis::kX,
                          {f.box_center.x, s.rel_translation.x, s.rel_translation.y},
                          {s.rotation_deg, 0, 0}, op, label);
    }
    // Box in front and side: the top view decides between a vertical
    // cylinder and a (possibly z-rotated) box.
    if (Rec* t = FindTopBoth(f, s)) {
      Consume(*t, -2);  // re-tagged by AddSolid's caller
      pending_top_ = t;
      const ShapeRecord& tr = *t->r;
      if (tr.shape.IsRound()) {
        return MakeCylinder(tr, f.extent.y, Axis::kZ,
                            {tr.rel_translation.x, tr.rel_translation.y, f.box_center.y},
                            {0, 0, tr.rotation_deg}, op, label);
      }
      if (tr.rotation_deg != 0) {
        return MakeCube({tr.along, tr.across, f.extent.y},
                        {tr.rel_translation.x, tr.rel_translation.y, f.box_center.y},
                        {0, 0, tr.rotation_deg}, op, label);
      }
    }
    if (f.rotation_deg != 0) {
      return MakeCube({f.along, s.extent.x, f.across},
                      {f.rel_translation.x, s.box_center.x, f.rel_translation.y},
                      {0, -f.rotation_deg, 0}, op, label);
    }
    if (s.rotation_deg != 0) {
      return MakeCube({f.extent.x, s.along, s.across},
                      {f.box_center.x, s.rel_translation.x, s.rel_translation.y},
                      {s.rotation_deg, 0, 0}, op, label);
    }
    return MakeCube({f.extent.x, s.extent.x, f.extent.y},
                    {f.box_center.x, s.box_center.x, f.box_center.y}, {}, op, label);
  }

  int Place(SolidNode n, int group, std::initializer_list<Rec*> used) {
    const int idx_hint = n.op == BoolOp::kNone ? int(groups_.size()) : group;
    for (Rec* r : used)
      if (r) Consume(*r, idx_hint);
    if (pending_top_) {
      pending_top_->solid = idx_hint;
      pending_top_ = nullptr;
    }
    return AddSolid(std::move(n), group);
  }

  // Solid extruded along a view axis through the parent's full extent.
  SolidNode Through(const ShapeRecord& r, View view, const Aabb& parent, BoolOp op,
                    std::string label) const {
    const Axis axis = ViewAxis(view);
    const int a = axis == Axis::kX ? 0 : (axis == Axis::kY ? 1 : 2);
    const double depth = parent.max[a] - parent.min[a];
    const double mid = (parent.max[a] + parent.min[a]) / 2;
    const auto [ua, va] = ViewAxes(view);
    Vec3 center;
    center[ua] = r.rel_translation.x;
    center[va] = r.rel_translation.y;
    center[a] = mid;
    Vec3 rot;
    // Rotation about the view axis, signed so the outline turns by
    // rotation_deg in the view frame.
    rot[a] = view == View::kFront ? -r.rotation_deg : r.rotation_deg;
    if (r.shape.IsRound()) return MakeCylinder(r, depth, axis, center, rot, op, std::move(label));
    Vec3 size;
    size[ua] = r.along;
    size[va] = r.across;
    size[a] = depth;
    return MakeCube(size, center, rot, op, std::move(label));
  }

  Aabb GroupHeadBounds(int group) const { return Bounds(groups_[group].front()); }

  void FrontPass() {
    for (auto& group : front_.groups) {
      int solid = -1;
      for (Rec& f : group) {
        if (f.consumed) {
          if (f.head()) solid = f.solid;
          continue;
        }
        const ShapeRecord& fr = *f.r;
        const bool child = !f.head() && solid >= 0;
        Rec* s = FindSide(fr, !child, child ? solid : -1);
        if (s) {
          ++matched_;
          const BoolOp op = child ? BoolOp::kUnion : BoolOp::kNone;
          const int g = Place(FromFrontSide(f, *s, op), solid, {&f, s});
          if (!child) solid = g;
          continue;
        }
        if (child) {
          Place(Through(fr, View::kFront, GroupHeadBounds(solid), BoolOp::kDifference, Label(f)),
                solid, {&f});
          continue;
        }
        Rec* t = FindTopByX(fr, -1);
        if (!t) {
          throw Error(ErrorCode::kMissingDepth,
                      "no side or top counterpart gives the depth of " + Label(f));
        }
        const ShapeRecord& tr = *t->r;
        SolidNode n;
        if (fr.shape.IsRound()) {
          n = MakeCylinder(fr, tr.extent.y, Axis::kY,
                           {fr.rel_translation.x, tr.box_center.y, fr.rel_translation.y},
                           {0, -fr.rotation_deg, 0}, BoolOp::kNone, Label(f));
        } else if (tr.shape.IsRound()) {
          n = MakeCylinder(tr, fr.extent.y, Axis::kZ,
                           {tr.rel_translation.x, tr.rel_translation.y, fr.box_center.y},
                           {0, 0, tr.rotation_deg}, BoolOp::kNone, Label(f));
        } else {
          n = MakeCube({fr.extent.x, tr.extent.y, fr.extent.y},
                       {fr.box_center.x, tr.box_center.y, fr.box_center.y}, {},
                       BoolOp::kNone, Label(f));
        }
        solid = Place(std::move(n), -1, {&f, t});
      }
    }
  }

  void SidePass() {
    for (auto& group : side_.groups) {
      const int head_solid = group.front().consumed ? group.front().solid : -1;
      int solid = head_solid;
      for (Rec& s : group) {
        if (s.consumed) continue;
        const ShapeRecord& sr = *s.r;
        const bool child = !s.head() && solid >= 0;
        Rec* t = FindTopByY(sr, child ? solid : -1, !child);
        if (t) {
          const ShapeRecord& tr = *t->r;
          const BoolOp op = child ? BoolOp::kUnion : BoolOp::kNone;
          SolidNode n;
          if (sr.shape.IsRound()) {
            n = MakeCylinder(sr, tr.extent.x, Axis::kX,
                             {tr.box_center.x, sr.rel_translation.x, sr.rel_translation.y},
                             {sr.rotation_deg, 0, 0}, op, Label(s));
          } else if (tr.shape.IsRound()) {
            n = MakeCylinder(tr, sr.extent.y, Axis::kZ,
                             {tr.rel_translation.x, tr.rel_translation.y, sr.box_center.y},
                             {0, 0, tr.rotation_deg}, op, Label(s));
          } else {
            n = MakeCube({tr.extent.x, sr.extent.x, sr.extent.y},
                         {tr.box_center.x, sr.box_center.x, sr.box_center.y}, {}, op, Label(s));
          }
          const int g = Place(std::move(n), solid, {&s, t});
          if (!child) solid = g;
          continue;
        }
        if (child) {
          Place(Through(sr, View::kSide, GroupHeadBounds(solid), BoolOp::kDifference, Label(s)),
                solid, {&s});
          continue;
        }
        throw Error(ErrorCode::kMissingDepth,
                    "no front or top counterpart gives the width of " + Label(s));
      }
    }
  }

  void TopPass() {
    for (auto& group : top_.groups) {
      const int parent = group.front().consumed ? group.front().solid : -1;
      for (Rec& t : group) {
        if (t.consumed) continue;
        if (t.head() || parent < 0) {
          t.ignored = true;
          t.reason = "visible only in the top view without a visible parent";
          warnings_.push_back("ignored " + Label(t) + ": " + t.reason);
          continue;
        }
        Place(Through(*t.r, View::kTop, GroupHeadBounds(parent), BoolOp::kDifference, Label(t)),
              parent, {&t});
      }
    }
  }

  static bool Touch(const Aabb& a, const Aabb& b, double tol) {
    for (int i = 0; i < 3; ++i)
      if (a.min[i] > b.max[i] + tol || b.min[i] > a.max[i] + tol) return false;
    return true;
  }

  static double Volume(const SolidNode& n) {
    const Vec3 s = Bounds(n).Size();
    return s.x * s.y * s.z;
  }

  std::vector<std::vector<SolidNode>> MergeTouching() {
    std::vector<std::vector<SolidNode>> out;
    if (groups_.empty()) return out;
    size_t anchor = 0;
    for (size_t i = 1; i < groups_.size(); ++i)
      if (Volume(groups_[i].front()) > Volume(groups_[anchor].front()) * (1 + 1e-9)) anchor = i;

    std::vector<char> merged(groups_.size(), 0);
    merged[anchor] = 1;
    std::vector<SolidNode> main = groups_[anchor];
    Aabb extent = Bounds(main.front());
    auto grow = [&](const Aabb& b) {
      for (int i = 0; i < 3; ++i) {
        extent.min[i] = std::min(extent.min[i], b.min[i]);
        extent.max[i] = std::max(extent.max[i], b.max[i]);
      }
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (size_t i = 0; i < groups_.size(); ++i) {
        if (merged[i] || !Touch(extent, Bounds(groups_[i].front()), cfg_.touch_tolerance))
          continue;
        merged[i] = 1;
        changed = true;
        grow(Bounds(groups_[i].front()));
        SolidNode head = groups_[i].front();
        head.op = BoolOp::kUnion;
        main.push_back(std::move(head));
        main.insert(main.end(), groups_[i].begin() + 1, groups_[i].end());
      }
    }
    out.push_back(std::move(main));
    for (size_t i = 0; i < groups_.size(); ++i)
      if (!merged[i]) out.push_back(groups_[i]);
    for (auto& g : out)
      std::stable_partition(g.begin() + 1, g.end(),
                            [](const SolidNode& n) { return n.op == BoolOp::kUnion; });
    return out;
  }

  AssemblyConfig cfg_;
  double tol_;
  double min_ratio_ = 0;
  ViewState front_, side_, top_;
  std::vector<std::vector<SolidNode>> groups_;
  Rec* pending_top_ = nullptr;
  int matched_ = 0;
  std::vector<std::string> warnings_;
};

}  // namespace

Assembly Combining(const ViewObjects& front, const ViewObjects& side, const ViewObjects& top,
                   const AssemblyConfig& cfg) {
  if (cfg.round_off_approx < 0)
    throw Error(ErrorCode::kPrecondition, "round-off tolerance must be non-negative");
  if (front.view != View::kFront || side.view != View::kSide || top.view != View::kTop)
    throw Error(ErrorCode::kPrecondition, "views passed in the wrong order");
  return Assembler(front, side, top, cfg).Run(front, side, top);
}

std::vector<SolidNode> Flatten(const std::vector<std::vector<SolidNode>>& groups) {
  std::vector<SolidNode> out;
  for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
  return out;
}

}  // namespace orthocsg
