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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "orthocsg/cloud.h"
#include "orthocsg/error.h"
#include "orthocsg/pipeline.h"
#include "orthocsg/scad_emit.h"
#include "orthocsg/synthgen.h"

namespace py = pybind11;
using namespace orthocsg;

namespace {

using U8Array = py::array_t<uint8_t, py::array::c_style | py::array::forcecast>;

GrayImage ToImage(const U8Array& a) {
  if (a.ndim() != 2) throw Error(ErrorCode::kPrecondition, "expected a 2-D uint8 array");
  const int h = int(a.shape(0)), w = int(a.shape(1));
  return GrayImage(w, h, std::vector<uint8_t>(a.data(), a.data() + size_t(w) * h));
}

U8Array ToArray(const GrayImage& img) {
  U8Array out({img.height(), img.width()});
  std::memcpy(out.mutable_data(), img.data().data(), img.data().size());
  return out;
}

py::dict NodeDict(const SolidNode& n) {
  py::dict d;
  d["op"] = std::string(BoolOpName(n.op));
  d["translation"] = py::make_tuple(n.translation.x, n.translation.y, n.translation.z);
  d["rotation"] = py::make_tuple(n.rotation.x, n.rotation.y, n.rotation.z);
  if (const auto* c = std::get_if<Cube>(&n.primitive)) {
    d["kind"] = "cube";
    d["size"] = py::make_tuple(c->size.x, c->size.y, c->size.z);
  } else {
    const auto& cyl = std::get<Cylinder>(n.primitive);
    d["kind"] = "cylinder";
    d["height"] = cyl.height;
    d["radius"] = cyl.radius;
    d["fn"] = cyl.fn;
    d["axis"] = std::string(1, "xyz"[int(cyl.axis)]);
  }
  return d;
}

Reconstruction Run(const std::array<GrayImage, 3>& images, const std::array<double, 3>& dims, bool parallel) {
  PipelineConfig cfg;
  cfg.parallel_views = parallel;
  py::gil_scoped_release release;
  return Reconstruct(images, dims, cfg);
}

}  // namespace

PYBIND11_MODULE(_orthocsg, m) {
  m.doc() = "Reconstruct CSG solids from three orthographic drawings.";

  static py::exception<Error> error(m, "OrthocsgError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(py::str(std::string(ErrorCodeName(e.code())) + ": " + e.what()));
      exc.attr("code") = std::string(ErrorCodeName(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<Reconstruction>(m, "Reconstruction")
      .def_readonly("scad", &Reconstruction::scad)
      .def_readonly("warnings", &Reconstruction::warnings)
      .def_property_readonly("nodes",
                             [](const Reconstruction& r) {
                               py::list out;
                               for (const SolidNode& n : r.nodes) out.append(NodeDict(n));
                               return out;
                             })
      .def_property_readonly("timings_ms", [](const Reconstruction& r) {
        py::dict d;
        d["views"] = r.timings.views_ms;
        d["assembly"] = r.timings.assembly_ms;
        d["emit"] = r.timings.emit_ms;
        d["total"] = r.timings.total_ms;
        return d;
      });

  m.def(
      "reconstruct",
      [](const U8Array& front, const U8Array& side, const U8Array& top, std::array<double, 3> dims, bool parallel) {
        return Run({ToImage(front), ToImage(side), ToImage(top)}, dims, parallel);
      },
      py::arg("front"), py::arg("side"), py::arg("top"), py::arg("dims"), py::arg("parallel") = true,
      "Reconstruct from three grayscale drawings (H x W uint8) and each view's longest side.");

  m.def(
      "reconstruct_files",
      [](const std::string& front, const std::string& side, const std::string& top, std::array<double, 3> dims) {
        return Run({LoadGray(front), LoadGray(side), LoadGray(top)}, dims, true);
      },
      py::arg("front"), py::arg("side"), py::arg("top"), py::arg("dims"));

  m.def("fixtures", [] {
    std::vector<std::string> names;
    for (const Fixture& f : FixtureCatalog()) names.push_back(f.name);
    return names;
  });

  m.def("fixture_model", [](const std::string& name) {
    for (const Fixture& f : FixtureCatalog())
      if (f.name == name) return FormatModel(f.model);
    throw Error(ErrorCode::kPrecondition, "unknown fixture " + name);
  });

  m.def(
      "render",
      [](const std::string& model_text) {
        const RenderedViews v = RenderViews(ParseModel(model_text));
        return py::make_tuple(py::make_tuple(ToArray(v.images[0]), ToArray(v.images[1]), ToArray(v.images[2])),
                              py::make_tuple(v.dims[0], v.dims[1], v.dims[2]));
      },
      py::arg("model_text"), "Draw the front, side and top views of a model description.");

  m.def(
      "sample_surface",
      [](const Reconstruction& r, size_t n, uint64_t seed, double tol) {
        SampleOptions opts;
        opts.seed = seed;
        opts.tol = tol;
        PointCloud pc;
        {
          py::gil_scoped_release release;
          pc = SampleSurface(CsgSdf(r.nodes), n, opts);
        }
        py::array_t<double> out({py::ssize_t(pc.points.size()), py::ssize_t(3)});
        auto v = out.mutable_unchecked<2>();
        for (size_t i = 0; i < pc.points.size(); ++i)
          for (int a = 0; a < 3; ++a) v(py::ssize_t(i), a) = pc.points[i][a];
        return out;
      },
      py::arg("reconstruction"), py::arg("n"), py::arg("seed") = 0, py::arg("tol") = 1e-3);

  m.def(
      "signed_distance",
      [](const Reconstruction& r, double x, double y, double z) { return CsgSdf(r.nodes).Eval({x, y, z}); },
      py::arg("reconstruction"), py::arg("x"), py::arg("y"), py::arg("z"));
}
