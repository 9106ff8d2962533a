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

// Renders front/side/top drawings of a model file or catalog fixture.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "orthocsg/error.h"
#include "orthocsg/synthgen.h"

namespace fs = std::filesystem;
using namespace orthocsg;

namespace {

void Render(const std::string& name, const GroundTruthModel& m, const fs::path& dir) {
  fs::create_directories(dir);
  const RenderedViews v = RenderViews(m);
  const char* views[3] = {"front", "side", "top"};
  std::ofstream dims(dir / (name + "_dims.txt"));
  for (int i = 0; i < 3; ++i) {
    SavePng(v.images[i], dir / (name + "_" + views[i] + ".png"));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s %.6f\n", views[i], v.dims[i]);
    dims << buf;
    std::cout << name << " " << buf;
  }
  std::ofstream(dir / (name + ".txt")) << FormatModel(m);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Render orthographic drawings of a ground-truth model"};
  std::string model, fixture;
  std::string out_dir = ".";
  bool all = false, list = false;
  app.add_option("--model", model, "Model description file");
  app.add_option("--fixture", fixture, "Catalog fixture name");
  app.add_flag("--all", all, "Render every catalog fixture");
  app.add_flag("--list", list, "List catalog fixtures");
  app.add_option("--out-dir", out_dir, "Output directory");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto catalog = FixtureCatalog();
    if (list) {
      for (const auto& f : catalog) std::cout << f.name << "\n";
      return 0;
    }
    if (!model.empty()) {
      Render(fs::path(model).stem().string(), LoadModel(model), out_dir);
      return 0;
    }
    bool found = false;
    for (const auto& f : catalog)
      if (all || f.name == fixture) {
        Render(f.name, f.model, out_dir);
        found = true;
      }
    if (!found) {
      std::cerr << "error: precondition: give --model, --all or a known --fixture\n";
      return 2;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::kIo ? 5 : 1;
  }
  return 0;
}
