# Copyright 2026 The orthocsg Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os
import pathlib

import numpy as np
import pytest

import orthocsg

SOURCE = pathlib.Path(os.environ.get("ORTHOCSG_SOURCE_DIR", pathlib.Path(__file__).parents[2]))


def test_fixture_names():
    assert orthocsg.fixtures() == ["block", "block_hole", "block_boss", "prism"]


def test_render_and_reconstruct_block_hole():
    views, dims = orthocsg.render(orthocsg.fixture_model("block_hole"))
    assert all(v.dtype == np.uint8 and v.shape == (512, 512) for v in views)
    rec = orthocsg.reconstruct(*views, dims)
    kinds = [(n["kind"], n["op"]) for n in rec.nodes]
    assert kinds == [("cube", "none"), ("cylinder", "difference")]
    assert rec.nodes[1]["axis"] == "z"
    assert rec.nodes[1]["radius"] == pytest.approx(0.4, abs=0.02)
    assert rec.scad.count("difference() {") == 1
    assert rec.timings_ms["total"] >= 0


def test_matches_golden_file():
    d = SOURCE / "data" / "fixtures"
    rec = orthocsg.reconstruct_files(
        str(d / "prism_front.png"), str(d / "prism_side.png"), str(d / "prism_top.png"), (2, 2, 2)
    )
    assert rec.scad == (SOURCE / "tests" / "golden" / "prism.scad").read_text()


def test_cloud_lies_on_surface():
    views, dims = orthocsg.render(orthocsg.fixture_model("block"))
    rec = orthocsg.reconstruct(*views, dims)
    pts = orthocsg.sample_surface(rec, 500, seed=3)
    assert pts.shape == (500, 3)
    assert max(abs(orthocsg.signed_distance(rec, *p)) for p in pts) <= 1e-3
    assert np.array_equal(pts, orthocsg.sample_surface(rec, 500, seed=3))


def test_errors_carry_codes():
    blank = np.full((64, 64), 255, dtype=np.uint8)
    with pytest.raises(orthocsg.OrthocsgError) as info:
        orthocsg.reconstruct(blank, blank, blank, (1, 1, 1))
    assert info.value.code == "empty-drawing"
    with pytest.raises(orthocsg.OrthocsgError):
        orthocsg.render("cube size=1,1\n")
