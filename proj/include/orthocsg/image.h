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
#include <span>
#include <vector>

#include "orthocsg/geometry.h"

namespace orthocsg {

/// Row-major 8-bit single channel raster. GrayImage and BinaryImage share the
/// layout; a BinaryImage only ever holds 0 or its foreground value.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }
  std::span<const uint8_t> data() const { return data_; }

  uint8_t at(int x, int y) const { return data_[size_t(y) * width_ + x]; }
  uint8_t& at(int x, int y) { return data_[size_t(y) * width_ + x]; }
  bool Contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> data_;
};

using BinaryImage = GrayImage;

struct Rgb {
  uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height, Rgb fill = {});
  explicit RgbImage(const GrayImage& gray);

  int width() const { return width_; }
  int height() const { return height_; }
  Rgb at(int x, int y) const { return data_[size_t(y) * width_ + x]; }
  Rgb& at(int x, int y) { return data_[size_t(y) * width_ + x]; }
  bool Contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  std::span<const Rgb> data() const { return data_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Rgb> data_;
};

inline constexpr Rgb kHighlight{255, 0, 0};
inline constexpr Rgb kMeasureHighlight{0, 160, 0};

/// BT.601 luma, rounded to nearest.
uint8_t Luma(uint8_t r, uint8_t g, uint8_t b);

/// Decodes a PNG or BMP file. Colour sources are converted with BT.601 luma;
/// translucent pixels are composited onto white first.
GrayImage LoadGray(const std::filesystem::path& path);
RgbImage LoadRgb(const std::filesystem::path& path);

void SavePng(const GrayImage& img, const std::filesystem::path& path);
void SavePng(const RgbImage& img, const std::filesystem::path& path);
void SaveBmp(const GrayImage& img, const std::filesystem::path& path);

/// Inverse binary threshold: pixels brighter than `thresh` become 0,
/// everything else `maxval`, so dark strokes end up as foreground.
BinaryImage ThresholdInv(const GrayImage& img, int thresh = 127,
                         uint8_t maxval = 255);

/// Integer line rasterization between two pixels (inclusive), 8-connected.
std::vector<Point> RasterLine(Point a, Point b);

/// Overdraws the closed polyline through `points` onto `img`.
void DrawClosedPolyline(RgbImage& img, std::span<const Point> points, Rgb color);

struct Contour;

/// Writes `img` as colour PNG with `contour` highlighted. An empty contour
/// writes an unmodified copy.
void DrawAnnotation(const GrayImage& img, const Contour& contour,
                    const std::filesystem::path& out_path);

}  // namespace orthocsg
