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

#include "orthocsg/image.h"

#include <png.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>

#include "orthocsg/contour.h"
#include "orthocsg/error.h"

namespace orthocsg {

namespace fs = std::filesystem;

namespace {

struct Rgba {
  int width = 0;
  int height = 0;
  bool color = false;
  std::vector<uint8_t> px;  // 4 bytes per pixel
};

uint8_t OverWhite(uint8_t c, uint8_t a) {
  return uint8_t((int(c) * a + 255 * (255 - a) + 127) / 255);
}

std::vector<uint8_t> ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Rgba DecodePng(const std::vector<uint8_t>& bytes, const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::kFormat,
                "bad PNG " + path.string() + ": " + image.message);
  }
  Rgba out;
  out.width = int(image.width);
  out.height = int(image.height);
  out.color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = PNG_FORMAT_RGBA;
  out.px.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.px.data(), 0, nullptr)) {
    png_image_free(&image);
    throw Error(ErrorCode::kFormat,
                "bad PNG " + path.string() + ": " + image.message);
  }
  return out;
}

uint32_t Le32(const uint8_t* p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 |
         uint32_t(p[3]) << 24;
}
uint16_t Le16(const uint8_t* p) { return uint16_t(p[0] | p[1] << 8); }

// Uncompressed 8-bit palettised, 24-bit and 32-bit BMPs.
Rgba DecodeBmp(const std::vector<uint8_t>& b, const fs::path& path) {
  auto fail = [&](const char* why) {
    return Error(ErrorCode::kFormat, "bad BMP " + path.string() + ": " + why);
  };
  if (b.size() < 54) throw fail("truncated header");
  const uint32_t offset = Le32(&b[10]);
  const uint32_t header_size = Le32(&b[14]);
  const int32_t w = int32_t(Le32(&b[18]));
  const int32_t h_raw = int32_t(Le32(&b[22]));
  const uint16_t bpp = Le16(&b[28]);
  const uint32_t compression = Le32(&b[30]);
  if (w <= 0 || h_raw == 0) throw fail("bad dimensions");
  if (compression != 0 && !(compression == 3 && bpp == 32))
    throw fail("compressed BMP not supported");
  if (bpp != 8 && bpp != 24 && bpp != 32) throw fail("unsupported bit depth");
  const bool bottom_up = h_raw > 0;
  const int h = bottom_up ? h_raw : -h_raw;
  const size_t stride = (size_t(w) * bpp / 8 + 3) & ~size_t(3);
  if (offset + stride * h > b.size()) throw fail("truncated pixel data");

  std::vector<std::array<uint8_t, 3>> palette;
  if (bpp == 8) {
    uint32_t colors = Le32(&b[46]);
    if (colors == 0) colors = 256;
    const size_t pal = 14 + header_size;
    if (pal + colors * 4 > b.size()) throw fail("truncated palette");
    for (uint32_t i = 0; i < colors; ++i)
      palette.push_back({b[pal + i * 4 + 2], b[pal + i * 4 + 1], b[pal + i * 4]});
  }

  Rgba out;
  out.width = w;
  out.height = h;
  out.px.resize(size_t(w) * h * 4);
  for (int y = 0; y < h; ++y) {
    const uint8_t* row = &b[offset + stride * (bottom_up ? h - 1 - y : y)];
    for (int x = 0; x < w; ++x) {
      uint8_t* dst = &out.px[(size_t(y) * w + x) * 4];
      if (bpp == 8) {
        const uint8_t idx = row[x];
        if (idx >= palette.size()) throw fail("palette index out of range");
        std::copy(palette[idx].begin(), palette[idx].end(), dst);
      } else {
        const uint8_t* src = row + x * (bpp / 8);
        dst[0] = src[2];
        dst[1] = src[1];
        dst[2] = src[0];
      }
      dst[3] = 255;
      out.color = out.color || dst[0] != dst[1] || dst[1] != dst[2];
    }
  }
  return out;
}

Rgba Decode(const fs::path& path) {
  const auto bytes = ReadFile(path);
  static constexpr uint8_t kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::equal(kPngSig, kPngSig + 8, bytes.begin()))
    return DecodePng(bytes, path);
  if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M')
    return DecodeBmp(bytes, path);
  throw Error(ErrorCode::kFormat, "unsupported image format: " + path.string());
}

void WritePng(const fs::path& path, int w, int h, png_uint_32 format,
              const void* pixels) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = png_uint_32(w);
  image.height = png_uint_32(h);
  image.format = format;
  FILE* f = std::fopen(path.string().c_str(), "wb");
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  const bool ok =
      png_image_write_to_stdio(&image, f, 0, pixels, 0, nullptr) != 0;
  const bool closed = std::fclose(f) == 0;
  if (!ok || !closed)
    throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "io";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kEmptyDrawing: return "empty-drawing";
    case ErrorCode::kAssemblyMismatch: return "assembly-mismatch";
    case ErrorCode::kMissingDepth: return "missing-depth";
    case ErrorCode::kEmptyCloud: return "empty-cloud";
    case ErrorCode::kRender: return "render";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

GrayImage::GrayImage(int width, int height, uint8_t fill)
    : GrayImage(width, height,
                std::vector<uint8_t>(size_t(std::max(width, 0)) *
                                         std::max(height, 0),
                                     fill)) {}

GrayImage::GrayImage(int width, int height, std::vector<uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width <= 0 || height <= 0)
    throw Error(ErrorCode::kPrecondition, "image dimensions must be positive");
  if (data_.size() != size_t(width) * height)
    throw Error(ErrorCode::kPrecondition, "image data length mismatch");
}

RgbImage::RgbImage(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0)
    throw Error(ErrorCode::kPrecondition, "image dimensions must be positive");
  data_.assign(size_t(width) * height, fill);
}

RgbImage::RgbImage(const GrayImage& gray)
    : RgbImage(gray.width(), gray.height()) {
  for (size_t i = 0; i < data_.size(); ++i) {
    const uint8_t v = gray.data()[i];
    data_[i] = {v, v, v};
  }
}

uint8_t Luma(uint8_t r, uint8_t g, uint8_t b) {
  return uint8_t((299 * r + 587 * g + 114 * b + 500) / 1000);
}

GrayImage LoadGray(const fs::path& path) {
  const Rgba src = Decode(path);
  std::vector<uint8_t> gray(size_t(src.width) * src.height);
  for (size_t i = 0; i < gray.size(); ++i) {
    const uint8_t* p = &src.px[i * 4];
    const uint8_t r = OverWhite(p[0], p[3]);
    if (!src.color) {
      gray[i] = r;
      continue;
    }
    gray[i] = Luma(r, OverWhite(p[1], p[3]), OverWhite(p[2], p[3]));
  }
  return GrayImage(src.width, src.height, std::move(gray));
}

RgbImage LoadRgb(const fs::path& path) {
  const Rgba src = Decode(path);
  RgbImage out(src.width, src.height);
  for (int y = 0; y < src.height; ++y)
    for (int x = 0; x < src.width; ++x) {
      const uint8_t* p = &src.px[(size_t(y) * src.width + x) * 4];
      out.at(x, y) = {OverWhite(p[0], p[3]), OverWhite(p[1], p[3]),
                      OverWhite(p[2], p[3])};
    }
  return out;
}

void SavePng(const GrayImage& img, const fs::path& path) {
  WritePng(path, img.width(), img.height(), PNG_FORMAT_GRAY, img.data().data());
}

void SavePng(const RgbImage& img, const fs::path& path) {
  static_assert(sizeof(Rgb) == 3);
  WritePng(path, img.width(), img.height(), PNG_FORMAT_RGB, img.data().data());
}

void SaveBmp(const GrayImage& img, const fs::path& path) {
  const int w = img.width(), h = img.height();
  const size_t stride = (size_t(w) * 3 + 3) & ~size_t(3);
  const uint32_t size = uint32_t(54 + stride * h);
  std::vector<uint8_t> out(size, 0);
  auto put32 = [&](size_t at, uint32_t v) {
    for (int i = 0; i < 4; ++i) out[at + i] = uint8_t(v >> (8 * i));
  };
  out[0] = 'B';
  out[1] = 'M';
  put32(2, size);
  put32(10, 54);
  put32(14, 40);
  put32(18, uint32_t(w));
  put32(22, uint32_t(h));
  out[26] = 1;
  out[28] = 24;
  put32(34, uint32_t(stride * h));
  for (int y = 0; y < h; ++y) {
    uint8_t* row = &out[54 + stride * (h - 1 - y)];
    for (int x = 0; x < w; ++x) row[x * 3] = row[x * 3 + 1] = row[x * 3 + 2] = img.at(x, y);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()), std::streamsize(out.size()));
  if (!f) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

BinaryImage ThresholdInv(const GrayImage& img, int thresh, uint8_t maxval) {
  if (thresh < 0 || thresh > 255)
    throw Error(ErrorCode::kPrecondition, "threshold must be in [0, 255]");
  std::vector<uint8_t> out(img.data().size());
  std::transform(img.data().begin(), img.data().end(), out.begin(),
                 [&](uint8_t v) { return v > thresh ? uint8_t(0) : maxval; });
  return BinaryImage(img.width(), img.height(), std::move(out));
}

std::vector<Point> RasterLine(Point a, Point b) {
  std::vector<Point> pts;
  const int dx = std::abs(b.x - a.x), dy = -std::abs(b.y - a.y);
  const int sx = a.x < b.x ? 1 : -1, sy = a.y < b.y ? 1 : -1;
  int err = dx + dy;
  for (Point p = a;;) {
    pts.push_back(p);
    if (p == b) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      p.x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      p.y += sy;
    }
  }
  return pts;
}

void DrawClosedPolyline(RgbImage& img, std::span<const Point> points, Rgb color) {
  for (size_t i = 0; i < points.size(); ++i) {
    const Point a = points[i], b = points[(i + 1) % points.size()];
    for (const Point p : RasterLine(a, b))
      if (img.Contains(p.x, p.y)) img.at(p.x, p.y) = color;
  }
}

void DrawAnnotation(const GrayImage& img, const Contour& contour,
                    const fs::path& out_path) {
  RgbImage out(img);
  DrawClosedPolyline(out, contour.points, kHighlight);
  SavePng(out, out_path);
}

}  // namespace orthocsg
