// Copyright 2026 The Scrapbook Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCRAPBOOK_BANK_RASTER_HPP_
#define SCRAPBOOK_BANK_RASTER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "core/types.hpp"
#include "core/vocab.hpp"

namespace scrapbook {

// Interleaved 8-bit raster with 3 (RGB) or 4 (RGBA) channels.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 3;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, int c) : width(w), height(h), channels(c), pixels(std::size_t(w) * h * c, 0) {}

  std::uint8_t* at(int x, int y) { return &pixels[(std::size_t(y) * width + x) * channels]; }
  const std::uint8_t* at(int x, int y) const { return &pixels[(std::size_t(y) * width + x) * channels]; }

  static Image filled(int w, int h, Rgb color);
  friend bool operator==(const Image&, const Image&) = default;
};

// Binary raster, one byte (0/1) per pixel.
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  Mask() = default;
  Mask(int w, int h) : width(w), height(h), bits(std::size_t(w) * h, 0) {}

  bool get(int x, int y) const { return bits[std::size_t(y) * width + x] != 0; }
  void set(int x, int y, bool v = true) { bits[std::size_t(y) * width + x] = v ? 1 : 0; }
  std::size_t count() const;
  friend bool operator==(const Mask&, const Mask&) = default;
};

// True when masks placed at their boxes share a foreground pixel.
bool masks_overlap(const Mask& a, const Rect& a_box, const Mask& b, const Rect& b_box);

// "Over" composite of an RGBA cutout onto an RGB canvas at (x, y).
void composite_over(Image& canvas, const Image& cutout, int x, int y);

// ---- file IO (PNG via libpng, JPEG via libjpeg) ----
Image read_image(const std::filesystem::path& path);  // RGB or RGBA, by source
std::pair<int, int> read_image_size(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Image& img);
void write_mask_png(const std::filesystem::path& path, const Mask& mask);  // 1-bit grayscale
Mask read_mask_png(const std::filesystem::path& path);

}  // namespace scrapbook

#endif  // SCRAPBOOK_BANK_RASTER_HPP_
