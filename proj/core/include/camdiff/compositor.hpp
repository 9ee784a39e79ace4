// Copyright 2026 The camdiff Authors
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

#pragma once

#include <cstdint>
#include <vector>

#include "camdiff/geometry.hpp"

namespace camdiff {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// 8-bit RGB raster, row-major, interleaved.
class ImageBuffer {
 public:
  using Rgb = camdiff::Rgb;

  ImageBuffer() = default;
  ImageBuffer(int width, int height, Rgb fill = Rgb{});
  ImageBuffer(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return pixels_.empty(); }

  Rgb at(int x, int y) const noexcept {
    const auto* p = &pixels_[offset(x, y)];
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb c) noexcept {
    auto* p = &pixels_[offset(x, y)];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }
  std::vector<std::uint8_t>& pixels() noexcept { return pixels_; }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x));
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Single-channel inpainting mask: 255 = fill, 0 = keep.
struct MaskRaster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;

  bool fill_at(int x, int y) const noexcept {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)] == 255;
  }
  /// Bounding rect of the 255-set; zero-area rect when nothing is set.
  Rect fill_bounds() const noexcept;

  friend bool operator==(const MaskRaster&, const MaskRaster&) = default;
};

inline constexpr Rgb kCutFill{128, 128, 128};
inline constexpr int kCanvasSide = 512;

/// Bilinear resample to side x side (pixel-center aligned, round half up).
ImageBuffer resize_canvas(const ImageBuffer& image, int side);

/// Nearest-neighbour resample; keeps labels binary.
BinaryMask resize_mask(const BinaryMask& mask, int side);

/// Maps a rect from a width x height image onto a side x side canvas by
/// scaling its corners with round-half-up.
Rect scale_rect(const Rect& rect, int width, int height, int side);

struct CutResult {
  ImageBuffer masked;
  MaskRaster raster;
};

/// Greys out `rect` and rasterises it. Throws DegenerateRegion for zero area.
CutResult cut(const ImageBuffer& image, const Rect& rect);

/// Pixels inside `rect` from `generated`, everything else from `source`.
ImageBuffer paste_back(const ImageBuffer& source, const ImageBuffer& generated, const Rect& rect);

ImageBuffer crop(const ImageBuffer& image, const Rect& rect);

/// Rasterises `rect` as a width x height mask.
MaskRaster rasterize(int width, int height, const Rect& rect);

}  // namespace camdiff
