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

#include "camdiff/compositor.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "camdiff/error.hpp"

namespace camdiff {
namespace {

void require_fits(const Rect& rect, int width, int height) {
  if (!rect.fits(width, height)) {
    throw Error(ErrorCode::InvalidArgument, "rect lies outside the image");
  }
}

struct Tap {
  int lo;
  int hi;
  double frac;
};

// Source coordinates for each destination column/row under half-pixel alignment.
std::vector<Tap> bilinear_taps(int src, int dst) {
  std::vector<Tap> taps(static_cast<std::size_t>(dst));
  const double scale = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    double pos = (i + 0.5) * scale - 0.5;
    pos = std::clamp(pos, 0.0, static_cast<double>(src - 1));
    const int lo = static_cast<int>(std::floor(pos));
    const int hi = std::min(lo + 1, src - 1);
    taps[static_cast<std::size_t>(i)] = {lo, hi, pos - lo};
  }
  return taps;
}

}  // namespace

ImageBuffer::ImageBuffer(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
  pixels_.resize(3 * static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

ImageBuffer::ImageBuffer(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 1 || height < 1) throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
  if (pixels_.size() != 3 * static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::DimensionMismatch, "pixel buffer does not match 3 x width x height");
  }
}

Rect MaskRaster::fill_bounds() const noexcept {
  int x0 = width, y0 = height, x1 = -1, y1 = -1;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (!fill_at(x, y)) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) return Rect{};
  return Rect{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

ImageBuffer resize_canvas(const ImageBuffer& image, int side) {
  if (side < 1) throw Error(ErrorCode::InvalidArgument, "canvas side must be >= 1");
  if (image.width() == side && image.height() == side) return image;

  const auto xt = bilinear_taps(image.width(), side);
  const auto yt = bilinear_taps(image.height(), side);
  const auto& src = image.pixels();
  const auto stride = 3 * static_cast<std::size_t>(image.width());

  ImageBuffer out(side, side);
  auto& dst = out.pixels();
  std::size_t o = 0;
  for (const Tap& ty : yt) {
    const std::size_t r0 = static_cast<std::size_t>(ty.lo) * stride;
    const std::size_t r1 = static_cast<std::size_t>(ty.hi) * stride;
    for (const Tap& tx : xt) {
      const std::size_t c0 = 3 * static_cast<std::size_t>(tx.lo);
      const std::size_t c1 = 3 * static_cast<std::size_t>(tx.hi);
      for (std::size_t ch = 0; ch < 3; ++ch) {
        const double top = src[r0 + c0 + ch] + tx.frac * (src[r0 + c1 + ch] - src[r0 + c0 + ch]);
        const double bottom = src[r1 + c0 + ch] + tx.frac * (src[r1 + c1 + ch] - src[r1 + c0 + ch]);
        const double v = top + ty.frac * (bottom - top);
        dst[o++] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
      }
    }
  }
  return out;
}

BinaryMask resize_mask(const BinaryMask& mask, int side) {
  if (side < 1) throw Error(ErrorCode::InvalidArgument, "canvas side must be >= 1");
  if (mask.width() == side && mask.height() == side) return mask;
  BinaryMask out(side, side);
  const double sx = static_cast<double>(mask.width()) / side;
  const double sy = static_cast<double>(mask.height()) / side;
  for (int y = 0; y < side; ++y) {
    const int src_y = std::min(mask.height() - 1, static_cast<int>(std::floor((y + 0.5) * sy)));
    for (int x = 0; x < side; ++x) {
      const int src_x = std::min(mask.width() - 1, static_cast<int>(std::floor((x + 0.5) * sx)));
      out.set(x, y, mask.at(src_x, src_y));
    }
  }
  return out;
}

Rect scale_rect(const Rect& rect, int width, int height, int side) {
  const auto map = [side](int v, int extent) {
    return static_cast<int>(std::floor(static_cast<double>(v) * side / extent + 0.5));
  };
  const int x0 = map(rect.x, width);
  const int y0 = map(rect.y, height);
  const int x1 = map(rect.x + rect.w, width);
  const int y1 = map(rect.y + rect.h, height);
  return Rect{x0, y0, x1 - x0, y1 - y0};
}

MaskRaster rasterize(int width, int height, const Rect& rect) {
  require_fits(rect, width, height);
  MaskRaster raster{width, height,
                    std::vector<std::uint8_t>(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0)};
  for (int y = rect.y; y < rect.y + rect.h; ++y) {
    auto row = raster.values.begin() + static_cast<std::ptrdiff_t>(y) * width;
    std::fill(row + rect.x, row + rect.x + rect.w, std::uint8_t{255});
  }
  return raster;
}

CutResult cut(const ImageBuffer& image, const Rect& rect) {
  require_fits(rect, image.width(), image.height());
  if (rect.area() == 0) throw Error(ErrorCode::DegenerateRegion, "cannot cut a zero-area rect");
  CutResult result{image, rasterize(image.width(), image.height(), rect)};
  for (int y = rect.y; y < rect.y + rect.h; ++y) {
    for (int x = rect.x; x < rect.x + rect.w; ++x) result.masked.set(x, y, kCutFill);
  }
  return result;
}

ImageBuffer paste_back(const ImageBuffer& source, const ImageBuffer& generated, const Rect& rect) {
  if (source.width() != generated.width() || source.height() != generated.height()) {
    throw Error(ErrorCode::DimensionMismatch, "generated image size differs from source");
  }
  require_fits(rect, source.width(), source.height());
  ImageBuffer out = source;
  for (int y = rect.y; y < rect.y + rect.h; ++y) {
    for (int x = rect.x; x < rect.x + rect.w; ++x) out.set(x, y, generated.at(x, y));
  }
  return out;
}

ImageBuffer crop(const ImageBuffer& image, const Rect& rect) {
  require_fits(rect, image.width(), image.height());
  if (rect.area() == 0) throw Error(ErrorCode::DegenerateRegion, "cannot crop a zero-area rect");
  ImageBuffer out(rect.w, rect.h);
  for (int y = 0; y < rect.h; ++y) {
    for (int x = 0; x < rect.w; ++x) out.set(x, y, image.at(rect.x + x, rect.y + y));
  }
  return out;
}

}  // namespace camdiff
