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

#include "camdiff/backends.hpp"

#include "camdiff/error.hpp"
#include "camdiff/random.hpp"

namespace camdiff {
namespace {

// Maps a byte onto [0, 64] u [192, 255].
std::uint8_t far_from_grey(std::uint64_t byte) noexcept {
  const auto v = static_cast<unsigned>(byte % 129);
  return static_cast<std::uint8_t>(v <= 64 ? v : v + 127);
}

}  // namespace

ImageBuffer::Rgb mock_fill_color(std::string_view prompt, std::uint64_t seed) noexcept {
  const std::uint64_t h = mix_seed(fnv1a64(prompt), seed);
  return {far_from_grey(h & 0xFF), far_from_grey((h >> 8) & 0xFF), far_from_grey((h >> 16) & 0xFF)};
}

ImageBuffer MockGenerator::inpaint(const ImageBuffer& masked, const MaskRaster& raster, const std::string& prompt,
                                   std::uint64_t seed, const InpaintOptions&) {
  if (masked.width() != raster.width || masked.height() != raster.height) {
    throw Error(ErrorCode::DimensionMismatch, "mask raster size differs from image");
  }
  ImageBuffer out = masked;
  if (mode_ == Mode::Passthrough) return out;

  const Rect bounds = raster.fill_bounds();
  if (bounds.area() == 0) return out;

  const auto color = mock_fill_color(prompt, seed);
  const double cx = bounds.x + bounds.w / 2.0;
  const double cy = bounds.y + bounds.h / 2.0;
  const double rx = bounds.w / 2.0;
  const double ry = bounds.h / 2.0;
  for (int y = bounds.y; y < bounds.y + bounds.h; ++y) {
    const double dy = (y + 0.5 - cy) / ry;
    for (int x = bounds.x; x < bounds.x + bounds.w; ++x) {
      const double dx = (x + 0.5 - cx) / rx;
      if (dx * dx + dy * dy <= 1.0 && raster.fill_at(x, y)) out.set(x, y, color);
    }
  }
  return out;
}

MockDiscriminator::MockDiscriminator(bool scripted, std::vector<double> values)
    : scripted_(scripted), values_(std::move(values)) {}

MockDiscriminator::MockDiscriminator(const MockDiscriminator& other)
    : scripted_(other.scripted_), values_(other.values_) {
  std::lock_guard lock(other.mutex_);
  cursor_ = other.cursor_;
}

MockDiscriminator MockDiscriminator::constant(double value) { return MockDiscriminator(false, {value}); }

MockDiscriminator MockDiscriminator::scripted(std::vector<double> scores) {
  return MockDiscriminator(true, std::move(scores));
}

double MockDiscriminator::score(const ImageBuffer&, const std::string&) {
  std::lock_guard lock(mutex_);
  if (!scripted_) {
    ++cursor_;
    return values_.front();
  }
  if (cursor_ >= values_.size()) {
    throw Error(ErrorCode::ScriptExhausted, "scripted discriminator ran out after " + std::to_string(cursor_) +
                                                " calls");
  }
  return values_[cursor_++];
}

std::size_t MockDiscriminator::calls() const {
  std::lock_guard lock(mutex_);
  return cursor_;
}

}  // namespace camdiff
