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

#include <array>
#include <cstdint>
#include <vector>

#include "camdiff/random.hpp"

namespace camdiff {

/// Ground-truth camouflage label. Row-major, one byte per pixel, nonzero = foreground.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool fill = false);
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return bits_.empty(); }

  bool at(int x, int y) const noexcept { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool value) noexcept { bits_[index(x, y)] = value ? 1 : 0; }

  std::int64_t foreground_count() const noexcept;
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Inclusive pixel coordinates.
struct BoundingBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Half-open pixel rectangle; zero extent is allowed.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  std::int64_t area() const noexcept { return std::int64_t{w} * h; }
  bool contains(int px, int py) const noexcept { return px >= x && px < x + w && py >= y && py < y + h; }
  bool contains(const Rect& other) const noexcept {
    return other.x >= x && other.y >= y && other.x + other.w <= x + w && other.y + other.h <= y + h;
  }
  bool intersects(const Rect& other) const noexcept {
    return area() > 0 && other.area() > 0 && x < other.x + other.w && other.x < x + w &&
           y < other.y + other.h && other.y < y + h;
  }
  bool fits(int width, int height) const noexcept {
    return x >= 0 && y >= 0 && w >= 0 && h >= 0 && x + w <= width && y + h <= height;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

Rect to_rect(const BoundingBox& box) noexcept;

/// Nine-cell partition induced by a bounding box. Cells are numbered 1..9 in
/// row-major order; cell 5 is the bounding box itself.
struct RegionGrid {
  int image_width = 0;
  int image_height = 0;
  std::array<Rect, 9> regions{};

  const Rect& region(int index) const { return regions.at(static_cast<std::size_t>(index - 1)); }
  std::int64_t total_area() const noexcept { return std::int64_t{image_width} * image_height; }
};

/// Mask-generation hyperparameters; fractions are of the total image area.
struct MaskGenConfig {
  double ratio_min = 0.0625;
  double ratio_max = 0.25;
  double ratio_mask = 0.75;
  std::uint64_t rng_seed = 0;

  /// Throws Error(InvalidArgument) naming the violated bound.
  void validate() const;
};

struct MaskPlacement {
  int region_index = 0;
  Rect region_rect;
  Rect mask_rect;
  std::int64_t region_area = 0;
  std::int64_t mask_area = 0;

  friend bool operator==(const MaskPlacement&, const MaskPlacement&) = default;
};

/// Candidate cells in the order they are listed before shuffling.
inline constexpr std::array<int, 8> kCandidateRegions = {1, 2, 3, 4, 6, 7, 8, 9};

/// Minimal axis-aligned box around every foreground pixel.
/// Throws Error(NoForeground) for an empty label.
BoundingBox tight_bbox(const BinaryMask& gt);

/// Extends the four box edges across the image. Column spans are
/// [0, x_min), [x_min, x_max + 1), [x_max + 1, width); rows likewise.
RegionGrid partition(int width, int height, const BoundingBox& bbox);

/// Rect centered in `region` (offsets floor((side - new_side) / 2)) covering
/// about `target_area` pixels at roughly the region's aspect ratio. One side
/// is floor or ceil of side * sqrt(target / area) and the other is sized to
/// the target; of those candidates the closest area wins. Throws
/// Error(DegenerateRegion) when the target is outside (0, area].
Rect centered_rect(const Rect& region, std::int64_t target_area);

/// Eligibility floor and cap in pixels: llround(ratio * total_area).
std::int64_t min_region_area(const MaskGenConfig& config, std::int64_t total_area) noexcept;
std::int64_t max_region_area(const MaskGenConfig& config, std::int64_t total_area) noexcept;

/// ratio_mask * min(region_area, cap), rounded to whole pixels.
std::int64_t target_mask_area(const MaskGenConfig& config, std::int64_t region_area, std::int64_t total_area) noexcept;

/// Shuffles the eight candidate cells with `rng`, then picks the first whose
/// area strictly exceeds the floor and carves the centered mask out of it.
/// Throws Error(NoEligibleRegion) when every candidate is too small.
MaskPlacement select_mask(const RegionGrid& grid, const MaskGenConfig& config, SplitMix64 rng);

/// Same as above with a stream seeded from config.rng_seed.
MaskPlacement select_mask(const RegionGrid& grid, const MaskGenConfig& config);

}  // namespace camdiff
