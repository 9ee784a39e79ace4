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

#include "camdiff/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "camdiff/error.hpp"

namespace camdiff {

BinaryMask::BinaryMask(int width, int height, bool fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument, "mask dimensions must be positive");
  }
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill ? 1 : 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument, "mask dimensions must be positive");
  }
  if (bits_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::DimensionMismatch, "mask bit count does not match width x height");
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::int64_t BinaryMask::foreground_count() const noexcept {
  return std::count(bits_.begin(), bits_.end(), std::uint8_t{1});
}

Rect to_rect(const BoundingBox& box) noexcept {
  return Rect{box.x_min, box.y_min, box.x_max - box.x_min + 1, box.y_max - box.y_min + 1};
}

void MaskGenConfig::validate() const {
  if (!(ratio_min > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "ratio_min must be > 0 (got " + std::to_string(ratio_min) + ")");
  }
  if (!(ratio_min < ratio_max)) {
    throw Error(ErrorCode::InvalidArgument, "ratio_min must be < ratio_max");
  }
  if (!(ratio_max <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "ratio_max must be <= 1 (got " + std::to_string(ratio_max) + ")");
  }
  if (!(ratio_mask > 0.0 && ratio_mask <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "ratio_mask must be in (0, 1] (got " + std::to_string(ratio_mask) + ")");
  }
}

BoundingBox tight_bbox(const BinaryMask& gt) {
  BoundingBox box{gt.width(), gt.height(), -1, -1};
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      if (!gt.at(x, y)) continue;
      box.x_min = std::min(box.x_min, x);
      box.y_min = std::min(box.y_min, y);
      box.x_max = std::max(box.x_max, x);
      box.y_max = std::max(box.y_max, y);
    }
  }
  if (box.x_max < 0) {
    throw Error(ErrorCode::NoForeground, "ground truth has no foreground pixels");
  }
  return box;
}

RegionGrid partition(int width, int height, const BoundingBox& bbox) {
  if (width < 1 || height < 1 || bbox.x_min < 0 || bbox.y_min < 0 || bbox.x_min > bbox.x_max ||
      bbox.y_min > bbox.y_max || bbox.x_max >= width || bbox.y_max >= height) {
    throw Error(ErrorCode::InvalidArgument, "bounding box does not fit the image");
  }
  const std::array<int, 4> xs = {0, bbox.x_min, bbox.x_max + 1, width};
  const std::array<int, 4> ys = {0, bbox.y_min, bbox.y_max + 1, height};

  RegionGrid grid;
  grid.image_width = width;
  grid.image_height = height;
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      grid.regions[static_cast<std::size_t>(row * 3 + col)] =
          Rect{xs[col], ys[row], xs[col + 1] - xs[col], ys[row + 1] - ys[row]};
    }
  }
  return grid;
}

Rect centered_rect(const Rect& region, std::int64_t target_area) {
  const std::int64_t area = region.area();
  if (area <= 0 || target_area <= 0 || target_area > area) {
    throw Error(ErrorCode::DegenerateRegion,
                "target area " + std::to_string(target_area) + " not achievable in region of area " +
                    std::to_string(area));
  }
  const double scale = std::sqrt(static_cast<double>(target_area) / static_cast<double>(area));
  const double t = static_cast<double>(target_area);

  // Candidates: each side floored or ceiled from w * s (h * s), the other side
  // sized to hit the target. Closest area wins, then least aspect distortion.
  struct Size {
    int w, h;
  };
  std::vector<Size> candidates;
  for (double side : {std::floor(region.w * scale), std::ceil(region.w * scale)}) {
    const int w = static_cast<int>(side);
    if (w < 1 || w > region.w) continue;
    candidates.push_back({w, std::clamp(static_cast<int>(std::lround(t / w)), 1, region.h)});
  }
  for (double side : {std::floor(region.h * scale), std::ceil(region.h * scale)}) {
    const int h = static_cast<int>(side);
    if (h < 1 || h > region.h) continue;
    candidates.push_back({std::clamp(static_cast<int>(std::lround(t / h)), 1, region.w), h});
  }
  if (candidates.empty()) throw Error(ErrorCode::DegenerateRegion, "centered rect collapses to zero extent");

  const auto key = [&](const Size& c) {
    return std::make_tuple(std::llabs(std::int64_t{c.w} * c.h - target_area),
                           std::llabs(std::int64_t{c.w} * region.h - std::int64_t{c.h} * region.w), c.w);
  };
  const Size best =
      *std::min_element(candidates.begin(), candidates.end(), [&](const Size& a, const Size& b) { return key(a) < key(b); });
  return Rect{region.x + (region.w - best.w) / 2, region.y + (region.h - best.h) / 2, best.w, best.h};
}

std::int64_t min_region_area(const MaskGenConfig& config, std::int64_t total_area) noexcept {
  return std::llround(config.ratio_min * static_cast<double>(total_area));
}

std::int64_t max_region_area(const MaskGenConfig& config, std::int64_t total_area) noexcept {
  return std::llround(config.ratio_max * static_cast<double>(total_area));
}

std::int64_t target_mask_area(const MaskGenConfig& config, std::int64_t region_area,
                              std::int64_t total_area) noexcept {
  const std::int64_t capped = std::min(region_area, max_region_area(config, total_area));
  return std::llround(config.ratio_mask * static_cast<double>(capped));
}

MaskPlacement select_mask(const RegionGrid& grid, const MaskGenConfig& config, SplitMix64 rng) {
  config.validate();
  auto order = kCandidateRegions;
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform(i + 1));
    std::swap(order[i], order[j]);
  }

  const std::int64_t total = grid.total_area();
  const std::int64_t floor_area = min_region_area(config, total);
  for (int index : order) {
    const Rect& region = grid.region(index);
    if (region.area() <= floor_area) continue;

    MaskPlacement placement;
    placement.region_index = index;
    placement.region_rect = region;
    placement.region_area = region.area();
    placement.mask_rect = centered_rect(region, target_mask_area(config, region.area(), total));
    placement.mask_area = placement.mask_rect.area();
    return placement;
  }
  throw Error(ErrorCode::NoEligibleRegion, "no candidate region exceeds " + std::to_string(floor_area) +
                                               " of " + std::to_string(total) + " pixels");
}

MaskPlacement select_mask(const RegionGrid& grid, const MaskGenConfig& config) {
  return select_mask(grid, config, SplitMix64(config.rng_seed));
}

}  // namespace camdiff
