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

#include "cli/overlay.hpp"

#include <algorithm>

namespace camdiff::cli {
namespace {

constexpr Rgb kGrid{255, 220, 0};
constexpr Rgb kBox{230, 30, 30};
constexpr Rgb kRegion{0, 200, 230};
constexpr Rgb kMask{40, 220, 60};

void outline(ImageBuffer& img, const Rect& r, Rgb color) {
  if (r.area() == 0) return;
  for (int x = r.x; x < r.x + r.w; ++x) {
    img.set(x, r.y, color);
    img.set(x, r.y + r.h - 1, color);
  }
  for (int y = r.y; y < r.y + r.h; ++y) {
    img.set(r.x, y, color);
    img.set(r.x + r.w - 1, y, color);
  }
}

}  // namespace

ImageBuffer render_overlay(const ImageBuffer& canvas, const RegionGrid& grid, const MaskPlacement& placement) {
  ImageBuffer out = canvas;
  const Rect& m = placement.mask_rect;
  for (int y = m.y; y < m.y + m.h; ++y) {
    for (int x = m.x; x < m.x + m.w; ++x) {
      const Rgb p = out.at(x, y);
      out.set(x, y, {static_cast<std::uint8_t>((p.r + kMask.r) / 2), static_cast<std::uint8_t>((p.g + kMask.g) / 2),
                     static_cast<std::uint8_t>((p.b + kMask.b) / 2)});
    }
  }

  const Rect& center = grid.region(5);
  for (int x : {center.x, center.x + center.w - 1}) {
    for (int y = 0; y < out.height(); ++y) out.set(x, y, kGrid);
  }
  for (int y : {center.y, center.y + center.h - 1}) {
    for (int x = 0; x < out.width(); ++x) out.set(x, y, kGrid);
  }
  outline(out, placement.region_rect, kRegion);
  outline(out, center, kBox);
  outline(out, m, kMask);
  return out;
}

}  // namespace camdiff::cli
