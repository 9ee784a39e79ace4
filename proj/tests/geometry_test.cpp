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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "camdiff/error.hpp"
#include "oracles/mask_selection_oracle.hpp"
#include "support/fixtures.hpp"

namespace camdiff {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected camdiff::Error";
  return ErrorCode::IoError;
}

RegionGrid single_region_grid(int side, int index, Rect region) {
  RegionGrid grid;
  grid.image_width = side;
  grid.image_height = side;
  for (auto& r : grid.regions) r = Rect{0, 0, 0, 0};
  grid.regions[static_cast<std::size_t>(index - 1)] = region;
  return grid;
}

// ---------------------------------------------------------------- tight_bbox

TEST(TightBbox, SinglePixel) {
  BinaryMask gt(64, 64);
  gt.set(10, 20, true);
  EXPECT_EQ(tight_bbox(gt), (BoundingBox{10, 20, 10, 20}));
}

TEST(TightBbox, FullCover) {
  EXPECT_EQ(tight_bbox(BinaryMask(64, 64, true)), (BoundingBox{0, 0, 63, 63}));
}

TEST(TightBbox, TwoPixels) {
  BinaryMask gt(64, 64);
  gt.set(3, 5, true);
  gt.set(40, 17, true);
  EXPECT_EQ(tight_bbox(gt), (BoundingBox{3, 5, 40, 17}));
}

TEST(TightBbox, EmptyMaskIsNoForeground) {
  EXPECT_EQ(code_of([] { tight_bbox(BinaryMask(8, 8)); }), ErrorCode::NoForeground);
}

TEST(TightBbox, MatchesBruteForceOnRandomMasks) {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int w = 1 + static_cast<int>(rng.uniform(60));
    const int h = 1 + static_cast<int>(rng.uniform(60));
    BinaryMask gt(w, h);
    const int bits = 1 + static_cast<int>(rng.uniform(20));
    for (int i = 0; i < bits; ++i) {
      gt.set(static_cast<int>(rng.uniform(static_cast<std::uint64_t>(w))),
             static_cast<int>(rng.uniform(static_cast<std::uint64_t>(h))), true);
    }
    int x0 = w, y0 = h, x1 = -1, y1 = -1;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        if (gt.at(x, y)) {
          x0 = std::min(x0, x), y0 = std::min(y0, y), x1 = std::max(x1, x), y1 = std::max(y1, y);
        }
    ASSERT_EQ(tight_bbox(gt), (BoundingBox{x0, y0, x1, y1}));
    EXPECT_EQ(gt.foreground_count(), std::count(gt.bits().begin(), gt.bits().end(), 1));
  }
}

// ----------------------------------------------------------------- partition

TEST(Partition, CenteredBox) {
  const RegionGrid grid = partition(512, 512, {128, 128, 255, 255});
  EXPECT_EQ(grid.region(1), (Rect{0, 0, 128, 128}));
  EXPECT_EQ(grid.region(1).area(), 16384);
  EXPECT_EQ(grid.region(5), (Rect{128, 128, 128, 128}));
  EXPECT_EQ(grid.region(9), (Rect{256, 256, 256, 256}));
}

TEST(Partition, FullImageBoxLeavesNoBackground) {
  const RegionGrid grid = partition(40, 30, {0, 0, 39, 29});
  for (int i : kCandidateRegions) EXPECT_EQ(grid.region(i).area(), 0) << "region " << i;
}

TEST(Partition, CornerBox) {
  const RegionGrid grid = partition(100, 100, {0, 0, 49, 49});
  EXPECT_EQ(grid.region(1).area(), 0);
  EXPECT_EQ(grid.region(2).area(), 0);
  EXPECT_EQ(grid.region(4).area(), 0);
  EXPECT_EQ(grid.region(9), (Rect{50, 50, 50, 50}));
}

TEST(Partition, RejectsBoxOutsideImage) {
  EXPECT_EQ(code_of([] { partition(10, 10, {0, 0, 10, 5}); }), ErrorCode::InvalidArgument);
}

TEST(Partition, TilesImageForRandomBoxes) {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int w = 1 + static_cast<int>(rng.uniform(80));
    const int h = 1 + static_cast<int>(rng.uniform(80));
    int xa = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(w)));
    int xb = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(w)));
    int ya = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(h)));
    int yb = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(h)));
    const BoundingBox box{std::min(xa, xb), std::min(ya, yb), std::max(xa, xb), std::max(ya, yb)};
    const RegionGrid grid = partition(w, h, box);

    std::int64_t sum = 0;
    std::vector<int> cover(static_cast<std::size_t>(w * h), 0);
    for (int i = 1; i <= 9; ++i) {
      const Rect& r = grid.region(i);
      ASSERT_TRUE(r.fits(w, h));
      sum += r.area();
      for (int y = r.y; y < r.y + r.h; ++y)
        for (int x = r.x; x < r.x + r.w; ++x) ++cover[static_cast<std::size_t>(y * w + x)];
    }
    EXPECT_EQ(sum, std::int64_t{w} * h);
    EXPECT_TRUE(std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; }));
    EXPECT_EQ(grid.region(5), to_rect(box));
  }
}

// ------------------------------------------------------------- centered_rect

TEST(CenteredRect, HundredSquareAtThreeQuarters) {
  const Rect r = centered_rect({0, 0, 100, 100}, 7500);
  EXPECT_EQ(r, (Rect{7, 6, 86, 87}));
  EXPECT_NEAR(static_cast<double>(r.area()) / 7500.0, 1.0, 0.01);
}

TEST(CenteredRect, FullTargetIsIdentity) {
  const Rect region{13, 4, 57, 31};
  EXPECT_EQ(centered_rect(region, region.area()), region);
}

TEST(CenteredRect, MinimumSize) { EXPECT_EQ(centered_rect({0, 0, 2, 2}, 1), (Rect{0, 0, 1, 1})); }

TEST(CenteredRect, DegenerateInputs) {
  EXPECT_EQ(code_of([] { centered_rect({0, 0, 0, 10}, 1); }), ErrorCode::DegenerateRegion);
  EXPECT_EQ(code_of([] { centered_rect({0, 0, 10, 10}, 0); }), ErrorCode::DegenerateRegion);
  EXPECT_EQ(code_of([] { centered_rect({0, 0, 10, 10}, 101); }), ErrorCode::DegenerateRegion);
}

TEST(CenteredRect, AgreesWithEnumerationOracle) {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 400; ++trial) {
    const Rect region{static_cast<int>(rng.uniform(50)), static_cast<int>(rng.uniform(50)),
                      1 + static_cast<int>(rng.uniform(300)), 1 + static_cast<int>(rng.uniform(300))};
    const std::int64_t target = 1 + static_cast<std::int64_t>(rng.uniform(static_cast<std::uint64_t>(region.area())));
    const Rect got = centered_rect(region, target);
    const auto want = oracle::centered_rect_bruteforce(region.x, region.y, region.w, region.h, target);
    ASSERT_EQ(got, (Rect{static_cast<int>(want.x), static_cast<int>(want.y), static_cast<int>(want.w),
                         static_cast<int>(want.h)}))
        << "region " << region.w << "x" << region.h << " target " << target;
    ASSERT_TRUE(region.contains(got));
    // Centered to within a pixel on each axis.
    EXPECT_LE(std::abs((2 * got.x + got.w) - (2 * region.x + region.w)), 2);
    EXPECT_LE(std::abs((2 * got.y + got.h) - (2 * region.y + region.h)), 2);
  }
}

// --------------------------------------------------------------- select_mask

TEST(SelectMask, RegionAtExactlyMinRatioIsIneligible) {
  const RegionGrid grid = single_region_grid(512, 3, {384, 0, 128, 128});
  ASSERT_EQ(grid.region(3).area(), 16384);
  EXPECT_EQ(code_of([&] { select_mask(grid, MaskGenConfig{}); }), ErrorCode::NoEligibleRegion);
}

TEST(SelectMask, UncappedRegionGetsThreeQuarters) {
  const RegionGrid grid = single_region_grid(512, 7, {0, 312, 256, 200});
  const MaskPlacement p = select_mask(grid, MaskGenConfig{});
  EXPECT_EQ(p.region_index, 7);
  EXPECT_EQ(target_mask_area(MaskGenConfig{}, 51200, grid.total_area()), 38400);
  EXPECT_NEAR(static_cast<double>(p.mask_area) / 38400.0, 1.0, 0.02);
  const auto want = oracle::centered_rect_bruteforce(0, 312, 256, 200, 38400);
  EXPECT_EQ(p.mask_rect, (Rect{static_cast<int>(want.x), static_cast<int>(want.y), static_cast<int>(want.w),
                               static_cast<int>(want.h)}));
}

TEST(SelectMask, LargeRegionIsCapped) {
  const RegionGrid grid = single_region_grid(512, 9, {294, 31, 218, 481});
  ASSERT_EQ(grid.region(9).area(), 104858);
  EXPECT_EQ(target_mask_area(MaskGenConfig{}, 104858, grid.total_area()), 49152);
  const MaskPlacement p = select_mask(grid, MaskGenConfig{});
  EXPECT_NEAR(static_cast<double>(p.mask_area) / 49152.0, 1.0, 0.02);
}

TEST(SelectMask, CapIsContinuousAtTheBoundary) {
  const MaskGenConfig cfg;
  const std::int64_t total = 512 * 512;
  const std::int64_t cap = max_region_area(cfg, total);
  EXPECT_EQ(target_mask_area(cfg, cap, total), std::llround(0.75 * 0.25 * total));
  EXPECT_EQ(target_mask_area(cfg, cap + 1, total), target_mask_area(cfg, cap, total));
  EXPECT_LE(target_mask_area(cfg, cap, total) - target_mask_area(cfg, cap - 1, total), 1);
}

TEST(SelectMask, RejectsInvalidConfig) {
  const RegionGrid grid = partition(64, 64, {10, 10, 20, 20});
  MaskGenConfig bad;
  bad.ratio_min = 0.3;
  EXPECT_EQ(code_of([&] { select_mask(grid, bad); }), ErrorCode::InvalidArgument);
  bad = MaskGenConfig{};
  bad.ratio_mask = 0.0;
  EXPECT_EQ(code_of([&] { select_mask(grid, bad); }), ErrorCode::InvalidArgument);
}

TEST(SelectMask, DeterministicSeparatedAndMatchesOracle) {
  SplitMix64 rng(31337);
  int placed = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int w = 16 + static_cast<int>(rng.uniform(300));
    const int h = 16 + static_cast<int>(rng.uniform(300));
    const int bw = 1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(w)));
    const int bh = 1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(h)));
    const int bx = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(w - bw + 1)));
    const int by = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(h - bh + 1)));
    const BoundingBox box{bx, by, bx + bw - 1, by + bh - 1};
    MaskGenConfig cfg;
    cfg.rng_seed = rng.next();
    const RegionGrid grid = partition(w, h, box);
    const auto want = oracle::select_mask_reference(w, h, box.x_min, box.y_min, box.x_max, box.y_max, cfg.rng_seed);
    if (!want) {
      EXPECT_EQ(code_of([&] { select_mask(grid, cfg); }), ErrorCode::NoEligibleRegion);
      continue;
    }
    ++placed;
    const MaskPlacement p = select_mask(grid, cfg);
    EXPECT_EQ(p, select_mask(grid, cfg));
    EXPECT_EQ(p.region_index, want->region);
    EXPECT_EQ(p.mask_rect, (Rect{static_cast<int>(want->rect.x), static_cast<int>(want->rect.y),
                                 static_cast<int>(want->rect.w), static_cast<int>(want->rect.h)}));
    EXPECT_NE(p.region_index, 5);
    EXPECT_TRUE(p.region_rect.contains(p.mask_rect));
    EXPECT_FALSE(p.mask_rect.intersects(grid.region(5)));
    EXPECT_GT(p.region_area, min_region_area(cfg, grid.total_area()));
  }
  EXPECT_GT(placed, 100);
}

TEST(SelectMask, ShuffleVisitsEveryCandidateFirst) {
  // All eight regions equal and eligible: the first shuffled index wins.
  const RegionGrid grid = partition(300, 300, {100, 100, 199, 199});
  std::set<int> firsts;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    MaskGenConfig cfg;
    cfg.rng_seed = seed;
    firsts.insert(select_mask(grid, cfg).region_index);
  }
  EXPECT_EQ(firsts, (std::set<int>{1, 2, 3, 4, 6, 7, 8, 9}));
}

}  // namespace
}  // namespace camdiff
