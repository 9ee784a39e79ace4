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

#include <gtest/gtest.h>

#include "camdiff/error.hpp"
#include "support/fixtures.hpp"

namespace camdiff {
namespace {

bool grey_band(std::uint8_t v) { return v > 64 && v < 192; }

TEST(MockFillColor, DeterministicAndAwayFromCutGrey) {
  EXPECT_EQ(mock_fill_color("a crab", 3), mock_fill_color("a crab", 3));
  EXPECT_NE(mock_fill_color("a crab", 3), mock_fill_color("a crab", 4));
  for (std::uint64_t s = 0; s < 500; ++s) {
    const Rgb c = mock_fill_color("a photo of a Frog", s);
    EXPECT_FALSE(grey_band(c.r) || grey_band(c.g) || grey_band(c.b)) << s;
  }
}

TEST(MockGenerator, PaintsInscribedEllipseInsideRaster) {
  SplitMix64 rng(4);
  const ImageBuffer img = testing::random_image(64, 48, rng);
  const Rect r{10, 8, 30, 20};
  const CutResult c = cut(img, r);
  MockGenerator gen;
  const ImageBuffer out = gen.inpaint(c.masked, c.raster, "p", 9, {});
  const Rgb fill = mock_fill_color("p", 9);
  int painted = 0;
  for (int y = 0; y < 48; ++y)
    for (int x = 0; x < 64; ++x) {
      if (!r.contains(x, y)) {
        ASSERT_EQ(out.at(x, y), c.masked.at(x, y));
      } else if (out.at(x, y) == fill) {
        ++painted;
      } else {
        ASSERT_EQ(out.at(x, y), kCutFill);
      }
    }
  // Ellipse covers about pi/4 of its box.
  EXPECT_NEAR(painted / static_cast<double>(r.area()), 0.785, 0.05);
  EXPECT_EQ(out.at(25, 18), fill);
  EXPECT_EQ(out.at(10, 8), kCutFill);
}

TEST(MockGenerator, PassthroughAndMismatch) {
  const ImageBuffer img(16, 16, Rgb{1, 2, 3});
  MockGenerator pass(MockGenerator::Mode::Passthrough);
  EXPECT_EQ(pass.inpaint(img, rasterize(16, 16, {0, 0, 4, 4}), "p", 0, {}), img);
  MockGenerator gen;
  EXPECT_THROW(gen.inpaint(img, rasterize(8, 16, {0, 0, 4, 4}), "p", 0, {}), Error);
}

TEST(MockDiscriminator, ScriptedReturnsInOrderThenExhausts) {
  auto d = MockDiscriminator::scripted({0.1, 0.9});
  const ImageBuffer img(2, 2);
  EXPECT_DOUBLE_EQ(d.score(img, ""), 0.1);
  EXPECT_DOUBLE_EQ(d.score(img, ""), 0.9);
  try {
    d.score(img, "");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ScriptExhausted);
  }
  EXPECT_EQ(d.calls(), 2u);
}

TEST(MockDiscriminator, ConstantCountsCalls) {
  auto d = MockDiscriminator::constant(0.4);
  const ImageBuffer img(2, 2);
  for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(d.score(img, "x"), 0.4);
  EXPECT_EQ(d.calls(), 5u);
}

}  // namespace
}  // namespace camdiff
