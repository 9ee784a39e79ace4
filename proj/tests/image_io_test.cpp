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

#include "camdiff/image_io.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "camdiff/error.hpp"
#include "support/fixtures.hpp"

namespace camdiff {
namespace {

using testing::TempDir;

std::vector<std::uint8_t> bytes_of(std::string_view s) { return {s.begin(), s.end()}; }

TEST(Base64, KnownVectors) {
  EXPECT_EQ(base64_encode(bytes_of("")), "");
  EXPECT_EQ(base64_encode(bytes_of("f")), "Zg==");
  EXPECT_EQ(base64_encode(bytes_of("fo")), "Zm8=");
  EXPECT_EQ(base64_encode(bytes_of("foo")), "Zm9v");
  EXPECT_EQ(base64_encode(bytes_of("foobar")), "Zm9vYmFy");
  EXPECT_EQ(base64_decode("Zm9vYg=="), bytes_of("foob"));
  EXPECT_EQ(base64_decode("Zm9vYmE="), bytes_of("fooba"));
}

TEST(Base64, RoundTripsRandomBytes) {
  SplitMix64 rng(8);
  for (int n = 0; n < 70; ++n) {
    std::vector<std::uint8_t> data(static_cast<std::size_t>(n));
    for (auto& b : data) b = static_cast<std::uint8_t>(rng.next());
    EXPECT_EQ(base64_decode(base64_encode(data)), data);
  }
}

TEST(Base64, RejectsGarbage) { EXPECT_THROW(base64_decode("a*b"), Error); }

TEST(Png, RgbRoundTripThroughFile) {
  TempDir dir;
  SplitMix64 rng(1);
  const ImageBuffer img = testing::random_image(17, 9, rng);
  write_png(dir / "x.png", img);
  EXPECT_EQ(read_image(dir / "x.png"), img);
  EXPECT_EQ(decode_rgb(encode_png(img)), img);
}

TEST(Png, MaskIsBinarisedAtHalf) {
  TempDir dir;
  BinaryMask m(5, 4);
  m.set(1, 1, true);
  m.set(4, 3, true);
  write_png(dir / "m.png", m);
  EXPECT_EQ(read_mask(dir / "m.png"), m);
  const GrayImage g = read_gray(dir / "m.png");
  EXPECT_EQ(g.values[1 * 5 + 1], 255);
  EXPECT_EQ(g.values[0], 0);
}

TEST(Png, RasterRoundTrip) {
  const MaskRaster r = rasterize(12, 8, {2, 2, 3, 3});
  const GrayImage g = decode_gray(encode_png(r));
  EXPECT_EQ(g.width, 12);
  EXPECT_EQ(g.values, r.values);
}

TEST(ImageIo, MissingFileIsIoError) {
  try {
    read_image("/nonexistent/definitely/not/here.png");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

TEST(ImageIo, CorruptBytesAreRejected) {
  TempDir dir;
  std::ofstream(dir / "bad.png") << "not a png";
  EXPECT_THROW(read_image(dir / "bad.png"), Error);
  EXPECT_THROW(decode_rgb(bytes_of("nope")), Error);
}

}  // namespace
}  // namespace camdiff
