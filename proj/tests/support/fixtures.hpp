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
#include <filesystem>
#include <string>
#include <vector>

#include "camdiff/compositor.hpp"
#include "camdiff/geometry.hpp"
#include "camdiff/random.hpp"

namespace camdiff::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "camdiff");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& child) const { return path_ / child; }

 private:
  std::filesystem::path path_;
};

ImageBuffer random_image(int width, int height, SplitMix64& rng);
/// Rectangular blob plus a few stray pixels inside the given box.
BinaryMask random_mask(int width, int height, SplitMix64& rng);
BinaryMask rect_mask(int width, int height, const Rect& rect);

struct FixtureSpec {
  int count = 10;
  int width = 320;
  int height = 240;
  /// Indices whose ground truth covers the whole image.
  std::vector<int> full_foreground;
  std::uint64_t seed = 1;
  bool cod10k_names = false;
};

/// Writes `<root>/Imgs/*.png` and `<root>/GT/*.png` and returns the stems.
std::vector<std::string> write_dataset(const std::filesystem::path& root, const FixtureSpec& spec);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);

}  // namespace camdiff::testing
