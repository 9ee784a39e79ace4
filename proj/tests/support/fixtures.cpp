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

#include "support/fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iterator>
#include <unistd.h>

#include "camdiff/image_io.hpp"

namespace camdiff::testing {
namespace fs = std::filesystem;

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter.fetch_add(1)));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

ImageBuffer random_image(int width, int height, SplitMix64& rng) {
  ImageBuffer img(width, height);
  for (auto& v : img.pixels()) v = static_cast<std::uint8_t>(rng.next() & 0xFF);
  return img;
}

BinaryMask rect_mask(int width, int height, const Rect& rect) {
  BinaryMask mask(width, height);
  for (int y = rect.y; y < rect.y + rect.h; ++y) {
    for (int x = rect.x; x < rect.x + rect.w; ++x) mask.set(x, y, true);
  }
  return mask;
}

BinaryMask random_mask(int width, int height, SplitMix64& rng) {
  const int w = 1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(std::max(1, width / 2))));
  const int h = 1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(std::max(1, height / 2))));
  const int x = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(width - w + 1)));
  const int y = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(height - h + 1)));
  BinaryMask mask = rect_mask(width, height, Rect{x, y, w, h});
  for (int i = 0; i < 3; ++i) {
    mask.set(x + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(w))),
             y + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(h))), true);
  }
  return mask;
}

std::vector<std::string> write_dataset(const fs::path& root, const FixtureSpec& spec) {
  fs::create_directories(root / "Imgs");
  fs::create_directories(root / "GT");
  SplitMix64 rng(spec.seed);
  std::vector<std::string> stems;
  for (int i = 0; i < spec.count; ++i) {
    const std::string stem = spec.cod10k_names ? "COD10K-CAM-1-Aquatic-1-BatFish-" + std::to_string(i)
                                               : "img" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    const ImageBuffer image = random_image(spec.width, spec.height, rng);
    const bool full = std::find(spec.full_foreground.begin(), spec.full_foreground.end(), i) !=
                      spec.full_foreground.end();
    const BinaryMask gt = full ? BinaryMask(spec.width, spec.height, true)
                               : rect_mask(spec.width, spec.height,
                                           Rect{spec.width / 3, spec.height / 3, spec.width / 4, spec.height / 4});
    write_png(root / "Imgs" / (stem + ".png"), image);
    write_png(root / "GT" / (stem + ".png"), gt);
    stems.push_back(stem);
  }
  return stems;
}

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace camdiff::testing
