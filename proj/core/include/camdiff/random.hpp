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
#include <string_view>

namespace camdiff {

/// SplitMix64 stream. Platform independent: every draw is defined purely in
/// terms of 64-bit unsigned arithmetic, so seeded runs replay bit-exactly.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t uniform(std::uint64_t bound) noexcept;

  /// Independent child stream; advances this stream by one draw.
  SplitMix64 split() noexcept { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

/// 64-bit FNV-1a over the bytes of `text`.
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Avalanche mix of two words (SplitMix64 finalizer over a ^ rotated b).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;

/// Seed for one dataset item: global run seed mixed with a stable hash of its
/// name, so results do not depend on which worker handles the item.
inline std::uint64_t item_seed(std::uint64_t global_seed, std::string_view item_name) noexcept {
  return mix_seed(global_seed, fnv1a64(item_name));
}

}  // namespace camdiff
