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
#include <optional>

namespace camdiff::oracle {

struct OracleRect {
  long long x, y, w, h;
};

struct OracleMask {
  int region;  // 1..9
  OracleRect rect;
};

/// Straight-line transcription of the mask-generation procedure for the
/// default hyperparameters (1/16, 1/4, 3/4), written without the library:
/// its own grid arithmetic, SplitMix64, Fisher-Yates and integer rounding.
/// Returns nullopt when no candidate is eligible.
std::optional<OracleMask> select_mask_reference(long long width, long long height, long long x_min, long long y_min,
                                     long long x_max, long long y_max, std::uint64_t seed);

/// Nearest-integer search used by the centered-rect rule, by enumeration.
long long nearest_int_bruteforce(long double value, long long upper);

/// Centered rect by enumeration: one side floor/ceil of side * sqrt(t / area)
/// (found by scanning integers), the other side nearest to t / side.
OracleRect centered_rect_bruteforce(long long rx, long long ry, long long rw, long long rh, long long target);

}  // namespace camdiff::oracle
