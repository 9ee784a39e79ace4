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

#include <benchmark/benchmark.h>

#include "camdiff/geometry.hpp"

namespace {

using namespace camdiff;

void BM_TightBbox(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  BinaryMask gt(side, side);
  for (int y = side / 3; y < side / 2; ++y)
    for (int x = side / 4; x < side / 2; ++x) gt.set(x, y, true);
  for (auto _ : state) benchmark::DoNotOptimize(tight_bbox(gt));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_TightBbox)->Arg(512)->Arg(1024);

void BM_SelectMask(benchmark::State& state) {
  const RegionGrid grid = partition(512, 512, {150, 170, 300, 320});
  MaskGenConfig cfg;
  for (auto _ : state) {
    ++cfg.rng_seed;
    benchmark::DoNotOptimize(select_mask(grid, cfg));
  }
}
BENCHMARK(BM_SelectMask);

void BM_CenteredRect(benchmark::State& state) {
  const Rect region{0, 0, 480, 217};
  std::int64_t target = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(centered_rect(region, target));
    target = (target + 997) % region.area() + 1;
  }
}
BENCHMARK(BM_CenteredRect);

}  // namespace
