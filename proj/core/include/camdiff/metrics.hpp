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

#include "camdiff/geometry.hpp"

namespace camdiff {

struct GrayImage;

/// Prediction map with values in [0, 1], row-major.
struct GrayMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int x, int y) const noexcept {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
  }

  /// value / 255 for every pixel.
  static GrayMap from_gray(const GrayImage& image);
  /// 1.0 on foreground, 0.0 elsewhere.
  static GrayMap from_mask(const BinaryMask& mask);
};

inline constexpr int kThresholdCount = 256;
inline constexpr double kBeta2 = 0.3;
inline constexpr double kStructureAlpha = 0.5;

/// Index of the largest threshold k / 255 that `value` reaches (value >= k / 255),
/// or -1 below the lowest threshold.
int threshold_bin(double value) noexcept;

double mae(const GrayMap& pred, const BinaryMask& gt);

/// Maximum F-beta over the 256 thresholds k / 255 (binarised at >= t).
/// Throws Error(EmptyGroundTruth) when gt has no foreground.
double f_measure_max(const GrayMap& pred, const BinaryMask& gt, double beta2 = kBeta2);

/// Structure measure: alpha * object term + (1 - alpha) * region term, with
/// the usual all-background (1 - mean) and all-foreground (mean) conventions.
double s_measure(const GrayMap& pred, const BinaryMask& gt, double alpha = kStructureAlpha);

/// Maximum enhanced-alignment score over the 256 thresholds.
double e_measure_max(const GrayMap& pred, const BinaryMask& gt);

/// exp(E_x KL(p(y|x) || p(y))) per split, averaged over splits. Trailing
/// vectors that do not fill a split are dropped.
double inception_score(const std::vector<std::vector<double>>& probs, int splits = 1);

/// Per-image scores; f_max is absent for empty ground truths.
struct ImageMetrics {
  double mae = 0;
  double f_max = 0;
  bool has_f_max = false;
  double s_measure = 0;
  double e_max = 0;
};

ImageMetrics score_image(const GrayMap& pred, const BinaryMask& gt);

struct MetricReport {
  double mae = 0;
  double f_max = 0;
  double s_measure = 0;
  double e_max = 0;
  std::int64_t count = 0;
  /// Images left out of the F-measure mean because their GT is empty.
  std::int64_t empty_gt = 0;
};

/// Order-preserving, compensated mean of per-image scores. Throws
/// Error(EmptyInput) for an empty batch.
MetricReport reduce(const std::vector<ImageMetrics>& images);

struct EvaluationResult {
  MetricReport report;
  std::vector<std::string> unpaired_predictions;
  /// "name: reason" for pairs that could not be scored.
  std::vector<std::string> failures;
};

/// Pairs <pred_dir>/<stem>.* with <gt_dir>/<stem>.png and scores every pair
/// with `workers` threads. Throws Error(EmptyInput) if nothing was scored.
EvaluationResult evaluate_directories(const std::filesystem::path& pred_dir, const std::filesystem::path& gt_dir,
                                      int workers);

/// One whitespace- or comma-separated probability vector per line.
std::vector<std::vector<double>> read_probabilities(const std::filesystem::path& path);

}  // namespace camdiff
