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

#include "camdiff/metrics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "camdiff/error.hpp"
#include "camdiff/image_io.hpp"
#include "camdiff/parallel.hpp"

namespace camdiff {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_same_size(const GrayMap& pred, const BinaryMask& gt) {
  if (pred.width != gt.width() || pred.height != gt.height() ||
      pred.values.size() != static_cast<std::size_t>(gt.width()) * static_cast<std::size_t>(gt.height())) {
    throw Error(ErrorCode::DimensionMismatch, "prediction " + std::to_string(pred.width) + "x" +
                                                  std::to_string(pred.height) + " vs ground truth " +
                                                  std::to_string(gt.width()) + "x" + std::to_string(gt.height()));
  }
}

class KahanSum {
 public:
  void add(double v) noexcept {
    const double y = v - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const noexcept { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Pixel counts per threshold bin, split by ground-truth label.
struct BinHistogram {
  std::array<std::int64_t, kThresholdCount> fg{};
  std::array<std::int64_t, kThresholdCount> bg{};
  std::int64_t fg_total = 0;
  std::int64_t total = 0;
};

BinHistogram histogram(const GrayMap& pred, const BinaryMask& gt) {
  BinHistogram h;
  const auto& bits = gt.bits();
  h.total = static_cast<std::int64_t>(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const int bin = threshold_bin(pred.values[i]);
    if (bits[i]) ++h.fg_total;
    if (bin < 0) continue;
    (bits[i] ? h.fg : h.bg)[static_cast<std::size_t>(bin)]++;
  }
  return h;
}

// Confusion counts at threshold k, derived from suffix sums of the histogram.
template <typename Visit>
void for_each_threshold(const BinHistogram& h, Visit&& visit) {
  std::int64_t tp = 0, fp = 0;
  for (int k = kThresholdCount - 1; k >= 0; --k) {
    tp += h.fg[static_cast<std::size_t>(k)];
    fp += h.bg[static_cast<std::size_t>(k)];
    visit(tp, fp);
  }
}

// Moments of one quadrant, accumulated in a single pass.
struct Moments {
  double n = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;

  void add(double x, double y) noexcept {
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }

  double ssim() const noexcept {
    if (n == 0) return 0.0;
    const double mx = sx / n;
    const double my = sy / n;
    const double denom = n - 1 + kEps;
    const double vx = std::max(0.0, sxx - n * mx * mx) / denom;
    const double vy = std::max(0.0, syy - n * my * my) / denom;
    const double cxy = (sxy - n * mx * my) / denom;
    const double alpha = 4 * mx * my * cxy;
    const double beta = (mx * mx + my * my) * (vx + vy);
    if (alpha != 0) return alpha / (beta + kEps);
    return beta == 0 ? 1.0 : 0.0;
  }
};

double object_score(double sum, double sum_sq, double n) {
  if (n == 0) return 0.0;
  const double mean = sum / n;
  const double sigma = n > 1 ? std::sqrt(std::max(0.0, sum_sq - n * mean * mean) / (n - 1)) : 0.0;
  return 2.0 * mean / (mean * mean + 1.0 + sigma + kEps);
}

double s_object(const GrayMap& pred, const BinaryMask& gt, double gt_mean) {
  double fg_s = 0, fg_ss = 0, fg_n = 0, bg_s = 0, bg_ss = 0, bg_n = 0;
  const auto& bits = gt.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const double p = pred.values[i];
    if (bits[i]) {
      fg_s += p;
      fg_ss += p * p;
      fg_n += 1;
    } else {
      const double q = 1.0 - p;
      bg_s += q;
      bg_ss += q * q;
      bg_n += 1;
    }
  }
  return gt_mean * object_score(fg_s, fg_ss, fg_n) + (1 - gt_mean) * object_score(bg_s, bg_ss, bg_n);
}

double s_region(const GrayMap& pred, const BinaryMask& gt) {
  const int w = gt.width();
  const int h = gt.height();
  double total = 0, wx = 0, wy = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!gt.at(x, y)) continue;
      total += 1;
      wx += x + 1;
      wy += y + 1;
    }
  }
  // 1-based centroid; columns [0, cx) and rows [0, cy) form the top-left quadrant.
  const int cx = static_cast<int>(std::round(wx / total));
  const int cy = static_cast<int>(std::round(wy / total));

  std::array<Moments, 4> quads;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t q = (y < cy ? 0 : 2) + (x < cx ? 0 : 1);
      quads[q].add(pred.at(x, y), gt.at(x, y) ? 1.0 : 0.0);
    }
  }
  const double area = static_cast<double>(w) * h;
  const double w1 = cx * cy / area;
  const double w2 = (w - cx) * cy / area;
  const double w3 = cx * (h - cy) / area;
  const double w4 = (w - cx) * static_cast<double>(h - cy) / area;
  return w1 * quads[0].ssim() + w2 * quads[1].ssim() + w3 * quads[2].ssim() + w4 * quads[3].ssim();
}

double enhanced_alignment(std::int64_t tp, std::int64_t fp, std::int64_t fg_total, std::int64_t total) {
  const double n = static_cast<double>(total);
  const std::int64_t fn = fg_total - tp;
  const std::int64_t tn = total - fg_total - fp;
  if (fg_total == 0) return static_cast<double>(tn) / n;
  if (fg_total == total) return static_cast<double>(tp) / n;

  const double mu_fm = static_cast<double>(tp + fp) / n;
  const double mu_gt = static_cast<double>(fg_total) / n;
  const auto term = [&](double fm, double g) {
    const double af = fm - mu_fm;
    const double ag = g - mu_gt;
    const double align = 2.0 * ag * af / (ag * ag + af * af + kEps);
    return (align + 1.0) * (align + 1.0) / 4.0;
  };
  const double sum = static_cast<double>(tp) * term(1, 1) + static_cast<double>(fp) * term(1, 0) +
                     static_cast<double>(fn) * term(0, 1) + static_cast<double>(tn) * term(0, 0);
  return sum / n;
}

}  // namespace

GrayMap GrayMap::from_gray(const GrayImage& image) {
  GrayMap map{image.width, image.height, std::vector<double>(image.values.size())};
  std::transform(image.values.begin(), image.values.end(), map.values.begin(),
                 [](std::uint8_t v) { return v / 255.0; });
  return map;
}

GrayMap GrayMap::from_mask(const BinaryMask& mask) {
  GrayMap map{mask.width(), mask.height(), std::vector<double>(mask.bits().size())};
  std::transform(mask.bits().begin(), mask.bits().end(), map.values.begin(),
                 [](std::uint8_t v) { return v ? 1.0 : 0.0; });
  return map;
}

int threshold_bin(double value) noexcept {
  if (!(value >= 0.0)) return -1;
  int k = static_cast<int>(std::min(255.0, std::floor(value * 255.0)));
  while (k < kThresholdCount - 1 && static_cast<double>(k + 1) / 255.0 <= value) ++k;
  while (k >= 0 && static_cast<double>(k) / 255.0 > value) --k;
  return k;
}

double mae(const GrayMap& pred, const BinaryMask& gt) {
  require_same_size(pred, gt);
  KahanSum sum;
  const auto& bits = gt.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) sum.add(std::abs(pred.values[i] - (bits[i] ? 1.0 : 0.0)));
  return std::clamp(sum.value() / static_cast<double>(bits.size()), 0.0, 1.0);
}

double f_measure_max(const GrayMap& pred, const BinaryMask& gt, double beta2) {
  require_same_size(pred, gt);
  const BinHistogram h = histogram(pred, gt);
  if (h.fg_total == 0) throw Error(ErrorCode::EmptyGroundTruth, "F-measure needs a nonempty ground truth");

  double best = 0.0;
  for_each_threshold(h, [&](std::int64_t tp, std::int64_t fp) {
    const double precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    const double recall = static_cast<double>(tp) / static_cast<double>(h.fg_total);
    const double denom = beta2 * precision + recall;
    const double f = denom > 0 ? (1 + beta2) * precision * recall / denom : 0.0;
    best = std::max(best, f);
  });
  return std::clamp(best, 0.0, 1.0);
}

double s_measure(const GrayMap& pred, const BinaryMask& gt, double alpha) {
  require_same_size(pred, gt);
  const double n = static_cast<double>(gt.bits().size());
  const double gt_mean = static_cast<double>(gt.foreground_count()) / n;
  double q;
  if (gt_mean == 0.0 || gt_mean == 1.0) {
    KahanSum sum;
    for (double v : pred.values) sum.add(v);
    const double pred_mean = sum.value() / n;
    q = gt_mean == 0.0 ? 1.0 - pred_mean : pred_mean;
  } else {
    q = alpha * s_object(pred, gt, gt_mean) + (1 - alpha) * s_region(pred, gt);
  }
  return std::clamp(q, 0.0, 1.0);
}

double e_measure_max(const GrayMap& pred, const BinaryMask& gt) {
  require_same_size(pred, gt);
  const BinHistogram h = histogram(pred, gt);
  double best = 0.0;
  for_each_threshold(h, [&](std::int64_t tp, std::int64_t fp) {
    best = std::max(best, enhanced_alignment(tp, fp, h.fg_total, h.total));
  });
  return std::clamp(best, 0.0, 1.0);
}

double inception_score(const std::vector<std::vector<double>>& probs, int splits) {
  if (probs.empty()) throw Error(ErrorCode::EmptyInput, "no probability vectors");
  if (splits < 1 || static_cast<std::size_t>(splits) > probs.size()) {
    throw Error(ErrorCode::InvalidArgument, "splits must be in [1, " + std::to_string(probs.size()) + "]");
  }
  const std::size_t classes = probs.front().size();
  if (classes == 0) throw Error(ErrorCode::EmptyInput, "probability vectors are empty");
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i].size() != classes) {
      throw Error(ErrorCode::InconsistentClassCount, "vector " + std::to_string(i) + " has " +
                                                         std::to_string(probs[i].size()) + " classes, expected " +
                                                         std::to_string(classes));
    }
    double total = 0;
    for (double p : probs[i]) {
      if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "probability outside [0, 1]");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
      throw Error(ErrorCode::InvalidArgument, "vector " + std::to_string(i) + " does not sum to 1");
    }
  }

  const std::size_t per_split = probs.size() / static_cast<std::size_t>(splits);
  double score_sum = 0.0;
  for (int s = 0; s < splits; ++s) {
    const auto first = probs.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(s) * per_split);
    const auto last = first + static_cast<std::ptrdiff_t>(per_split);

    std::vector<double> marginal(classes, 0.0);
    for (auto it = first; it != last; ++it) {
      for (std::size_t c = 0; c < classes; ++c) marginal[c] += (*it)[c];
    }
    for (double& m : marginal) m /= static_cast<double>(per_split);

    double kl_sum = 0.0;
    for (auto it = first; it != last; ++it) {
      for (std::size_t c = 0; c < classes; ++c) {
        const double p = (*it)[c];
        if (p > 0.0) kl_sum += p * std::log(p / marginal[c]);
      }
    }
    score_sum += std::exp(kl_sum / static_cast<double>(per_split));
  }
  return score_sum / splits;
}

ImageMetrics score_image(const GrayMap& pred, const BinaryMask& gt) {
  ImageMetrics m;
  m.mae = mae(pred, gt);
  if (gt.foreground_count() > 0) {
    m.f_max = f_measure_max(pred, gt);
    m.has_f_max = true;
  }
  m.s_measure = s_measure(pred, gt);
  m.e_max = e_measure_max(pred, gt);
  return m;
}

MetricReport reduce(const std::vector<ImageMetrics>& images) {
  if (images.empty()) throw Error(ErrorCode::EmptyInput, "no images scored");
  KahanSum mae_sum, f_sum, s_sum, e_sum;
  MetricReport report;
  for (const auto& m : images) {
    mae_sum.add(m.mae);
    s_sum.add(m.s_measure);
    e_sum.add(m.e_max);
    if (m.has_f_max) {
      f_sum.add(m.f_max);
    } else {
      ++report.empty_gt;
    }
  }
  report.count = static_cast<std::int64_t>(images.size());
  const double n = static_cast<double>(report.count);
  report.mae = mae_sum.value() / n;
  report.s_measure = s_sum.value() / n;
  report.e_max = e_sum.value() / n;
  const auto f_count = report.count - report.empty_gt;
  report.f_max = f_count > 0 ? f_sum.value() / static_cast<double>(f_count) : 0.0;
  return report;
}

EvaluationResult evaluate_directories(const std::filesystem::path& pred_dir, const std::filesystem::path& gt_dir,
                                      int workers) {
  namespace fs = std::filesystem;
  for (const auto& dir : {pred_dir, gt_dir}) {
    if (!fs::is_directory(dir)) throw Error(ErrorCode::RootMissing, "not a directory: " + dir.string());
  }

  std::map<std::string, fs::path> predictions;
  for (const auto& entry : fs::directory_iterator(pred_dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp") {
      predictions.emplace(entry.path().stem().string(), entry.path());
    }
  }

  EvaluationResult result;
  std::vector<std::pair<fs::path, fs::path>> pairs;
  std::vector<std::string> names;
  for (const auto& [stem, pred_path] : predictions) {
    const fs::path gt_path = gt_dir / (stem + ".png");
    if (fs::is_regular_file(gt_path)) {
      pairs.emplace_back(pred_path, gt_path);
      names.push_back(stem);
    } else {
      result.unpaired_predictions.push_back(pred_path.filename().string());
    }
  }

  std::vector<ImageMetrics> scores(pairs.size());
  std::vector<std::string> errors(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t i) {
    try {
      const GrayMap pred = GrayMap::from_gray(read_gray(pairs[i].first));
      scores[i] = score_image(pred, read_mask(pairs[i].second));
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });

  std::vector<ImageMetrics> scored;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (errors[i].empty()) {
      scored.push_back(scores[i]);
    } else {
      result.failures.push_back(names[i] + ": " + errors[i]);
    }
  }
  if (scored.empty()) throw Error(ErrorCode::EmptyInput, "no prediction/ground-truth pairs could be scored");
  result.report = reduce(scored);
  return result;
}

std::vector<std::vector<double>> read_probabilities(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument,
                    path.string() + ":" + std::to_string(line_no) + ": not a number '" + token + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace camdiff
