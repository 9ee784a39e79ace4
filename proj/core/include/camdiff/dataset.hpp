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
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "camdiff/backends.hpp"
#include "camdiff/geometry.hpp"
#include "camdiff/orchestrator.hpp"

namespace camdiff {

/// `<root>/Imgs/*.{jpg,png}` paired with `<root>/GT/<stem>.png`.
struct DatasetLayout {
  std::filesystem::path root;
  std::string image_dir = "Imgs";
  std::string gt_dir = "GT";

  std::filesystem::path images() const { return root / image_dir; }
  std::filesystem::path ground_truth() const { return root / gt_dir; }
};

struct ImagePair {
  std::filesystem::path image;
  std::filesystem::path gt;
};

struct UnpairedImage {
  std::filesystem::path image;
  std::string reason;
};

struct ScanResult {
  std::vector<ImagePair> pairs;  // ordered by image filename
  std::vector<UnpairedImage> unpaired;
};

/// Throws Error(RootMissing) or Error(EmptyDataset) when no pair is found.
ScanResult scan(const DatasetLayout& layout);

struct ManifestRecord {
  std::string source_path;  // relative to the dataset root
  SynthesisStatus status = SynthesisStatus::Skipped;
  std::string skip_reason;
  int region_index = 0;  // 0 when no placement was made
  std::optional<Rect> mask_rect;
  std::string prompt;
  std::uint64_t base_seed = 0;
  int attempts = 0;
  double final_score = 0.0;
  std::string output_path;  // relative to the output root; empty if nothing was written

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

/// One JSON object, no trailing newline.
std::string to_json_line(const ManifestRecord& record);
/// Throws Error(MalformedManifest) on bad input.
ManifestRecord parse_json_line(const std::string& line);

struct RunStats {
  std::int64_t total = 0;
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
  std::map<std::string, std::int64_t> skipped;  // by reason
  std::map<int, std::int64_t> attempts_histogram;

  void add(const ManifestRecord& record);
  std::int64_t skipped_total() const;
  double acceptance_rate() const noexcept {
    return total > 0 ? static_cast<double>(accepted) / static_cast<double>(total) : 0.0;
  }
  /// Records skipped because a backend failed (transport or protocol).
  std::int64_t backend_failures() const;
};

/// Recomputes stats from a manifest file. Throws Error(MalformedManifest)
/// naming the first bad line, Error(EmptyDataset) for an empty manifest.
RunStats stats(const std::filesystem::path& manifest);

/// One class name per line; blank lines and '#' comments ignored.
std::vector<std::string> load_labels(const std::filesystem::path& path);
/// Same format from a stream; `source` names it in error messages.
std::vector<std::string> parse_labels(std::istream& in, const std::string& source);

struct PipelineConfig {
  MaskGenConfig mask;
  OrchestratorConfig orchestrator;
  PromptMode prompt_mode = PromptMode::Automatic;
  std::vector<std::string> labels;
  std::uint64_t seed = 0;
  int workers = 1;
  int canvas_side = kCanvasSide;
  std::filesystem::path output_root;
  /// Defaults to <output_root>/manifest.jsonl.
  std::filesystem::path manifest_path;
};

struct PipelineResult {
  RunStats stats;
  ScanResult scan;
  std::filesystem::path manifest_path;
};

/// Seeds for one item: the mask placement stream, the prompt stream and the
/// 32-bit base seed handed to the generator.
struct ItemSeeds {
  SplitMix64 mask_rng;
  SplitMix64 prompt_rng;
  std::uint64_t base_seed;
};
ItemSeeds derive_item_seeds(std::uint64_t global_seed, const std::string& filename);

/// Synthesises every scanned pair and writes `<out>/Imgs/<stem>.png`,
/// `<out>/GT/<stem>.png` and the manifest (records in scan order). Per-image
/// failures become Skipped records; only an unusable root or output aborts.
PipelineResult run_pipeline(const DatasetLayout& layout, GeneratorBackend& generator,
                            DiscriminatorBackend& discriminator, const PipelineConfig& config);

}  // namespace camdiff
