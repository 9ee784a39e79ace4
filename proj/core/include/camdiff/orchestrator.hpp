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
#include <string>
#include <string_view>
#include <vector>

#include "camdiff/backends.hpp"
#include "camdiff/compositor.hpp"
#include "camdiff/geometry.hpp"
#include "camdiff/random.hpp"

namespace camdiff {

/// How a prompt is chosen for an image.
///   Labeled: class token from a COD10K-style filename (error if absent).
///   Sampled: uniform draw from the label list.
///   Automatic: Labeled when the filename parses, Sampled otherwise.
enum class PromptMode { Labeled, Sampled, Automatic };

/// Class token of `COD10K-CAM-{super}-{superName}-{sub}-{ClassName}-{id}.{ext}`
/// (the sixth hyphen-separated field), if the name follows that grammar.
std::optional<std::string> cod10k_class(std::string_view filename);

/// Throws Error(UnparsableFilename) in Labeled mode for names outside the
/// grammar and Error(InvalidArgument) when sampling from an empty list.
std::string prompt_for(PromptMode mode, std::string_view filename, const std::vector<std::string>& labels,
                       SplitMix64 rng);

struct SynthesisCase {
  ImageBuffer source;
  BinaryMask gt;
  MaskPlacement placement;
  std::string prompt;
};

/// Resizes image and label onto the side x side canvas and places the mask.
/// Throws NoForeground / NoEligibleRegion / DegenerateRegion from geometry.
SynthesisCase prepare_case(const ImageBuffer& image, const BinaryMask& gt, const MaskGenConfig& mask_config,
                           SplitMix64 rng, std::string prompt, int side = kCanvasSide);

struct OrchestratorConfig {
  double accept_threshold = 0.5;
  int max_attempts = 8;
  /// Attempt k (1-based) runs with seed base_seed + (k - 1).
  std::uint64_t base_seed = 0;
  InpaintOptions inpaint;

  void validate() const;
};

enum class SynthesisStatus { Accepted, Rejected, Skipped };

std::string_view to_string(SynthesisStatus status) noexcept;

struct SynthesisOutcome {
  SynthesisStatus status = SynthesisStatus::Skipped;
  std::string skip_reason;  // set only for Skipped
  int attempts = 0;
  std::uint64_t final_seed = 0;
  double final_score = 0.0;
  std::string prompt;
  MaskPlacement placement;

  friend bool operator==(const SynthesisOutcome&, const SynthesisOutcome&) = default;
};

struct SynthesisResult {
  ImageBuffer image;
  SynthesisOutcome outcome;
};

inline constexpr std::string_view kSkipBackend = "backend";
inline constexpr std::string_view kSkipProtocol = "protocol";

/// Generate -> score -> retry. The discriminator sees only the crop of the
/// filled mask rect. The first attempt scoring >= accept_threshold is pasted
/// back onto the source; if none does, the source is returned untouched with
/// status Rejected. Backend transport/protocol failures end the loop with
/// status Skipped("backend" / "protocol") and the untouched source.
SynthesisResult synthesize_one(const SynthesisCase& synthesis_case, GeneratorBackend& generator,
                               DiscriminatorBackend& discriminator, const OrchestratorConfig& config);

}  // namespace camdiff
