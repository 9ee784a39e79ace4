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

#include "camdiff/orchestrator.hpp"

#include <string>

#include "camdiff/error.hpp"

namespace camdiff {

std::optional<std::string> cod10k_class(std::string_view filename) {
  const auto slash = filename.find_last_of("/\\");
  if (slash != std::string_view::npos) filename.remove_prefix(slash + 1);
  const auto dot = filename.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return std::nullopt;
  const std::string_view stem = filename.substr(0, dot);

  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto hyphen = stem.find('-', start);
    fields.push_back(stem.substr(start, hyphen - start));
    if (hyphen == std::string_view::npos) break;
    start = hyphen + 1;
  }
  if (fields.size() != 7 || fields[0] != "COD10K") return std::nullopt;
  for (const auto f : fields) {
    if (f.empty()) return std::nullopt;
  }
  return std::string(fields[5]);
}

std::string prompt_for(PromptMode mode, std::string_view filename, const std::vector<std::string>& labels,
                       SplitMix64 rng) {
  if (mode != PromptMode::Sampled) {
    if (auto label = cod10k_class(filename)) return *label;
    if (mode == PromptMode::Labeled) {
      throw Error(ErrorCode::UnparsableFilename, "no COD10K class token in '" + std::string(filename) + "'");
    }
  }
  if (labels.empty()) throw Error(ErrorCode::InvalidArgument, "label list is empty");
  return labels[static_cast<std::size_t>(rng.uniform(labels.size()))];
}

SynthesisCase prepare_case(const ImageBuffer& image, const BinaryMask& gt, const MaskGenConfig& mask_config,
                           SplitMix64 rng, std::string prompt, int side) {
  if (image.width() != gt.width() || image.height() != gt.height()) {
    throw Error(ErrorCode::DimensionMismatch, "ground truth size differs from image size");
  }
  SynthesisCase c;
  c.source = resize_canvas(image, side);
  c.gt = resize_mask(gt, side);
  const RegionGrid grid = partition(side, side, tight_bbox(c.gt));
  c.placement = select_mask(grid, mask_config, rng);
  c.prompt = std::move(prompt);
  return c;
}

void OrchestratorConfig::validate() const {
  if (max_attempts < 1) throw Error(ErrorCode::InvalidArgument, "max_attempts must be >= 1");
  if (!(accept_threshold >= 0.0 && accept_threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "accept_threshold must be in [0, 1]");
  }
}

std::string_view to_string(SynthesisStatus status) noexcept {
  switch (status) {
    case SynthesisStatus::Accepted: return "accepted";
    case SynthesisStatus::Rejected: return "rejected";
    case SynthesisStatus::Skipped: return "skipped";
  }
  return "unknown";
}

SynthesisResult synthesize_one(const SynthesisCase& synthesis_case, GeneratorBackend& generator,
                               DiscriminatorBackend& discriminator, const OrchestratorConfig& config) {
  config.validate();
  const Rect& rect = synthesis_case.placement.mask_rect;
  const CutResult cutout = cut(synthesis_case.source, rect);

  SynthesisResult result{synthesis_case.source, {}};
  SynthesisOutcome& outcome = result.outcome;
  outcome.prompt = synthesis_case.prompt;
  outcome.placement = synthesis_case.placement;
  outcome.status = SynthesisStatus::Rejected;

  for (int attempt = 1; attempt <= config.max_attempts; ++attempt) {
    const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(attempt - 1);
    outcome.attempts = attempt;
    outcome.final_seed = seed;
    try {
      const ImageBuffer generated =
          generator.inpaint(cutout.masked, cutout.raster, synthesis_case.prompt, seed, config.inpaint);
      if (generated.width() != synthesis_case.source.width() ||
          generated.height() != synthesis_case.source.height()) {
        throw Error(ErrorCode::ProtocolError, "generator changed the image size");
      }
      outcome.final_score = discriminator.score(crop(generated, rect), synthesis_case.prompt);
      if (outcome.final_score >= config.accept_threshold) {
        outcome.status = SynthesisStatus::Accepted;
        result.image = paste_back(synthesis_case.source, generated, rect);
        return result;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BackendUnavailable && e.code() != ErrorCode::ProtocolError) throw;
      outcome.status = SynthesisStatus::Skipped;
      outcome.skip_reason = e.code() == ErrorCode::BackendUnavailable ? kSkipBackend : kSkipProtocol;
      result.image = synthesis_case.source;
      return result;
    }
  }
  return result;
}

}  // namespace camdiff
