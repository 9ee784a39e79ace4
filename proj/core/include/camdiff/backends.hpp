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

#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "camdiff/compositor.hpp"

namespace camdiff {

struct InpaintOptions {
  std::optional<int> steps;
  std::optional<double> guidance;
};

/// Text-conditioned inpainting model. Implementations must accept concurrent
/// calls and return an image with the input's dimensions.
class GeneratorBackend {
 public:
  virtual ~GeneratorBackend() = default;
  virtual ImageBuffer inpaint(const ImageBuffer& masked, const MaskRaster& raster, const std::string& prompt,
                              std::uint64_t seed, const InpaintOptions& options) = 0;
};

/// Image/prompt agreement in [0, 1].
class DiscriminatorBackend {
 public:
  virtual ~DiscriminatorBackend() = default;
  virtual double score(const ImageBuffer& image, const std::string& prompt) = 0;
};

// ---------------------------------------------------------------------------
// In-process mocks

/// Colour the flat-ellipse mock paints for (prompt, seed). Every channel is at
/// least 64 levels away from mid-grey.
ImageBuffer::Rgb mock_fill_color(std::string_view prompt, std::uint64_t seed) noexcept;

class MockGenerator final : public GeneratorBackend {
 public:
  enum class Mode { FlatEllipse, Passthrough };

  explicit MockGenerator(Mode mode = Mode::FlatEllipse) : mode_(mode) {}

  ImageBuffer inpaint(const ImageBuffer& masked, const MaskRaster& raster, const std::string& prompt,
                      std::uint64_t seed, const InpaintOptions& options) override;

 private:
  Mode mode_;
};

/// Scripted scores are consumed one per call under a mutex; Constant always
/// returns the same value.
class MockDiscriminator final : public DiscriminatorBackend {
 public:
  static MockDiscriminator constant(double value);
  static MockDiscriminator scripted(std::vector<double> scores);

  MockDiscriminator(const MockDiscriminator& other);

  /// Throws Error(ScriptExhausted) once a script runs out.
  double score(const ImageBuffer& image, const std::string& prompt) override;

  std::size_t calls() const;

 private:
  MockDiscriminator(bool scripted, std::vector<double> values);

  bool scripted_;
  std::vector<double> values_;
  mutable std::mutex mutex_;
  std::size_t cursor_ = 0;
};

// ---------------------------------------------------------------------------
// HTTP clients for the model service

struct HttpBackendConfig {
  std::string base_url = "http://127.0.0.1:8000";
  std::chrono::milliseconds request_timeout{120'000};
  int transport_retries = 2;
  std::chrono::milliseconds backoff{500};

  void validate() const;
};

struct HealthInfo {
  std::string status;
  std::string generator;
  std::string discriminator;
};

/// Speaks the `/v1/inpaint`, `/v1/score` and `/v1/health` JSON protocol.
/// Transport failures and 5xx responses are retried up to transport_retries
/// times with doubling backoff, reusing the same seed; once exhausted they
/// surface as Error(BackendUnavailable). 4xx and malformed payloads raise
/// Error(ProtocolError) immediately.
class HttpBackend final : public GeneratorBackend, public DiscriminatorBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  ImageBuffer inpaint(const ImageBuffer& masked, const MaskRaster& raster, const std::string& prompt,
                      std::uint64_t seed, const InpaintOptions& options) override;
  double score(const ImageBuffer& image, const std::string& prompt) override;
  HealthInfo health();

  const HttpBackendConfig& config() const noexcept { return config_; }

 private:
  std::string post(const std::string& path, const std::string& body);
  std::string get(const std::string& path);

  HttpBackendConfig config_;
};

}  // namespace camdiff
