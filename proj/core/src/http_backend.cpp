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

#include <httplib.h>

#include <json.hpp>
#include <thread>

#include "camdiff/backends.hpp"
#include "camdiff/error.hpp"
#include "camdiff/image_io.hpp"

namespace camdiff {
namespace {

using nlohmann::json;

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ProtocolError, std::string("response is not valid JSON: ") + e.what());
  }
}

std::string error_detail(const std::string& body) {
  try {
    const json j = json::parse(body);
    if (j.is_object() && j.contains("error") && j["error"].is_string()) return j["error"].get<std::string>();
  } catch (const json::exception&) {
  }
  return body.substr(0, 200);
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ProtocolError, std::string("response lacks field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::ProtocolError, std::string("response field '") + key + "' has the wrong type");
  }
}

std::unique_ptr<httplib::Client> make_client(const HttpBackendConfig& cfg) {
  auto client = std::make_unique<httplib::Client>(cfg.base_url);
  if (!client->is_valid()) throw Error(ErrorCode::InvalidArgument, "unsupported backend url " + cfg.base_url);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg.request_timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(cfg.request_timeout - secs);
  client->set_connection_timeout(secs.count(), usecs.count());
  client->set_read_timeout(secs.count(), usecs.count());
  client->set_write_timeout(secs.count(), usecs.count());
  client->set_keep_alive(false);
  return client;
}

template <typename Send>
std::string with_retries(const HttpBackendConfig& cfg, const std::string& what, Send&& send) {
  auto delay = cfg.backoff;
  std::string last_failure;
  for (int attempt = 0; attempt <= cfg.transport_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    httplib::Result res = send();
    if (!res) {
      last_failure = what + ": " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) return res->body;
    if (res->status >= 500) {
      last_failure = what + ": HTTP " + std::to_string(res->status) + " " + error_detail(res->body);
      continue;
    }
    throw Error(ErrorCode::ProtocolError, what + ": HTTP " + std::to_string(res->status) + " " +
                                              error_detail(res->body));
  }
  throw Error(ErrorCode::BackendUnavailable,
              last_failure + " (after " + std::to_string(cfg.transport_retries + 1) + " tries)");
}

}  // namespace

void HttpBackendConfig::validate() const {
  if (request_timeout.count() <= 0) throw Error(ErrorCode::InvalidArgument, "request_timeout must be > 0");
  if (transport_retries < 0) throw Error(ErrorCode::InvalidArgument, "transport_retries must be >= 0");
  if (backoff.count() < 0) throw Error(ErrorCode::InvalidArgument, "backoff must be >= 0");
  if (base_url.empty()) throw Error(ErrorCode::InvalidArgument, "base_url is empty");
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  config_.validate();
  while (config_.base_url.size() > 1 && config_.base_url.back() == '/') config_.base_url.pop_back();
}

std::string HttpBackend::post(const std::string& path, const std::string& body) {
  return with_retries(config_, "POST " + path, [&] {
    return make_client(config_)->Post(path, body, "application/json");
  });
}

std::string HttpBackend::get(const std::string& path) {
  return with_retries(config_, "GET " + path, [&] { return make_client(config_)->Get(path); });
}

ImageBuffer HttpBackend::inpaint(const ImageBuffer& masked, const MaskRaster& raster, const std::string& prompt,
                                 std::uint64_t seed, const InpaintOptions& options) {
  if (masked.width() != raster.width || masked.height() != raster.height) {
    throw Error(ErrorCode::DimensionMismatch, "mask raster size differs from image");
  }
  json request = {
      {"image", base64_encode(encode_png(masked))},
      {"mask", base64_encode(encode_png(raster))},
      {"prompt", prompt},
      {"seed", seed},
  };
  if (options.steps) request["steps"] = *options.steps;
  if (options.guidance) request["guidance"] = *options.guidance;

  const json response = parse_body(post("/v1/inpaint", request.dump()));
  ImageBuffer image = decode_rgb(base64_decode(field<std::string>(response, "image")));
  if (image.width() != masked.width() || image.height() != masked.height()) {
    throw Error(ErrorCode::ProtocolError,
                "inpaint returned " + std::to_string(image.width()) + "x" + std::to_string(image.height()) +
                    ", expected " + std::to_string(masked.width()) + "x" + std::to_string(masked.height()));
  }
  return image;
}

double HttpBackend::score(const ImageBuffer& image, const std::string& prompt) {
  const json request = {{"image", base64_encode(encode_png(image))}, {"prompt", prompt}};
  const json response = parse_body(post("/v1/score", request.dump()));
  const double s = field<double>(response, "score");
  if (!(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::ProtocolError, "score " + std::to_string(s) + " outside [0, 1]");
  }
  return s;
}

HealthInfo HttpBackend::health() {
  const json response = parse_body(get("/v1/health"));
  HealthInfo info{field<std::string>(response, "status"), field<std::string>(response, "generator"),
                  field<std::string>(response, "discriminator")};
  if (info.status != "ok") throw Error(ErrorCode::BackendUnavailable, "service reports status " + info.status);
  return info;
}

}  // namespace camdiff
