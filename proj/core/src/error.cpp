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

#include "camdiff/error.hpp"

namespace camdiff {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NoForeground: return "NoForeground";
    case ErrorCode::NoEligibleRegion: return "NoEligibleRegion";
    case ErrorCode::DegenerateRegion: return "DegenerateRegion";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnparsableFilename: return "UnparsableFilename";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::ProtocolError: return "ProtocolError";
    case ErrorCode::ScriptExhausted: return "ScriptExhausted";
    case ErrorCode::EmptyGroundTruth: return "EmptyGroundTruth";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InconsistentClassCount: return "InconsistentClassCount";
    case ErrorCode::RootMissing: return "RootMissing";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::MalformedManifest: return "MalformedManifest";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace camdiff
