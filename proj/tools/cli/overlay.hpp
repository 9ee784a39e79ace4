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

#include "camdiff/compositor.hpp"
#include "camdiff/geometry.hpp"

namespace camdiff::cli {

/// Debug view of a placement: grid lines in yellow, the label's bounding box
/// in red, the selected region in cyan and the mask rect in green (tinted).
ImageBuffer render_overlay(const ImageBuffer& canvas, const RegionGrid& grid, const MaskPlacement& placement);

}  // namespace camdiff::cli
