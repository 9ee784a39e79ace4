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
#include <string_view>
#include <vector>

#include "camdiff/compositor.hpp"
#include "camdiff/geometry.hpp"

namespace camdiff {

/// 8-bit single-channel image as decoded from disk.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;
};

// Decoding accepts anything the codec layer reads (PNG, JPEG). All readers
// throw Error(IoError) on unreadable files.
ImageBuffer read_image(const std::filesystem::path& path);
GrayImage read_gray(const std::filesystem::path& path);

/// Grayscale read binarised at >= 128.
BinaryMask read_mask(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const ImageBuffer& image);
void write_png(const std::filesystem::path& path, const BinaryMask& mask);
void write_png(const std::filesystem::path& path, const MaskRaster& raster);

std::vector<std::uint8_t> encode_png(const ImageBuffer& image);
std::vector<std::uint8_t> encode_png(const MaskRaster& raster);
ImageBuffer decode_rgb(const std::vector<std::uint8_t>& bytes);
GrayImage decode_gray(const std::vector<std::uint8_t>& bytes);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
/// Throws Error(ProtocolError) on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace camdiff
