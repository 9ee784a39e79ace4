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

#include "camdiff/image_io.hpp"

#include <openssl/evp.h>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "camdiff/error.hpp"

namespace camdiff {
namespace {

ImageBuffer from_bgr(const cv::Mat& bgr) {
  cv::Mat rgb;
  cv::cvtColor(bgr, rgb, cv::COLOR_BGR2RGB);
  if (!rgb.isContinuous()) rgb = rgb.clone();
  std::vector<std::uint8_t> pixels(rgb.data, rgb.data + rgb.total() * 3);
  return ImageBuffer(rgb.cols, rgb.rows, std::move(pixels));
}

cv::Mat to_bgr(const ImageBuffer& image) {
  cv::Mat rgb(image.height(), image.width(), CV_8UC3, const_cast<std::uint8_t*>(image.pixels().data()));
  cv::Mat bgr;
  cv::cvtColor(rgb, bgr, cv::COLOR_RGB2BGR);
  return bgr;
}

GrayImage from_gray(const cv::Mat& gray) {
  cv::Mat g = gray.isContinuous() ? gray : gray.clone();
  return GrayImage{g.cols, g.rows, std::vector<std::uint8_t>(g.data, g.data + g.total())};
}

cv::Mat read_or_throw(const std::filesystem::path& path, int flags) {
  cv::Mat m = cv::imread(path.string(), flags);
  if (m.empty()) throw Error(ErrorCode::IoError, "cannot read image " + path.string());
  return m;
}

void write_or_throw(const std::filesystem::path& path, const cv::Mat& m) {
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), m);
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string() + ": " + e.what());
  }
  if (!ok) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

std::vector<std::uint8_t> encode_or_throw(const cv::Mat& m) {
  std::vector<std::uint8_t> bytes;
  if (!cv::imencode(".png", m, bytes)) throw Error(ErrorCode::IoError, "PNG encoding failed");
  return bytes;
}

cv::Mat decode_or_throw(const std::vector<std::uint8_t>& bytes, int flags) {
  cv::Mat m;
  try {
    m = cv::imdecode(bytes, flags);
  } catch (const cv::Exception&) {
  }
  if (m.empty()) throw Error(ErrorCode::ProtocolError, "payload is not a decodable image");
  return m;
}

}  // namespace

ImageBuffer read_image(const std::filesystem::path& path) {
  return from_bgr(read_or_throw(path, cv::IMREAD_COLOR));
}

GrayImage read_gray(const std::filesystem::path& path) {
  return from_gray(read_or_throw(path, cv::IMREAD_GRAYSCALE));
}

BinaryMask read_mask(const std::filesystem::path& path) {
  GrayImage g = read_gray(path);
  for (auto& v : g.values) v = v >= 128 ? 1 : 0;
  return BinaryMask(g.width, g.height, std::move(g.values));
}

void write_png(const std::filesystem::path& path, const ImageBuffer& image) {
  write_or_throw(path, to_bgr(image));
}

void write_png(const std::filesystem::path& path, const BinaryMask& mask) {
  cv::Mat m(mask.height(), mask.width(), CV_8UC1);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) m.at<std::uint8_t>(y, x) = mask.at(x, y) ? 255 : 0;
  }
  write_or_throw(path, m);
}

void write_png(const std::filesystem::path& path, const MaskRaster& raster) {
  cv::Mat m(raster.height, raster.width, CV_8UC1, const_cast<std::uint8_t*>(raster.values.data()));
  write_or_throw(path, m);
}

std::vector<std::uint8_t> encode_png(const ImageBuffer& image) { return encode_or_throw(to_bgr(image)); }

std::vector<std::uint8_t> encode_png(const MaskRaster& raster) {
  cv::Mat m(raster.height, raster.width, CV_8UC1, const_cast<std::uint8_t*>(raster.values.data()));
  return encode_or_throw(m);
}

ImageBuffer decode_rgb(const std::vector<std::uint8_t>& bytes) {
  return from_bgr(decode_or_throw(bytes, cv::IMREAD_COLOR));
}

GrayImage decode_gray(const std::vector<std::uint8_t>& bytes) {
  return from_gray(decode_or_throw(bytes, cv::IMREAD_GRAYSCALE));
}

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw Error(ErrorCode::ProtocolError, "base64 length is not a multiple of 4");
  std::vector<std::uint8_t> out(3 * (text.size() / 4));
  const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) throw Error(ErrorCode::ProtocolError, "malformed base64 payload");
  // EVP_DecodeBlock keeps the zero bytes produced by '=' padding.
  std::size_t size = static_cast<std::size_t>(n);
  if (!text.empty() && text.back() == '=') --size;
  if (text.size() >= 2 && text[text.size() - 2] == '=') --size;
  out.resize(size);
  return out;
}

}  // namespace camdiff
