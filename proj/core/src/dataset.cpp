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

#include "camdiff/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <set>

#include "camdiff/compositor.hpp"
#include "camdiff/error.hpp"
#include "camdiff/image_io.hpp"
#include "camdiff/parallel.hpp"

namespace camdiff {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_image_ext(const fs::path& p) {
  const std::string ext = lower(p.extension().string());
  return ext == ".jpg" || ext == ".jpeg" || ext == ".png";
}

SynthesisStatus parse_status(const std::string& s) {
  if (s == "accepted") return SynthesisStatus::Accepted;
  if (s == "rejected") return SynthesisStatus::Rejected;
  if (s == "skipped") return SynthesisStatus::Skipped;
  throw Error(ErrorCode::MalformedManifest, "unknown status '" + s + "'");
}

// Commits lines in index order so the manifest is independent of scheduling.
class OrderedManifestWriter {
 public:
  explicit OrderedManifestWriter(const fs::path& path) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw Error(ErrorCode::IoError, "cannot write manifest " + path.string());
  }

  void commit(std::size_t index, std::string line) {
    std::lock_guard lock(mutex_);
    pending_.emplace(index, std::move(line));
    for (auto it = pending_.find(next_); it != pending_.end(); it = pending_.find(next_)) {
      out_ << it->second << '\n';
      pending_.erase(it);
      ++next_;
    }
    out_.flush();
  }

 private:
  std::ofstream out_;
  std::mutex mutex_;
  std::map<std::size_t, std::string> pending_;
  std::size_t next_ = 0;
};

}  // namespace

ScanResult scan(const DatasetLayout& layout) {
  if (!fs::is_directory(layout.root)) throw Error(ErrorCode::RootMissing, "no such directory " + layout.root.string());
  if (!fs::is_directory(layout.images())) {
    throw Error(ErrorCode::RootMissing, "no image directory " + layout.images().string());
  }

  std::vector<fs::path> images;
  for (const auto& entry : fs::directory_iterator(layout.images())) {
    if (entry.is_regular_file() && is_image_ext(entry.path())) images.push_back(entry.path());
  }
  std::sort(images.begin(), images.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

  ScanResult result;
  std::set<std::string> stems;
  for (const auto& image : images) {
    const std::string stem = image.stem().string();
    const fs::path gt = layout.ground_truth() / (stem + ".png");
    if (!stems.insert(stem).second) {
      result.unpaired.push_back({image, "duplicate stem"});
    } else if (!fs::is_regular_file(gt)) {
      result.unpaired.push_back({image, "missing ground truth"});
    } else {
      result.pairs.push_back({image, gt});
    }
  }
  if (result.pairs.empty()) {
    throw Error(ErrorCode::EmptyDataset, "no image/ground-truth pairs under " + layout.root.string());
  }
  return result;
}

std::string to_json_line(const ManifestRecord& r) {
  json j;
  j["source_path"] = r.source_path;
  j["status"] = std::string(to_string(r.status));
  j["skip_reason"] = r.skip_reason.empty() ? json(nullptr) : json(r.skip_reason);
  j["region_index"] = r.region_index > 0 ? json(r.region_index) : json(nullptr);
  j["mask_rect"] = r.mask_rect ? json{{"x", r.mask_rect->x}, {"y", r.mask_rect->y}, {"w", r.mask_rect->w},
                                      {"h", r.mask_rect->h}}
                               : json(nullptr);
  j["prompt"] = r.prompt;
  j["base_seed"] = r.base_seed;
  j["attempts"] = r.attempts;
  j["final_score"] = r.final_score;
  j["output_path"] = r.output_path.empty() ? json(nullptr) : json(r.output_path);
  return j.dump();
}

ManifestRecord parse_json_line(const std::string& line) {
  try {
    const json j = json::parse(line);
    ManifestRecord r;
    r.source_path = j.at("source_path").get<std::string>();
    r.status = parse_status(j.at("status").get<std::string>());
    if (!j.at("skip_reason").is_null()) r.skip_reason = j.at("skip_reason").get<std::string>();
    if (!j.at("region_index").is_null()) r.region_index = j.at("region_index").get<int>();
    if (const auto& m = j.at("mask_rect"); !m.is_null()) {
      r.mask_rect = Rect{m.at("x").get<int>(), m.at("y").get<int>(), m.at("w").get<int>(), m.at("h").get<int>()};
    }
    r.prompt = j.at("prompt").get<std::string>();
    r.base_seed = j.at("base_seed").get<std::uint64_t>();
    r.attempts = j.at("attempts").get<int>();
    r.final_score = j.at("final_score").get<double>();
    if (!j.at("output_path").is_null()) r.output_path = j.at("output_path").get<std::string>();
    if (r.status == SynthesisStatus::Skipped && r.skip_reason.empty()) {
      throw Error(ErrorCode::MalformedManifest, "skipped record without skip_reason");
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedManifest, e.what());
  }
}

void RunStats::add(const ManifestRecord& record) {
  ++total;
  switch (record.status) {
    case SynthesisStatus::Accepted: ++accepted; break;
    case SynthesisStatus::Rejected: ++rejected; break;
    case SynthesisStatus::Skipped: ++skipped[record.skip_reason]; break;
  }
  if (record.attempts > 0) ++attempts_histogram[record.attempts];
}

std::int64_t RunStats::skipped_total() const {
  std::int64_t n = 0;
  for (const auto& [reason, count] : skipped) n += count;
  return n;
}

std::int64_t RunStats::backend_failures() const {
  std::int64_t n = 0;
  for (const auto reason : {kSkipBackend, kSkipProtocol}) {
    if (auto it = skipped.find(std::string(reason)); it != skipped.end()) n += it->second;
  }
  return n;
}

RunStats stats(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::IoError, "cannot open manifest " + manifest.string());
  RunStats s;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      s.add(parse_json_line(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedManifest, manifest.string() + " line " + std::to_string(line_no) + ": " +
                                                    e.what());
    }
  }
  if (s.total == 0) throw Error(ErrorCode::EmptyDataset, "manifest " + manifest.string() + " has no records");
  return s;
}

std::vector<std::string> load_labels(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open label list " + path.string());
  return parse_labels(in, path.string());
}

std::vector<std::string> parse_labels(std::istream& in, const std::string& source) {
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    labels.push_back(line.substr(first, last - first + 1));
  }
  if (labels.empty()) throw Error(ErrorCode::InvalidArgument, "label list " + source + " is empty");
  return labels;
}

ItemSeeds derive_item_seeds(std::uint64_t global_seed, const std::string& filename) {
  SplitMix64 stream(item_seed(global_seed, filename));
  ItemSeeds seeds{stream.split(), stream.split(), 0};
  seeds.base_seed = stream.next() >> 32;
  return seeds;
}

PipelineResult run_pipeline(const DatasetLayout& layout, GeneratorBackend& generator,
                            DiscriminatorBackend& discriminator, const PipelineConfig& config) {
  config.mask.validate();
  config.orchestrator.validate();
  if (config.canvas_side < 1) throw Error(ErrorCode::InvalidArgument, "canvas side must be >= 1");

  PipelineResult result;
  result.scan = scan(layout);

  const fs::path out_images = config.output_root / layout.image_dir;
  const fs::path out_gt = config.output_root / layout.gt_dir;
  std::error_code ec;
  fs::create_directories(out_images, ec);
  if (!ec) fs::create_directories(out_gt, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create output tree under " + config.output_root.string());
  result.manifest_path =
      config.manifest_path.empty() ? config.output_root / "manifest.jsonl" : config.manifest_path;
  OrderedManifestWriter writer(result.manifest_path);

  const auto& pairs = result.scan.pairs;
  std::vector<ManifestRecord> records(pairs.size());
  parallel_for(pairs.size(), config.workers, [&](std::size_t i) {
    const ImagePair& pair = pairs[i];
    const std::string filename = pair.image.filename().string();
    const std::string stem = pair.image.stem().string();
    ItemSeeds seeds = derive_item_seeds(config.seed, filename);

    ManifestRecord& rec = records[i];
    rec.source_path = (fs::path(layout.image_dir) / filename).generic_string();
    rec.base_seed = seeds.base_seed;

    ImageBuffer canvas;
    BinaryMask canvas_gt;
    ImageBuffer output;
    try {
      const ImageBuffer image = read_image(pair.image);
      const BinaryMask gt = read_mask(pair.gt);
      canvas = resize_canvas(image, config.canvas_side);
      canvas_gt = resize_mask(gt, config.canvas_side);
      output = canvas;
      if (gt.width() != image.width() || gt.height() != image.height()) {
        throw Error(ErrorCode::DimensionMismatch, "ground truth size differs from image size");
      }
      rec.prompt = prompt_for(config.prompt_mode, filename, config.labels, seeds.prompt_rng);
      const SynthesisCase c =
          prepare_case(canvas, canvas_gt, config.mask, seeds.mask_rng, rec.prompt, config.canvas_side);
      rec.region_index = c.placement.region_index;
      rec.mask_rect = c.placement.mask_rect;

      OrchestratorConfig orchestrator = config.orchestrator;
      orchestrator.base_seed = seeds.base_seed;
      SynthesisResult synthesis = synthesize_one(c, generator, discriminator, orchestrator);
      rec.status = synthesis.outcome.status;
      rec.skip_reason = synthesis.outcome.skip_reason;
      rec.attempts = synthesis.outcome.attempts;
      rec.final_score = synthesis.outcome.final_score;
      output = std::move(synthesis.image);
    } catch (const Error& e) {
      rec.status = SynthesisStatus::Skipped;
      rec.skip_reason = std::string(to_string(e.code()));
    }

    if (!output.empty()) {
      const fs::path image_out = out_images / (stem + ".png");
      write_png(image_out, output);
      write_png(out_gt / (stem + ".png"), canvas_gt);
      rec.output_path = (fs::path(layout.image_dir) / (stem + ".png")).generic_string();
    }
    writer.commit(i, to_json_line(rec));
  });

  for (const auto& rec : records) result.stats.add(rec);
  return result;
}

}  // namespace camdiff
