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

#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include "camdiff/backends.hpp"
#include "camdiff/dataset.hpp"
#include "camdiff/error.hpp"
#include "camdiff/image_io.hpp"
#include "camdiff/metrics.hpp"
#include "camdiff/parallel.hpp"
#include "builtin_labels.hpp"
#include "cli/overlay.hpp"

namespace camdiff::cli {
namespace fs = std::filesystem;
namespace {

// INI/TOML reader that also accepts snake_case keys (ratio_min == ratio-min).
class SnakeCaseConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigTOML::from_config(input);
    for (auto& item : items) std::replace(item.name.begin(), item.name.end(), '_', '-');
    return items;
  }
};

struct MaskOptions {
  double ratio_min = 0.0625;
  double ratio_max = 0.25;
  double ratio_mask = 0.75;
};

struct SynthesizeOptions {
  MaskOptions mask;
  std::string root;
  std::string out;
  std::string manifest;
  std::string labels;  // empty: built-in class list
  std::string prompt_mode = "auto";
  std::uint64_t seed = 0;
  int workers = default_workers();
  int canvas_side = kCanvasSide;
  int max_attempts = 8;
  double accept_threshold = 0.5;
  bool mock = false;
  std::string mock_generator = "ellipse";
  double mock_score = 1.0;
  std::string backend_url;
  double request_timeout = 120.0;
  int transport_retries = 2;
  int backoff_ms = 500;
  std::optional<int> steps;
  std::optional<double> guidance;
};

struct EvaluateOptions {
  std::string pred_dir;
  std::string gt_dir;
  std::string table_out;
  std::string dataset_name;
  std::string probs;
  int splits = 1;
  int workers = default_workers();
};

struct InspectOptions {
  MaskOptions mask;
  std::string image;
  std::string gt;
  std::string out;
  std::uint64_t seed = 0;
  int canvas_side = kCanvasSide;
};

struct StatsOptions {
  std::string manifest;
};

void add_mask_options(CLI::App* cmd, MaskOptions& m) {
  cmd->add_option("--ratio-min", m.ratio_min, "Regions must exceed this fraction of the image area")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--ratio-max", m.ratio_max, "Region area cap (fraction of the image area)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--ratio-mask", m.ratio_mask, "Fraction of the (capped) region covered by the mask")
      ->check(CLI::Range(0.0, 1.0));
}

MaskGenConfig to_mask_config(const MaskOptions& m) {
  MaskGenConfig config;
  config.ratio_min = m.ratio_min;
  config.ratio_max = m.ratio_max;
  config.ratio_mask = m.ratio_mask;
  config.validate();
  return config;
}

PromptMode parse_prompt_mode(const std::string& s) {
  if (s == "labeled") return PromptMode::Labeled;
  if (s == "sampled") return PromptMode::Sampled;
  return PromptMode::Automatic;
}

std::string fixed4(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

std::string percent(double fraction) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << fraction * 100.0 << '%';
  return s.str();
}

void print_stats(std::ostream& out, const RunStats& s) {
  out << "accepted " << s.accepted << '/' << s.total << ", rejected " << s.rejected << ", skipped "
      << s.skipped_total() << '\n';
  for (const auto& [reason, count] : s.skipped) out << "  skipped(" << reason << ") " << count << '\n';
  out << "acceptance " << percent(s.acceptance_rate()) << '\n';
  out << "attempts histogram:";
  if (s.attempts_histogram.empty()) out << " (none)";
  for (const auto& [attempts, count] : s.attempts_histogram) out << ' ' << attempts << ':' << count;
  out << '\n';
}

int cmd_synthesize(const SynthesizeOptions& o, std::ostream& out, std::ostream& err) {
  PipelineConfig config;
  config.mask = to_mask_config(o.mask);
  config.orchestrator.accept_threshold = o.accept_threshold;
  config.orchestrator.max_attempts = o.max_attempts;
  config.orchestrator.inpaint.steps = o.steps;
  config.orchestrator.inpaint.guidance = o.guidance;
  config.prompt_mode = parse_prompt_mode(o.prompt_mode);
  config.seed = o.seed;
  config.workers = o.workers;
  config.canvas_side = o.canvas_side;
  config.output_root = o.out;
  config.manifest_path = o.manifest;
  if (config.prompt_mode != PromptMode::Labeled) {
    if (o.labels.empty()) {
      std::istringstream builtin{std::string(kBuiltinLabels)};
      config.labels = parse_labels(builtin, "<built-in>");
    } else {
      config.labels = load_labels(o.labels);
    }
  }

  std::unique_ptr<GeneratorBackend> generator;
  std::unique_ptr<DiscriminatorBackend> discriminator;
  std::shared_ptr<HttpBackend> http;
  if (o.mock) {
    generator = std::make_unique<MockGenerator>(o.mock_generator == "passthrough" ? MockGenerator::Mode::Passthrough
                                                                                   : MockGenerator::Mode::FlatEllipse);
    discriminator = std::make_unique<MockDiscriminator>(MockDiscriminator::constant(o.mock_score));
  } else {
    if (o.backend_url.empty()) {
      err << "error: either --mock or --backend-url (or CAMDIFF_BACKEND_URL) is required\n";
      return kExitFatal;
    }
    HttpBackendConfig hc;
    hc.base_url = o.backend_url;
    hc.request_timeout = std::chrono::milliseconds(static_cast<std::int64_t>(o.request_timeout * 1000.0));
    hc.transport_retries = o.transport_retries;
    hc.backoff = std::chrono::milliseconds(o.backoff_ms);
    http = std::make_shared<HttpBackend>(hc);
  }
  GeneratorBackend& gen = http ? static_cast<GeneratorBackend&>(*http) : *generator;
  DiscriminatorBackend& disc = http ? static_cast<DiscriminatorBackend&>(*http) : *discriminator;

  const PipelineResult result = run_pipeline(DatasetLayout{o.root}, gen, disc, config);
  for (const auto& u : result.scan.unpaired) {
    err << "warning: unpaired image " << u.image.filename().string() << " (" << u.reason << ")\n";
  }
  print_stats(out, result.stats);
  out << "manifest " << result.manifest_path.string() << '\n';
  if (const auto failures = result.stats.backend_failures(); failures > 0) {
    err << "warning: " << failures << " image(s) skipped because the backend failed\n";
    return kExitPartial;
  }
  return kExitOk;
}

void append_table_row(const fs::path& path, const std::string& dataset, const MetricReport& r) {
  const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
  std::ofstream table(path, std::ios::app);
  if (!table) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  if (fresh) table << "dataset,M,F_m,S_m,E_m,count\n";
  table << dataset << ',' << fixed4(r.mae) << ',' << fixed4(r.f_max) << ',' << fixed4(r.s_measure) << ','
        << fixed4(r.e_max) << ',' << r.count << '\n';
}

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out, std::ostream& err) {
  if (o.pred_dir.empty() && o.probs.empty()) {
    err << "error: evaluate needs --pred-dir/--gt-dir or --probs\n";
    return kExitFatal;
  }
  if (!o.pred_dir.empty()) {
    if (o.gt_dir.empty()) {
      err << "error: --gt-dir is required with --pred-dir\n";
      return kExitFatal;
    }
    const EvaluationResult result = evaluate_directories(o.pred_dir, o.gt_dir, o.workers);
    for (const auto& name : result.unpaired_predictions) err << "warning: unpaired prediction " << name << '\n';
    for (const auto& failure : result.failures) err << "warning: not scored " << failure << '\n';

    const std::string dataset =
        o.dataset_name.empty() ? fs::path(o.gt_dir).lexically_normal().parent_path().filename().string()
                               : o.dataset_name;
    const MetricReport& r = result.report;
    out << "{\"dataset\":\"" << dataset << "\",\"count\":" << r.count << ",\"mae\":" << fixed4(r.mae)
        << ",\"f_max\":" << fixed4(r.f_max) << ",\"s_measure\":" << fixed4(r.s_measure)
        << ",\"e_max\":" << fixed4(r.e_max) << ",\"empty_gt\":" << r.empty_gt << "}\n";
    if (!o.table_out.empty()) append_table_row(o.table_out, dataset, r);
  }
  if (!o.probs.empty()) {
    const double is = inception_score(read_probabilities(o.probs), o.splits);
    out << "{\"inception_score\":" << fixed4(is) << ",\"splits\":" << o.splits << "}\n";
  }
  return kExitOk;
}

int cmd_inspect(const InspectOptions& o, std::ostream& out, std::ostream& err) {
  const MaskGenConfig mask_config = to_mask_config(o.mask);
  const ImageBuffer canvas = resize_canvas(read_image(o.image), o.canvas_side);
  const BinaryMask gt = resize_mask(read_mask(o.gt), o.canvas_side);
  const std::string filename = fs::path(o.image).filename().string();
  ItemSeeds seeds = derive_item_seeds(o.seed, filename);

  try {
    const BoundingBox box = tight_bbox(gt);
    const RegionGrid grid = partition(o.canvas_side, o.canvas_side, box);
    const MaskPlacement p = select_mask(grid, mask_config, seeds.mask_rng);

    out << "image " << filename << " canvas " << o.canvas_side << 'x' << o.canvas_side << " seed " << o.seed
        << '\n';
    out << "bbox " << box.x_min << ' ' << box.y_min << ' ' << box.x_max << ' ' << box.y_max << '\n';
    for (int i = 1; i <= 9; ++i) {
      const Rect& r = grid.region(i);
      out << "region " << i << ' ' << r.x << ' ' << r.y << ' ' << r.w << ' ' << r.h << " area " << r.area()
          << (i == 5 ? " (object)" : "") << '\n';
    }
    out << "region_index " << p.region_index << '\n';
    out << "mask_rect " << p.mask_rect.x << ' ' << p.mask_rect.y << ' ' << p.mask_rect.w << ' ' << p.mask_rect.h
        << '\n';
    out << "region_area " << p.region_area << " mask_area " << p.mask_area << '\n';
    if (!o.out.empty()) {
      write_png(o.out, render_overlay(canvas, grid, p));
      out << "overlay " << o.out << '\n';
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoForeground && e.code() != ErrorCode::NoEligibleRegion &&
        e.code() != ErrorCode::DegenerateRegion) {
      throw;
    }
    err << e.what() << '\n';
    return kExitFatal;
  }
  return kExitOk;
}

int cmd_stats(const StatsOptions& o, std::ostream& out) {
  const RunStats s = stats(o.manifest);
  out << "records " << s.total << '\n';
  print_stats(out, s);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"camdiff: synthesise salient objects into camouflage datasets and score detectors"};
  app.name("camdiff");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.config_formatter(std::make_shared<SnakeCaseConfig>());
  app.set_config("--config", "", "key = value config file; one [section] per subcommand. Flags override it");
  app.allow_config_extras(false);

  SynthesizeOptions syn;
  auto* synthesize = app.add_subcommand("synthesize", "Run the synthesis pipeline over a dataset");
  synthesize->add_option("--root", syn.root, "Dataset root containing Imgs/ and GT/")->required();
  synthesize->add_option("--out", syn.out, "Output root (mirrors Imgs/ and GT/)")->required();
  synthesize->add_option("--manifest", syn.manifest, "Manifest path (default <out>/manifest.jsonl)");
  synthesize->add_option("--labels", syn.labels, "Class-name list for sampled prompts (default: built-in COD10K classes)");
  synthesize->add_option("--prompt-mode", syn.prompt_mode, "Prompt source")
      ->check(CLI::IsMember({"auto", "labeled", "sampled"}));
  synthesize->add_option("--seed", syn.seed, "Global seed");
  synthesize->add_option("--workers", syn.workers, "Images processed concurrently")->check(CLI::PositiveNumber);
  synthesize->add_option("--canvas-side", syn.canvas_side, "Processing resolution")->check(CLI::PositiveNumber);
  synthesize->add_option("--max-attempts", syn.max_attempts, "Seeds tried per image")->check(CLI::PositiveNumber);
  synthesize->add_option("--accept-threshold", syn.accept_threshold, "Minimum discriminator score")
      ->check(CLI::Range(0.0, 1.0));
  add_mask_options(synthesize, syn.mask);
  synthesize->add_flag("--mock", syn.mock, "Use in-process mock backends");
  synthesize->add_option("--mock-generator", syn.mock_generator, "Mock generator mode")
      ->check(CLI::IsMember({"ellipse", "passthrough"}));
  synthesize->add_option("--mock-score", syn.mock_score, "Constant score of the mock discriminator")
      ->check(CLI::Range(0.0, 1.0));
  synthesize->add_option("--backend-url", syn.backend_url, "Model service base URL")->envname("CAMDIFF_BACKEND_URL");
  synthesize->add_option("--request-timeout", syn.request_timeout, "Per-request timeout in seconds")
      ->check(CLI::PositiveNumber);
  synthesize->add_option("--transport-retries", syn.transport_retries, "Retries per request on transport failure")
      ->check(CLI::NonNegativeNumber);
  synthesize->add_option("--backoff-ms", syn.backoff_ms, "Initial retry backoff, doubled per retry")
      ->check(CLI::NonNegativeNumber);
  synthesize->add_option("--steps", syn.steps, "Sampler steps forwarded to the generator");
  synthesize->add_option("--guidance", syn.guidance, "Guidance scale forwarded to the generator");

  EvaluateOptions ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score prediction maps and/or class probabilities");
  evaluate->add_option("--pred-dir", ev.pred_dir, "Directory of 8-bit prediction maps");
  evaluate->add_option("--gt-dir", ev.gt_dir, "Directory of ground-truth masks (<stem>.png)");
  evaluate->add_option("--table-out", ev.table_out, "Append a CSV row (dataset,M,F_m,S_m,E_m,count)");
  evaluate->add_option("--dataset-name", ev.dataset_name, "Dataset label in the report (default: GT parent dir)");
  evaluate->add_option("--probs", ev.probs, "Probability vectors, one per line, for the Inception Score");
  evaluate->add_option("--splits", ev.splits, "Inception Score splits")->check(CLI::PositiveNumber);
  evaluate->add_option("--workers", ev.workers, "Scoring threads")->check(CLI::PositiveNumber);

  InspectOptions in;
  auto* inspect = app.add_subcommand("inspect", "Show the region grid and mask placement for one image");
  inspect->add_option("--image", in.image, "Source image")->required();
  inspect->add_option("--gt", in.gt, "Ground-truth mask")->required();
  inspect->add_option("--out", in.out, "Overlay PNG to write");
  inspect->add_option("--seed", in.seed, "Global seed (same derivation as synthesize)");
  inspect->add_option("--canvas-side", in.canvas_side, "Processing resolution")->check(CLI::PositiveNumber);
  add_mask_options(inspect, in.mask);

  StatsOptions st;
  auto* stats_cmd = app.add_subcommand("stats", "Summarise a manifest");
  stats_cmd->add_option("--manifest", st.manifest, "manifest.jsonl to read")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (synthesize->parsed()) return cmd_synthesize(syn, out, err);
    if (evaluate->parsed()) return cmd_evaluate(ev, out, err);
    if (inspect->parsed()) return cmd_inspect(in, out, err);
    if (stats_cmd->parsed()) return cmd_stats(st, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFatal;
  }
  return kExitFatal;
}

}  // namespace camdiff::cli
