// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include "panowarp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "panowarp/dataset.hpp"
#include "panowarp/error.hpp"
#include "panowarp/hole_analysis.hpp"
#include "panowarp/imaging.hpp"
#include "panowarp/json_io.hpp"
#include "panowarp/layout_io.hpp"
#include "panowarp/metrics.hpp"
#include "panowarp/scene_oracle.hpp"
#include "panowarp/splatting.hpp"

namespace panowarp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<double> parse_numbers(const std::string& text, char sep, std::size_t expected,
                                  const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(value)) {
      throw Error(ErrorKind::InvalidArgument, flag + ": cannot parse \"" + item + "\"");
    }
    out.push_back(value);
  }
  if (expected != 0 && out.size() != expected) {
    throw Error(ErrorKind::InvalidArgument, flag + ": expected " + std::to_string(expected) +
                                                " values in \"" + text + "\"");
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, flag + ": no values given");
  return out;
}

PanoDims parse_size(const std::string& text) {
  const auto v = parse_numbers(text, 'x', 2, "--size");
  if (v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
    throw Error(ErrorKind::InvalidArgument, "--size must be integral");
  }
  const PanoDims dims{static_cast<int>(v[0]), static_cast<int>(v[1])};
  require_panoramic(dims);
  return dims;
}

Translation parse_translation(const std::string& text) {
  const auto v = parse_numbers(text, ',', 3, "--t");
  return {v[0], v[1], v[2]};
}

CuboidScene parse_room(const std::string& room, const std::string& camera) {
  const auto r = parse_numbers(room, 'x', 3, "--room");
  CuboidScene scene;
  scene.width = r[0];
  scene.depth = r[1];
  scene.height = r[2];
  if (camera.empty()) {
    scene.camera = {0.0, 0.0, 0.5 * scene.height};
  } else {
    const auto c = parse_numbers(camera, ',', 3, "--camera");
    scene.camera = {c[0], c[1], c[2]};
  }
  scene.validate();
  return scene;
}

TextureKind parse_texture(const std::string& name) {
  if (name == "sinusoid") return TextureKind::Sinusoid;
  if (name == "checker") return TextureKind::Checker;
  throw Error(ErrorKind::InvalidArgument, "unknown texture \"" + name + "\"");
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorKind::Io, "cannot create directory " + dir.string());
  }
}

// Accepts 8-bit RGB or grayscale PNGs.
ImageBuffer load_any_image(const fs::path& path) {
  try {
    return load_rgb(path);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Format) throw;
  }
  return load_gray(path);
}

json invocation_record(const std::string& command, const std::vector<std::string>& args) {
  return {{"command", command}, {"args", json(std::vector<std::string>(args.begin() + 1, args.end()))}};
}

struct RenderJob {
  std::string room;
  std::string camera;
  std::string size = "512x256";
  std::string texture = "sinusoid";
  std::uint64_t seed = 0;
  std::string out;
  std::string name = "view";
};

struct WarpJob {
  std::string rgb;
  std::string depth;
  std::string t;
  SplatParams params;
  std::string out;
  bool single_thread = false;
  int threads = 0;
};

struct LayoutWarpJob {
  std::string layout;
  std::string t;
  std::string out;
};

struct RasterizeJob {
  std::string layout;
  std::string size;
  double sigma = kDefaultLayoutSigma;
  std::string out;
};

struct DatasetJob {
  std::string set = "easy";
  int scenes = 1;
  int targets = 3;
  std::uint64_t seed = 0;
  std::string size = "512x256";
  std::string texture = "sinusoid";
  std::string out;
};

struct EvalJob {
  std::string pred;
  std::string gt;
  std::string mask;
  std::string holes;
  std::string metrics = "psnr,ssim,l1";
  std::string out;
};

struct HolesJob {
  std::string room = "4x4x3";
  std::string camera;
  std::string size = "512x256";
  std::string distances = "0.25,0.5,1.0,1.5";
  int trials = 10;
  std::uint64_t seed = 0;
  int upsample = 2;
  std::string out;
};

void cmd_render(const RenderJob& job, const json& invocation, std::ostream& out) {
  CuboidScene scene = parse_room(job.room, job.camera);
  const PanoDims dims = parse_size(job.size);
  scene.seed = job.seed;
  scene.texture = make_texture(parse_texture(job.texture), job.seed);
  if (job.name.empty()) throw Error(ErrorKind::InvalidArgument, "--name must not be empty");
  const RenderedView view = render_panorama(scene, scene.camera, dims);
  const fs::path dir(job.out);
  ensure_directory(dir);
  save_rgb(view.rgb, dir / (job.name + ".png"));
  save_depth(view.depth, dir / (job.name + ".depth.png"));
  save_layout(view.layout, view.camera, dir / (job.name + ".layout.json"),
              {{"version", kVersion}, {"invocation", invocation}, {"scene", scene_to_json(scene)}});
  out << "wrote " << (dir / job.name).string() << ".{png,depth.png,layout.json}\n";
}

void cmd_warp(const WarpJob& job, const json& invocation, std::ostream& out) {
  job.params.validate();
  const Translation t = parse_translation(job.t);
  const ImageBuffer rgb = load_rgb(job.rgb);
  const DepthBuffer depth = load_depth(job.depth);
  if (rgb.dims() != depth.dims()) {
    throw Error(ErrorKind::DimsMismatch, "rgb and depth sizes differ");
  }
  const int threads = job.single_thread ? 1 : job.threads;
  const WarpOutput warped = forward_splat(rgb, depth, t, job.params, threads);

  const fs::path dir(job.out);
  ensure_directory(dir);
  save_rgb(warped.image, dir / "warped.png");
  std::vector<std::uint16_t> fixed(static_cast<std::size_t>(warped.weights.dims().pixel_count()));
  const auto w = warped.weights.values();
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    fixed[i] = static_cast<std::uint16_t>(std::clamp(std::round(w[i] * 1000.0), 0.0, 65535.0));
  }
  save_gray16(fixed, warped.weights.dims(), dir / "weights.png");
  save_mask(warped.holes, dir / "holes.png");
  const double rate = missing_rate(warped);
  write_json({{"version", kVersion},
              {"invocation", invocation},
              {"parameters",
               {{"t", {t.tx, t.ty, t.tz}},
                {"dmax", job.params.d_max},
                {"eps", job.params.eps},
                {"upsample", job.params.upsample_factor},
                {"tau", job.params.hole_threshold},
                {"threads", threads}}},
              {"missing_rate", rate}},
             dir / "stats.json");
  out << "missing_rate " << rate << "\n";
}

void cmd_layout_warp(const LayoutWarpJob& job, const json& invocation, std::ostream& out) {
  const Translation t = parse_translation(job.t);
  const LayoutDocument doc = load_layout(job.layout);
  const TransformedLayout moved = transform_layout(doc.layout, t, doc.camera);
  save_layout(moved.layout, moved.camera, job.out,
              {{"version", kVersion}, {"invocation", invocation}});
  out << "wrote " << job.out << "\n";
}

void cmd_rasterize(const RasterizeJob& job, const json&, std::ostream& out) {
  const LayoutDocument doc = load_layout(job.layout);
  const PanoDims dims = job.size.empty() ? doc.layout.dims : parse_size(job.size);
  const LayoutMaps maps = rasterize_layout(doc.layout, doc.camera, dims, job.sigma);
  const fs::path dir(job.out);
  ensure_directory(dir);
  save_rgb(maps.boundary, dir / "boundary.png");
  save_gray(maps.corner, dir / "corner.png");
  out << "wrote " << (dir / "boundary.png").string() << ", " << (dir / "corner.png").string()
      << "\n";
}

void cmd_dataset(const DatasetJob& job, const json& invocation, std::ostream& out) {
  DatasetOptions options;
  options.split = parse_split(job.set);
  options.targets_per_source = job.targets;
  options.seed = job.seed;
  options.dims = parse_size(job.size);
  if (job.scenes < 1) throw Error(ErrorKind::InvalidArgument, "--scenes must be >= 1");
  if (job.targets < 1) throw Error(ErrorKind::InvalidArgument, "--targets must be >= 1");
  const auto scenes = random_scenes(job.scenes, job.seed, parse_texture(job.texture));
  const json manifest = make_dataset(scenes, options, job.out, invocation);
  out << "wrote " << manifest["pairs"].size() << " pairs to " << job.out << "\n";
}

void cmd_eval(const EvalJob& job, const json& invocation, std::ostream& out) {
  std::vector<std::string> names;
  std::stringstream ss(job.metrics);
  for (std::string name; std::getline(ss, name, ',');) {
    if (name != "psnr" && name != "ssim" && name != "l1" && name != "lpips") {
      throw Error(ErrorKind::InvalidArgument, "unknown metric \"" + name + "\"");
    }
    names.push_back(name);
  }
  if (names.empty()) throw Error(ErrorKind::InvalidArgument, "--metrics is empty");
  if (!job.mask.empty() && !job.holes.empty()) {
    throw Error(ErrorKind::InvalidArgument, "--mask and --holes are mutually exclusive");
  }
  const ImageBuffer pred = load_any_image(job.pred);
  const ImageBuffer gt = load_any_image(job.gt);
  std::optional<Mask> mask;
  if (!job.mask.empty()) mask = load_mask(job.mask);
  if (!job.holes.empty()) {
    const Mask holes = load_mask(job.holes);
    Mask valid(holes.dims(), false);
    for (int v = 0; v < holes.height(); ++v) {
      for (int u = 0; u < holes.width(); ++u) valid.set(u, v, !holes.at(u, v));
    }
    mask = valid;
  }
  const Mask* m = mask ? &*mask : nullptr;

  json results = json::array();
  for (const std::string& name : names) {
    if (name == "lpips") {
      results.push_back({{"metric", "lpips"}, {"value", "n/a"}, {"mask_coverage", nullptr}});
      continue;
    }
    const MetricReport r = name == "psnr" ? psnr(pred, gt, m) : name == "ssim" ? ssim(pred, gt, m)
                                                                             : l1(pred, gt, m);
    results.push_back(to_json(r));
    out << r.name << " " << r.value << "\n";
  }
  write_json({{"version", kVersion}, {"invocation", invocation}, {"results", results}}, job.out);
}

void cmd_holes(const HolesJob& job, const json& invocation, std::ostream& out) {
  CuboidScene scene = parse_room(job.room, job.camera);
  scene.seed = job.seed;
  scene.texture = make_texture(TextureKind::Sinusoid, job.seed);
  const PanoDims dims = parse_size(job.size);
  const auto distances = parse_numbers(job.distances, ',', 0, "--distances");
  SplatParams params;
  params.upsample_factor = job.upsample;
  const auto rows = missing_rate_curve(scene, distances, job.trials, job.seed, dims, params);
  json table = json::array();
  for (const MissingRateRow& r : rows) {
    table.push_back({{"distance", r.distance}, {"mean", r.mean}, {"min", r.min}, {"max", r.max}});
    out << r.distance << " " << r.mean << " " << r.min << " " << r.max << "\n";
  }
  write_json({{"version", kVersion},
              {"invocation", invocation},
              {"scene", scene_to_json(scene)},
              {"upsample", job.upsample},
              {"curve", table}},
             job.out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Panoramic novel-view geometry: render, warp, layout and evaluation tools"};
  app.name(args.empty() ? "panowarp" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);

  RenderJob render;
  auto* render_cmd = app.add_subcommand("render", "Render an analytic cuboid room panorama");
  render_cmd->add_option("--room", render.room, "Room extents WxDxH in meters")->required();
  render_cmd->add_option("--camera", render.camera, "Camera position x,y,z (floor centre origin)")
      ->required();
  render_cmd->add_option("--size", render.size, "Panorama size WxH")->capture_default_str();
  render_cmd->add_option("--texture", render.texture, "checker or sinusoid")->capture_default_str();
  render_cmd->add_option("--seed", render.seed, "Texture seed")->capture_default_str();
  render_cmd->add_option("--out", render.out, "Output directory")->required();
  render_cmd->add_option("--name", render.name, "Output file stem")->capture_default_str();

  WarpJob warp;
  auto* warp_cmd = app.add_subcommand("warp", "Forward-splat a panorama to a translated camera");
  warp_cmd->add_option("--rgb", warp.rgb, "Source 8-bit RGB PNG")->required();
  warp_cmd->add_option("--depth", warp.depth, "Source 16-bit millimeter depth PNG")->required();
  warp_cmd->add_option("--t", warp.t, "Translation tx,ty,tz in meters")->required();
  warp_cmd->add_option("--dmax", warp.params.d_max, "Soft z-buffer depth scale")
      ->capture_default_str();
  warp_cmd->add_option("--eps", warp.params.eps, "Denominator epsilon")->capture_default_str();
  warp_cmd->add_option("--upsample", warp.params.upsample_factor, "Nearest upsampling factor")
      ->capture_default_str();
  warp_cmd->add_option("--tau", warp.params.hole_threshold, "Hole weight threshold")
      ->capture_default_str();
  warp_cmd->add_option("--threads", warp.threads, "Worker threads (0 = auto)")
      ->capture_default_str();
  warp_cmd->add_flag("--single-thread", warp.single_thread, "Deterministic sequential path");
  warp_cmd->add_option("--out", warp.out, "Output directory")->required();

  LayoutWarpJob layout_warp;
  auto* layout_warp_cmd = app.add_subcommand("layout-warp", "Move a layout to a translated camera");
  layout_warp_cmd->add_option("--layout", layout_warp.layout, "Input layout JSON")->required();
  layout_warp_cmd->add_option("--t", layout_warp.t, "Translation tx,ty,tz in meters")->required();
  layout_warp_cmd->add_option("--out", layout_warp.out, "Output layout JSON")->required();

  RasterizeJob rasterize;
  auto* rasterize_cmd = app.add_subcommand("rasterize", "Draw boundary and corner maps");
  rasterize_cmd->add_option("--layout", rasterize.layout, "Input layout JSON")->required();
  rasterize_cmd->add_option("--size", rasterize.size, "Map size WxH (default: layout size)");
  rasterize_cmd->add_option("--sigma", rasterize.sigma, "Gaussian std in pixels")
      ->capture_default_str();
  rasterize_cmd->add_option("--out", rasterize.out, "Output directory")->required();

  DatasetJob dataset;
  auto* dataset_cmd = app.add_subcommand("dataset", "Generate source/target pairs from random rooms");
  dataset_cmd->add_option("--set", dataset.set, "easy (0.2-0.3 m) or hard (1.0-2.0 m)")
      ->capture_default_str();
  dataset_cmd->add_option("--scenes", dataset.scenes, "Number of rooms")->capture_default_str();
  dataset_cmd->add_option("--targets", dataset.targets, "Targets per source")
      ->capture_default_str();
  dataset_cmd->add_option("--seed", dataset.seed, "Random seed")->capture_default_str();
  dataset_cmd->add_option("--size", dataset.size, "Panorama size WxH")->capture_default_str();
  dataset_cmd->add_option("--texture", dataset.texture, "checker or sinusoid")
      ->capture_default_str();
  dataset_cmd->add_option("--out", dataset.out, "Output directory")->required();

  EvalJob eval;
  auto* eval_cmd = app.add_subcommand("eval", "Compare a prediction with ground truth");
  eval_cmd->add_option("--pred", eval.pred, "Predicted PNG")->required();
  eval_cmd->add_option("--gt", eval.gt, "Ground-truth PNG")->required();
  eval_cmd->add_option("--mask", eval.mask, "PNG mask, nonzero pixels are evaluated");
  eval_cmd->add_option("--holes", eval.holes, "PNG hole mask, nonzero pixels are skipped");
  eval_cmd->add_option("--metrics", eval.metrics, "Comma list of psnr, ssim, l1, lpips")
      ->capture_default_str();
  eval_cmd->add_option("--out", eval.out, "Report JSON")->required();

  HolesJob holes;
  auto* holes_cmd = app.add_subcommand("holes", "Missing-rate vs translation distance");
  holes_cmd->add_option("--room", holes.room, "Room extents WxDxH")->capture_default_str();
  holes_cmd->add_option("--camera", holes.camera, "Camera x,y,z (default: room centre)");
  holes_cmd->add_option("--size", holes.size, "Panorama size WxH")->capture_default_str();
  holes_cmd->add_option("--distances", holes.distances, "Comma list of meters")
      ->capture_default_str();
  holes_cmd->add_option("--trials", holes.trials, "Directions per distance")->capture_default_str();
  holes_cmd->add_option("--seed", holes.seed, "Random seed")->capture_default_str();
  holes_cmd->add_option("--upsample", holes.upsample, "Nearest upsampling factor")
      ->capture_default_str();
  holes_cmd->add_option("--out", holes.out, "Curve JSON")->required();

  std::vector<const char*> argv;
  std::vector<std::string> storage = args.empty() ? std::vector<std::string>{"panowarp"} : args;
  for (const std::string& a : storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    if (*render_cmd) {
      cmd_render(render, invocation_record("render", storage), out);
    } else if (*warp_cmd) {
      cmd_warp(warp, invocation_record("warp", storage), out);
    } else if (*layout_warp_cmd) {
      cmd_layout_warp(layout_warp, invocation_record("layout-warp", storage), out);
    } else if (*rasterize_cmd) {
      cmd_rasterize(rasterize, invocation_record("rasterize", storage), out);
    } else if (*dataset_cmd) {
      cmd_dataset(dataset, invocation_record("dataset", storage), out);
    } else if (*eval_cmd) {
      cmd_eval(eval, invocation_record("eval", storage), out);
    } else if (*holes_cmd) {
      if (holes.trials < 1) throw Error(ErrorKind::InvalidArgument, "--trials must be >= 1");
      cmd_holes(holes, invocation_record("holes", storage), out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_io() ? kIoError : kValidationError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}

}  // namespace panowarp::cli
