// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "panowarp/cli.hpp"
#include "panowarp/dataset.hpp"
#include "panowarp/error.hpp"
#include "panowarp/hole_analysis.hpp"
#include "panowarp/layout.hpp"
#include "panowarp/metrics.hpp"
#include "panowarp/random.hpp"
#include "panowarp/scene_oracle.hpp"
#include "panowarp/sphere_geometry.hpp"
#include "panowarp/splatting.hpp"

namespace fs = std::filesystem;
using namespace panowarp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

double u_gap(double a, double b, int width) {
  const double d = std::abs(a - b);
  return std::min(d, width - d);
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome coordinate_round_trips() {
  const auto start = Clock::now();
  const PanoDims dims{512, 256};
  Rng rng(1);
  double pix_err = 0.0;
  double cart_err = 0.0;
  double reproj_err = 0.0;
  for (int i = 0; i < 1'000'000; ++i) {
    const PixelCoord p{rng.uniform(0.0, dims.width), rng.uniform(0.5, dims.height - 0.5)};
    const double depth = rng.uniform(0.5, 10.0);
    const Direction s = pix_to_sph(p, dims);
    const PixelCoord back = sph_to_pix({s.phi, s.theta}, dims);
    pix_err = std::max({pix_err, u_gap(back.u, p.u, dims.width), std::abs(back.v - p.v)});

    const SphericalCoord sd{s.phi, s.theta, depth};
    const SphericalCoord round = cart_to_sph(sph_to_cart(sd));
    cart_err = std::max({cart_err, std::abs(std::remainder(round.phi - sd.phi, 2.0 * kPi)),
                         std::abs(round.theta - sd.theta), std::abs(round.r - sd.r)});

    const Translation t{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
    const Reprojection there = reproject_pixel(p, depth, t, dims);
    const Reprojection home = reproject_pixel(there.pixel, there.depth, -t, dims);
    reproj_err = std::max({reproj_err, u_gap(home.pixel.u, p.u, dims.width),
                           std::abs(home.pixel.v - p.v)});
  }
  const double elapsed = seconds_since(start);
  const bool pass = pix_err <= 1e-9 && cart_err <= 1e-9 && reproj_err <= 1e-6 && elapsed < 10.0;
  return {pass, fmt("pix<->sph %.2e, sph<->cart %.2e, reproject %.2e px, %.2f s", pix_err,
                    cart_err, reproj_err, elapsed)};
}

Outcome identity_warp() {
  CuboidScene scene;
  scene.texture = make_texture(TextureKind::Sinusoid, 2);
  const RenderedView view = render_panorama(scene, scene.camera, {512, 256});
  SplatParams params;
  params.upsample_factor = 1;
  const auto start = Clock::now();
  const WarpOutput out = forward_splat(view.rgb, view.depth, {}, params);
  const double elapsed = seconds_since(start);
  double worst = 0.0;
  const auto a = out.image.values();
  const auto b = view.rgb.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(std::abs(b[i]), 1e-12));
  }
  const double rate = missing_rate(out);
  return {worst <= 1e-4 && rate == 0.0 && elapsed < 5.0,
          fmt("max relative error %.2e, missing_rate %g, %.3f s", worst, rate, elapsed)};
}

Outcome oracle_equivalence() {
  const auto scenes = random_scenes(24, 3, TextureKind::Sinusoid);
  Rng rng(3);
  double worst = 0.0;
  int cases = 0;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const CuboidScene& scene = scenes[i];
    const RenderedView view = render_panorama(scene, scene.camera, {256, 128});
    const Translation t =
        sample_target(scene, i % 2 == 0 ? DatasetSplit::Easy : DatasetSplit::Hard, rng);
    SplatParams params;
    params.upsample_factor = 1 + static_cast<int>(i % 2 == 0 ? (i / 2) % 2 : ((i + 1) / 2) % 2);
    const WarpOutput fast = forward_splat(view.rgb, view.depth, t, params, 4);
    const WarpOutput ref = splat_reference(view.rgb, view.depth, t, params);
    const auto a = fast.image.values();
    const auto b = ref.image.values();
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    if (!(fast.holes == ref.holes)) worst = 1.0;
    ++cases;
  }
  return {worst <= 1e-6 && cases >= 20, fmt("%d cases, max channel difference %.2e", cases, worst)};
}

Outcome geometric_fidelity() {
  const auto start = Clock::now();
  CuboidScene scene;  // 4 x 4 x 3 m, camera at the centre, 1.5 m up
  scene.texture = make_texture(TextureKind::Sinusoid, 4);
  const PanoDims dims{512, 256};
  const RenderedView source = render_panorama(scene, scene.camera, dims);
  constexpr int kDirections = 12;
  Rng rng(4);
  std::vector<double> alphas;
  for (int k = 0; k < kDirections; ++k) alphas.push_back(rng.uniform(0.0, 2.0 * kPi));

  double mean_psnr[2] = {0.0, 0.0};
  const double distances[2] = {0.3, 1.5};
  for (int d = 0; d < 2; ++d) {
    for (double alpha : alphas) {
      const Translation t = horizontal_translation(distances[d], alpha);
      const RenderedView target = render_panorama(scene, scene.camera + t.as_point(), dims);
      const WarpOutput warped = forward_splat(source.rgb, source.depth, t);
      Mask valid(dims, false);
      for (int v = 0; v < dims.height; ++v) {
        for (int u = 0; u < dims.width; ++u) valid.set(u, v, !warped.holes.at(u, v));
      }
      mean_psnr[d] += psnr(warped.image, target.rgb, &valid).value / kDirections;
    }
  }
  const double elapsed = seconds_since(start);
  return {mean_psnr[0] >= 25.0 && mean_psnr[1] >= 20.0 && elapsed < 120.0,
          fmt("masked PSNR %.2f dB at 0.3 m, %.2f dB at 1.5 m over %d directions, %.1f s",
              mean_psnr[0], mean_psnr[1], kDirections, elapsed)};
}

Outcome hole_behavior() {
  CuboidScene scene;
  const std::vector<double> distances{0.25, 0.5, 1.0, 1.5};
  const PanoDims dims{512, 256};
  SplatParams one;
  one.upsample_factor = 1;
  SplatParams two;
  two.upsample_factor = 2;
  const auto a = missing_rate_curve(scene, distances, 10, 5, dims, one);
  const auto b = missing_rate_curve(scene, distances, 10, 5, dims, two);
  bool pass = true;
  std::ostringstream detail;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (i > 0 && (a[i].mean < a[i - 1].mean || b[i].mean < b[i - 1].mean)) pass = false;
    if (b[i].mean > a[i].mean) pass = false;
    detail << fmt("%s%.2f m: %.4f/%.4f", i == 0 ? "" : ", ", distances[i], a[i].mean, b[i].mean);
  }
  return {pass, detail.str() + " (factor 1/2)"};
}

Outcome layout_oracle_equality() {
  const auto scenes = random_scenes(25, 6, TextureKind::Sinusoid);
  const PanoDims dims{512, 256};
  Rng rng(6);
  double pix_err = 0.0;
  double lift_err = 0.0;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const CuboidScene& scene = scenes[i];
    const auto source_junctions = room_junctions(scene, scene.camera);
    const Layout source = project_layout(source_junctions, dims);
    const CameraConfig cam{scene.camera.z};
    const Translation t =
        sample_target(scene, i % 2 == 0 ? DatasetSplit::Easy : DatasetSplit::Hard, rng);
    const TransformedLayout moved = transform_layout(source, t, cam);
    const auto target_junctions = room_junctions(scene, scene.camera + t.as_point());
    const Layout truth = project_layout(target_junctions, dims);
    if (moved.layout.corners.size() != truth.corners.size()) return {false, "corner count differs"};
    for (std::size_t k = 0; k < truth.corners.size(); ++k) {
      pix_err = std::max({pix_err, u_gap(moved.layout.corners[k].pixel.u, truth.corners[k].pixel.u, dims.width),
                          std::abs(moved.layout.corners[k].pixel.v - truth.corners[k].pixel.v)});
    }
    const auto lifted = lift_junctions(source, cam);
    for (const Junction3D& j : lifted) {
      double best = 1e9;
      for (const Junction3D& g : source_junctions) {
        best = std::min(best, std::max((j.ceiling - g.ceiling).norm(), (j.floor - g.floor).norm()));
      }
      lift_err = std::max(lift_err, best);
    }
  }
  return {pix_err <= 1e-6 && lift_err <= 1e-6,
          fmt("%zu scenes, corner error %.2e px, lift error %.2e m", scenes.size(), pix_err,
              lift_err)};
}

Outcome metric_correctness() {
  const PanoDims dims{64, 32};
  std::vector<std::string> failures;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };
  const ImageBuffer zero(dims, 3, 0.0);
  const ImageBuffer one(dims, 3, 1.0);
  const ImageBuffer quarter(dims, 3, 0.25);
  const ImageBuffer three_quarter(dims, 3, 0.75);
  const ImageBuffer tenth(dims, 3, 0.1);
  const ImageBuffer half(dims, 3, 0.5);
  check(l1(quarter, quarter).value == 0.0, "l1 identical");
  check(l1(one, zero).value == 1.0, "l1 ones vs zeros");
  check(std::abs(l1(quarter, three_quarter).value - 0.5) < 1e-12, "l1 0.25 vs 0.75");
  check(psnr(half, half).value == 99.0, "psnr cap");
  check(std::abs(psnr(zero, tenth).value - 20.0) < 1e-9, "psnr 20 dB");
  check(std::abs(psnr(zero, half).value - 10.0 * std::log10(4.0)) < 1e-9, "psnr 6.02 dB");
  check(std::abs(ssim(tenth, tenth).value - 1.0) < 1e-12, "ssim identical");
  const double c1 = 1e-4;
  const double c2 = 9e-4;
  // Zero variances: ((2*0*1 + C1)(0 + C2)) / ((0 + 1 + C1)(0 + 0 + C2)).
  const double two_constant = (c1 * c2) / ((1.0 + c1) * c2);
  check(std::abs(ssim(zero, one).value - two_constant) < 1e-12, "ssim two constants");

  Rng rng(7);
  ImageBuffer x(dims, 3);
  ImageBuffer y(dims, 3);
  for (double& v : x.values()) v = rng.uniform();
  for (double& v : y.values()) v = rng.uniform();
  check(std::abs(ssim(x, y).value - ssim(y, x).value) < 1e-12, "ssim symmetry");

  const ImageBuffer half1(dims, 1, 0.5);
  check(std::abs(bce_map(half1, half1) - std::log(2.0)) < 1e-12, "bce ln 2");
  const ImageBuffer one1(dims, 1, 1.0);
  check(bce_map(one1, one1) < 1e-6, "bce binary floor");
  int bce_ok = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    ImageBuffer a({16, 8}, 1);
    for (double& v : a.values()) v = rng.uniform();
    ImageBuffer b = a;
    for (double& v : b.values()) v = std::clamp(v + rng.uniform(-0.3, 0.3), 0.0, 1.0);
    bce_ok += bce_map(a, a) <= bce_map(b, a);
  }
  check(bce_ok == 1000, fmt("bce minimization %d/1000", bce_ok));

  const auto scenes = random_scenes(20, 8, TextureKind::Sinusoid);
  const PanoDims map_dims{256, 128};
  int discriminated = 0;
  for (const CuboidScene& scene : scenes) {
    const Translation t = sample_target(scene, DatasetSplit::Hard, rng);
    const CameraConfig cam{scene.camera.z};
    const auto src = room_junctions(scene, scene.camera);
    const TransformedLayout moved = transform_layout(project_layout(src, map_dims), t, cam);
    const auto dst = room_junctions(scene, scene.camera + t.as_point());
    const Layout truth = project_layout(dst, map_dims);
    Layout shifted = truth;
    for (LayoutCorner& c : shifted.corners) c.pixel.u = wrap_u(c.pixel.u + 10.0, map_dims.width);
    const LayoutMaps pred = rasterize_layout(moved.layout, moved.camera, map_dims);
    const LayoutMaps ref = rasterize_layout(truth, moved.camera, map_dims);
    const LayoutMaps off = rasterize_layout(shifted, moved.camera, map_dims);
    discriminated += layout_consistency(pred, ref) < layout_consistency(pred, off);
  }
  check(discriminated == 20, fmt("layout consistency %d/20", discriminated));

  std::string detail = "all examples hold, bce 1000/1000, layout 20/20";
  if (!failures.empty()) {
    detail = "failed:";
    for (const std::string& f : failures) detail += " [" + f + "]";
  }
  return {failures.empty(), detail};
}

Outcome reproducibility() {
  const fs::path root = fs::temp_directory_path() / "panowarp_acceptance_dataset";
  fs::remove_all(root);
  std::ostringstream sink;
  bool pass = true;
  std::string detail;
  int pairs = 0;
  for (const char* set : {"easy", "hard"}) {
    // Both runs use the same invocation; the first tree is moved aside before the second.
    const fs::path out = root / set / "out";
    const std::vector<std::string> args{"panowarp", "dataset", "--set",  set,      "--scenes",
                                        "3",        "--targets", "3",    "--seed", "21",
                                        "--size",   "128x64",  "--out", out.string()};
    if (cli::run(args, sink, sink) != 0) return {false, "dataset command failed"};
    fs::rename(out, root / set / "first");
    if (cli::run(args, sink, sink) != 0) return {false, "dataset command failed"};
    std::size_t files = 0;
    for (const auto& entry : fs::recursive_directory_iterator(root / set / "first")) {
      if (!entry.is_regular_file()) continue;
      const fs::path rel = fs::relative(entry.path(), root / set / "first");
      if (read_bytes(entry.path()) != read_bytes(out / rel)) pass = false;
      ++files;
    }
    if (files != 1 + 3 * 4 * 3) pass = false;
    const auto a = nlohmann::json::parse(read_bytes(out / "manifest.json"));
    const DistanceRange range = distance_range(parse_split(set));
    for (const auto& pair : a.at("pairs")) {
      const auto& t = pair.at("t");
      const double d = std::hypot(t[0].get<double>(), t[1].get<double>(), t[2].get<double>());
      if (d < range.min || d > range.max) pass = false;
      ++pairs;
    }
  }
  fs::remove_all(root);
  detail = fmt("%d pairs across easy and hard, %s", pairs,
               pass ? "byte-identical and within bounds" : "mismatch or out of bounds");
  return {pass, detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"coordinate round trips", coordinate_round_trips},
      {"identity warp", identity_warp},
      {"splat oracle equivalence", oracle_equivalence},
      {"geometric fidelity", geometric_fidelity},
      {"hole behavior", hole_behavior},
      {"layout oracle equality", layout_oracle_equality},
      {"metric correctness", metric_correctness},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failed += !outcome.pass;
    std::printf("[%s] %zu. %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
