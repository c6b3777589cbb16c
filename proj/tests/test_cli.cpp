// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "panowarp/cli.hpp"
#include "panowarp/imaging.hpp"
#include "panowarp/layout_io.hpp"
#include "test_support.hpp"

namespace panowarp {
namespace {

using nlohmann::json;
using testing::TempDir;
namespace fs = std::filesystem;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "panowarp");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json read_json_file(const fs::path& path) { return json::parse(testing::read_bytes(path)); }

void render_room(const TempDir& tmp, const std::string& name, const std::string& camera,
                 const std::string& size = "128x64") {
  const RunResult r = run_cli({"render", "--room", "4x4x3", "--camera", camera, "--size", size,
                               "--out", tmp.path().string(), "--name", name});
  ASSERT_EQ(r.code, 0) << r.err;
}

TEST(CliRender, WritesViewFiles) {
  TempDir tmp;
  render_room(tmp, "view", "0,0,1.5");
  EXPECT_TRUE(fs::exists(tmp / "view.png"));
  EXPECT_TRUE(fs::exists(tmp / "view.depth.png"));
  const json layout = read_json_file(tmp / "view.layout.json");
  EXPECT_EQ(layout.at("corners").size(), 8u);
  EXPECT_TRUE(layout.contains("version"));
}

TEST(CliRender, CameraOutsideIsValidationError) {
  TempDir tmp;
  const RunResult r = run_cli({"render", "--room", "4x4x3", "--camera", "3,0,1.5", "--out",
                               tmp.path().string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("inside"), std::string::npos);
}

TEST(CliRender, UnwritableOutputIsIoError) {
  TempDir tmp;
  std::ofstream(tmp / "blocker") << "x";
  const RunResult r = run_cli({"render", "--room", "4x4x3", "--camera", "0,0,1.5", "--size", "64x32", "--out",
                               (tmp / "blocker" / "sub").string()});
  EXPECT_EQ(r.code, 3);
}

TEST(CliRender, MissingRequiredOption) {
  EXPECT_EQ(run_cli({"render", "--room", "4x4x3"}).code, 2);
  EXPECT_EQ(run_cli({"no-such-command"}).code, 2);
  EXPECT_EQ(run_cli({"render", "--room", "4x4", "--out", "x"}).code, 2);
}

TEST(CliWarp, ZeroTranslationHasNoHoles) {
  TempDir tmp;
  render_room(tmp, "src", "0,0,1.5");
  const RunResult r = run_cli({"warp", "--rgb", (tmp / "src.png").string(), "--depth",
                               (tmp / "src.depth.png").string(), "--t", "0,0,0", "--out",
                               (tmp / "w").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json stats = read_json_file(tmp / "w" / "stats.json");
  EXPECT_EQ(stats.at("missing_rate"), 0.0);
  EXPECT_EQ(stats.at("invocation").at("command"), "warp");
  for (const char* f : {"warped.png", "weights.png", "holes.png"}) {
    EXPECT_TRUE(fs::exists(tmp / "w" / f)) << f;
  }
}

TEST(CliWarp, UpsamplingReducesMissingRate) {
  TempDir tmp;
  render_room(tmp, "src", "0,0,1.5");
  double rates[2] = {0, 0};
  for (int factor : {1, 2}) {
    const fs::path out = tmp / ("w" + std::to_string(factor));
    const RunResult r = run_cli({"warp", "--rgb", (tmp / "src.png").string(), "--depth",
                                 (tmp / "src.depth.png").string(), "--t", "0.8,0.3,0",
                                 "--upsample", std::to_string(factor), "--single-thread", "--out",
                                 out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    rates[factor - 1] = read_json_file(out / "stats.json").at("missing_rate");
  }
  EXPECT_GT(rates[0], 0.0);
  EXPECT_LE(rates[1], rates[0]);
}

TEST(CliWarp, MismatchedInputs) {
  TempDir tmp;
  render_room(tmp, "a", "0,0,1.5", "128x64");
  render_room(tmp, "b", "0,0,1.5", "64x32");
  EXPECT_EQ(run_cli({"warp", "--rgb", (tmp / "a.png").string(), "--depth",
                     (tmp / "b.depth.png").string(), "--t", "0.1,0,0", "--out",
                     (tmp / "w").string()})
                .code,
            2);
  EXPECT_EQ(run_cli({"warp", "--rgb", (tmp / "missing.png").string(), "--depth",
                     (tmp / "b.depth.png").string(), "--t", "0.1,0,0", "--out",
                     (tmp / "w").string()})
                .code,
            3);
  EXPECT_EQ(run_cli({"warp", "--rgb", (tmp / "a.png").string(), "--depth",
                     (tmp / "a.depth.png").string(), "--t", "0.1,0", "--out",
                     (tmp / "w").string()})
                .code,
            2);
}

TEST(CliLayoutWarp, ZeroTranslationRoundTrip) {
  TempDir tmp;
  render_room(tmp, "v", "0.4,-0.3,1.5");
  const RunResult r = run_cli({"layout-warp", "--layout", (tmp / "v.layout.json").string(), "--t",
                               "0,0,0", "--out", (tmp / "moved.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const LayoutDocument a = load_layout(tmp / "v.layout.json");
  const LayoutDocument b = load_layout(tmp / "moved.json");
  ASSERT_EQ(a.layout.corners.size(), b.layout.corners.size());
  for (std::size_t i = 0; i < a.layout.corners.size(); ++i) {
    EXPECT_NEAR(a.layout.corners[i].pixel.u, b.layout.corners[i].pixel.u, 1e-9);
    EXPECT_NEAR(a.layout.corners[i].pixel.v, b.layout.corners[i].pixel.v, 1e-9);
  }
}

TEST(CliLayoutWarp, MatchesRenderAtTarget) {
  TempDir tmp;
  render_room(tmp, "src", "0,0,1.5", "512x256");
  render_room(tmp, "dst", "0.5,0.25,1.5", "512x256");
  ASSERT_EQ(run_cli({"layout-warp", "--layout", (tmp / "src.layout.json").string(), "--t",
                     "0.5,0.25,0", "--out", (tmp / "moved.json").string()})
                .code,
            0);
  const LayoutDocument moved = load_layout(tmp / "moved.json");
  const LayoutDocument truth = load_layout(tmp / "dst.layout.json");
  ASSERT_EQ(moved.layout.corners.size(), truth.layout.corners.size());
  for (std::size_t i = 0; i < moved.layout.corners.size(); ++i) {
    EXPECT_NEAR(moved.layout.corners[i].pixel.u, truth.layout.corners[i].pixel.u, 1e-6);
    EXPECT_NEAR(moved.layout.corners[i].pixel.v, truth.layout.corners[i].pixel.v, 1e-6);
  }
}

TEST(CliLayoutWarp, Errors) {
  TempDir tmp;
  std::ofstream(tmp / "bad.json") << "{ not json";
  EXPECT_EQ(run_cli({"layout-warp", "--layout", (tmp / "bad.json").string(), "--t", "0,0,0",
                     "--out", (tmp / "o.json").string()})
                .code,
            2);
  render_room(tmp, "v", "0,0,1.5");
  EXPECT_EQ(run_cli({"layout-warp", "--layout", (tmp / "v.layout.json").string(), "--t", "5,0,0",
                     "--out", (tmp / "o.json").string()})
                .code,
            2);
}

TEST(CliRasterize, WritesMaps) {
  TempDir tmp;
  render_room(tmp, "v", "0,0,1.5");
  const RunResult r = run_cli({"rasterize", "--layout", (tmp / "v.layout.json").string(),
                               "--size", "256x128", "--out", (tmp / "maps").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const ImageBuffer boundary = load_rgb(tmp / "maps" / "boundary.png");
  EXPECT_EQ(boundary.dims(), (PanoDims{256, 128}));
  EXPECT_TRUE(fs::exists(tmp / "maps" / "corner.png"));
}

TEST(CliDataset, SameSeedSameManifest) {
  TempDir tmp;
  const std::vector<std::string> args{"dataset", "--set", "easy", "--scenes", "2", "--targets",
                                      "2", "--seed", "7", "--size", "64x32", "--out",
                                      (tmp / "out").string()};
  ASSERT_EQ(run_cli(args).code, 0);
  fs::rename(tmp / "out", tmp / "first");
  ASSERT_EQ(run_cli(args).code, 0);
  EXPECT_EQ(testing::read_bytes(tmp / "first" / "manifest.json"),
            testing::read_bytes(tmp / "out" / "manifest.json"));
  EXPECT_EQ(testing::read_bytes(tmp / "first" / "scene_001" / "target_1.png"),
            testing::read_bytes(tmp / "out" / "scene_001" / "target_1.png"));
  const json manifest = read_json_file(tmp / "out" / "manifest.json");
  EXPECT_EQ(manifest.at("pairs").size(), 4u);
  EXPECT_EQ(manifest.at("invocation").at("command"), "dataset");
  EXPECT_EQ(run_cli({"dataset", "--set", "medium", "--out", (tmp / "c").string()}).code, 2);
}

TEST(CliEval, IdenticalImagesAndMetricSelection) {
  TempDir tmp;
  render_room(tmp, "v", "0,0,1.5");
  const std::string png = (tmp / "v.png").string();
  const RunResult r = run_cli({"eval", "--pred", png, "--gt", png, "--metrics",
                               "psnr,ssim,l1,lpips", "--out", (tmp / "r.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json report = read_json_file(tmp / "r.json");
  const json& results = report.at("results");
  ASSERT_EQ(results.size(), 4u);
  EXPECT_EQ(results[0].at("value"), 99.0);
  EXPECT_DOUBLE_EQ(results[1].at("value").get<double>(), 1.0);
  EXPECT_EQ(results[2].at("value"), 0.0);
  EXPECT_EQ(results[3].at("value"), "n/a");
  EXPECT_EQ(run_cli({"eval", "--pred", png, "--gt", png, "--metrics", "fid", "--out",
                     (tmp / "r.json").string()})
                .code,
            2);
}

TEST(CliEval, HoleMaskExcludesPixels) {
  TempDir tmp;
  render_room(tmp, "src", "0,0,1.5");
  render_room(tmp, "dst", "0.6,0,1.5");
  ASSERT_EQ(run_cli({"warp", "--rgb", (tmp / "src.png").string(), "--depth",
                     (tmp / "src.depth.png").string(), "--t", "0.6,0,0", "--upsample", "1",
                     "--out", (tmp / "w").string()})
                .code,
            0);
  const RunResult r = run_cli({"eval", "--pred", (tmp / "w" / "warped.png").string(), "--gt",
                               (tmp / "dst.png").string(), "--holes",
                               (tmp / "w" / "holes.png").string(), "--metrics", "psnr", "--out",
                               (tmp / "r.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json psnr = read_json_file(tmp / "r.json").at("results").at(0);
  const double rate = read_json_file(tmp / "w" / "stats.json").at("missing_rate");
  EXPECT_NEAR(psnr.at("mask_coverage").get<double>(), 1.0 - rate, 1e-12);
  EXPECT_EQ(run_cli({"eval", "--pred", (tmp / "src.png").string(), "--gt",
                     (tmp / "dst.png").string(), "--holes", (tmp / "w" / "holes.png").string(),
                     "--mask", (tmp / "w" / "holes.png").string(), "--out",
                     (tmp / "r.json").string()})
                .code,
            2);
}

TEST(CliHoles, CurveIsNonDecreasing) {
  TempDir tmp;
  const RunResult r = run_cli({"holes", "--size", "128x64", "--distances", "0.25,0.5,1.0",
                               "--trials", "4", "--out", (tmp / "c.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json curve = read_json_file(tmp / "c.json").at("curve");
  ASSERT_EQ(curve.size(), 3u);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    EXPECT_GE(curve[i].at("mean").get<double>(), curve[i - 1].at("mean").get<double>());
  }
}

TEST(CliBinary, HelpAndExitCodes) {
  const std::string bin = PANOWARP_BIN;
  EXPECT_EQ(std::system((bin + " --help > /dev/null").c_str()), 0);
  const int status = std::system((bin + " render --room 4x4x3 --camera 9,0,1 --out /tmp 2> /dev/null").c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 2);
}

}  // namespace
}  // namespace panowarp
