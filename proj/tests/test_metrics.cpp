// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "retmot/metrics.hpp"

using namespace retmot;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("retmot_metrics_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

// In-memory frame source over a rendered scene.
class SceneSource : public FrameSource {
public:
  explicit SceneSource(const SceneRenderer& scene) : scene_(scene) {}
  void reset() override { index_ = 0; }
  std::optional<FrameBuffer> next() override {
    if (index_ >= scene_.n_frames()) return std::nullopt;
    return scene_.render(index_++);
  }
  int count() const override { return scene_.n_frames(); }

private:
  const SceneRenderer& scene_;
  int index_ = 0;
};

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("weber contrast of canonical patterns") {
  FrameBuffer black(64, 64, 0.0);
  // Bright target on black ground.
  for (int y = 28; y <= 36; ++y)
    for (int x = 28; x <= 36; ++x)
      if (std::hypot(x - 32.0, y - 32.0) <= 4.0) black.at(x, y) = 255.0;
  CHECK(weber_contrast(black, 32.0, 32.0, 8.0) == doctest::Approx(1.0));

  const FrameBuffer flat(64, 64, 80.0);
  CHECK(weber_contrast(flat, 32.0, 32.0, 8.0) == doctest::Approx(0.0));

  FrameBuffer mid(64, 64, 51.0);
  for (int y = 28; y <= 36; ++y)
    for (int x = 28; x <= 36; ++x)
      if (std::hypot(x - 32.0, y - 32.0) <= 4.0) mid.at(x, y) = 255.0;
  CHECK(weber_contrast(mid, 32.0, 32.0, 8.0) == doctest::Approx(0.8));

  CHECK_THROWS(weber_contrast(flat, 2.0, 2.0, 8.0));
}

TEST_CASE("rate arithmetic") {
  const RocPoint p = tally_to_point(0.5, 5, 10, 900, 180);
  CHECK(p.tpr == doctest::Approx(0.5));
  CHECK(p.fpr == doctest::Approx(5.0));
  CHECK_THROWS(tally_to_point(0.5, 0, 0, 0, 10));
}

TEST_CASE("interpolated rate at a fixed false-positive level") {
  std::vector<RocPoint> curve;
  curve.push_back(tally_to_point(0.9, 10, 100, 0, 10));    // fpr 0.0, tpr 0.1
  curve.push_back(tally_to_point(0.5, 50, 100, 40, 10));   // fpr 4.0, tpr 0.5
  curve.push_back(tally_to_point(0.1, 90, 100, 80, 10));   // fpr 8.0, tpr 0.9
  CHECK(tpr_at_fpr(curve, 4.0) == doctest::Approx(0.5));
  CHECK(tpr_at_fpr(curve, 6.0) == doctest::Approx(0.7));
  CHECK(tpr_at_fpr(curve, 100.0) == doctest::Approx(0.9));  // clamped
  CHECK(tpr_at_fpr(curve, -1.0) == doctest::Approx(0.1));   // clamped
}

TEST_CASE("detection and truth tables round trip through CSV") {
  TempDir dir;
  std::vector<Detection> dets(2);
  dets[0].frame_index = 3;
  dets[0].x = 1.25;
  dets[0].y = 2.5;
  dets[0].direction = 0.7853981633974483;
  dets[0].energy = 42.0;
  dets[0].n_points = 9;
  dets[1].frame_index = 4;
  dets[1].x = 100.0;
  dets[1].y = 90.0;
  dets[1].direction = -2.0;
  dets[1].energy = 1.5;
  dets[1].n_points = 2;
  write_detections_csv(dir.file("dets.csv"), dets);
  const auto back = read_detections_csv(dir.file("dets.csv"));
  REQUIRE(back.size() == 2);
  CHECK(back[0].x == dets[0].x);
  CHECK(back[0].direction == dets[0].direction);
  CHECK(back[1].n_points == 2);

  std::vector<TruthRecord> truth = {{0, 0, 10.0, 20.0, 8.0, 0.5},
                                    {0, 1, 40.0, 50.0, 8.0, -0.5},
                                    {1, 0, 11.0, 21.0, 8.0, 0.5}};
  write_truth_csv(dir.file("truth.csv"), truth);
  const TruthTable table = read_truth_csv(dir.file("truth.csv"));
  REQUIRE(table.size() == 2);
  CHECK(table.at(0).size() == 2);
  CHECK(table.at(1).size() == 1);
  CHECK(table.at(0)[1].x == 40.0);
}

TEST_CASE("json detections mirror the CSV") {
  TempDir dir;
  std::vector<Detection> dets(1);
  dets[0].frame_index = 1;
  dets[0].x = 3.0;
  write_detections_json(dir.file("dets.json"), dets);
  std::ifstream in(dir.file("dets.json"));
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("\"frame\": 1") != std::string::npos);
  CHECK(text.find("\"x\": 3.0") != std::string::npos);
}

TEST_CASE("threshold sweep matches a standalone run at the same threshold") {
  SceneSpec spec;
  spec.width = 64;
  spec.height = 64;
  spec.n_frames = 25;
  spec.seed = 3;
  spec.background.mode = BackgroundSpec::Mode::uniform;
  spec.background.luminance = 1.0;
  TargetSpec t;
  t.diameter_deg = 2.0;
  t.speed_deg_s = 300.0;
  t.path = TargetSpec::Path::linear;
  t.angle_deg = 30.0;
  spec.targets.push_back(t);
  SceneRenderer scene(spec);
  SceneSource source(scene);
  const TruthTable truth = truth_table_from_records(scene.all_truth());

  RunConfig cfg;
  cfg.fov_deg = spec.fov_deg;

  const auto sweep = roc_sweep(source, truth, cfg, {0.2, 0.5, 0.8}, true);
  REQUIRE(sweep.size() == 3);
  const auto solo = roc_sweep(source, truth, cfg, {0.5}, true);
  REQUIRE(solo.size() == 1);
  CHECK(solo[0].tpr == sweep[1].tpr);
  CHECK(solo[0].fpr == sweep[1].fpr);
  CHECK(solo[0].true_detections == sweep[1].true_detections);

  // Lower thresholds keep at least as many candidate pixels, and the
  // detection count reflects it.
  CHECK(sweep[0].true_detections + sweep[0].false_positives >=
        sweep[2].true_detections + sweep[2].false_positives);

  TempDir dir;
  write_roc_csv(dir.file("roc.csv"), sweep, cfg);
  std::ifstream in(dir.file("roc.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# config_hash=", 0) == 0);
}

TEST_CASE("default threshold grid spans both decades") {
  const auto grid = default_gamma_grid();
  REQUIRE(grid.size() == 18);
  CHECK(grid.front() == doctest::Approx(0.01));
  CHECK(grid[8] == doctest::Approx(0.09));
  CHECK(grid[9] == doctest::Approx(0.1));
  CHECK(grid.back() == doctest::Approx(0.9));
}

}  // TEST_SUITE
