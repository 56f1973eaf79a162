// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "retmot/pipeline.hpp"
#include "retmot/synth.hpp"

using namespace retmot;

namespace {

RunConfig tight_config() {
  RunConfig cfg;
  cfg.spatial.cs_size = 15;
  cfg.spatial.cs_sigma = 1.2;
  return cfg;
}

SceneSpec moving_dot_scene(int n_frames) {
  SceneSpec spec;
  spec.width = 64;
  spec.height = 64;
  spec.fov_deg = 16.0;  // keeps 4 px/deg on the small field
  spec.n_frames = n_frames;
  spec.background.mode = BackgroundSpec::Mode::uniform;
  spec.background.luminance = 1.0;
  TargetSpec t;
  t.diameter_deg = 2.0;
  t.speed_deg_s = 300.0;
  t.path = TargetSpec::Path::linear;
  t.angle_deg = 20.0;
  t.start_x_px = 16.0;
  t.start_y_px = 28.0;
  spec.targets.push_back(t);
  return spec;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("a frozen scene decays to silence") {
  const RunConfig cfg = tight_config();
  SceneRenderer scene{moving_dot_scene(20)};
  Pipeline pipe(cfg, 64, 64);

  double peak = 0.0;
  for (int f = 0; f < 20; ++f) {
    const Activations act = pipe.step(scene.render(f));
    for (int k = 0; k < kNumOrientations; ++k)
      peak = std::max(peak, act.energy.combined[k].max());
  }
  REQUIRE(peak > 0.0);

  // Hold the last frame: luminance change dies, then the cascades drain.
  const FrameBuffer frozen = scene.render(19);
  double residual = 0.0;
  for (int f = 0; f < 60; ++f) {
    const Activations act = pipe.step(frozen);
    if (f < 59) continue;
    for (int k = 0; k < kNumOrientations; ++k)
      residual = std::max({residual,
                           std::abs(act.energy.combined[k].max()),
                           std::abs(act.energy.combined[k].min())});
    residual = std::max(residual, act.base.v.max());
  }
  CHECK(residual <= 1e-9 * peak);
}

TEST_CASE("two pipeline instances agree frame by frame") {
  const RunConfig cfg = tight_config();
  SceneRenderer scene{moving_dot_scene(12)};
  Pipeline a(cfg, 64, 64);
  Pipeline b(cfg, 64, 64);
  for (int f = 0; f < 12; ++f) {
    const FrameBuffer frame = scene.render(f);
    const Activations aa = a.step(frame);
    const Activations bb = b.step(frame);
    for (std::size_t i = 0; i < aa.base.v.size(); ++i)
      CHECK(aa.base.v[i] == bb.base.v[i]);
    const FrameDetections da = a.detect(aa, 0.4, true);
    const FrameDetections db = b.detect(bb, 0.4, true);
    REQUIRE(da.detections.size() == db.detections.size());
    for (std::size_t i = 0; i < da.detections.size(); ++i) {
      CHECK(da.detections[i].x == db.detections[i].x);
      CHECK(da.detections[i].direction == db.detections[i].direction);
    }
  }
}

TEST_CASE("doubling the luminance deltas scales energy fourfold, direction fixed") {
  const RunConfig cfg = tight_config();
  SceneRenderer scene{moving_dot_scene(14)};
  Pipeline one(cfg, 64, 64);
  Pipeline two(cfg, 64, 64);
  for (int f = 0; f < 14; ++f) {
    FrameBuffer frame = scene.render(f);
    FrameBuffer scaled(64, 64);
    // Exact power-of-two scaling of deltas about a fixed pedestal.
    for (std::size_t i = 0; i < frame.size(); ++i)
      scaled[i] = 2.0 * (frame[i] - 255.0) + 255.0;
    const Activations a = one.step(frame);
    const Activations b = two.step(scaled);
    if (f < 6) continue;  // let both settle
    for (int k = 0; k < kNumOrientations; ++k)
      for (std::size_t i = 0; i < a.energy.combined[k].size(); ++i)
        CHECK(b.energy.combined[k][i] == 4.0 * a.energy.combined[k][i]);
    for (std::size_t i = 0; i < a.energy.direction.size(); ++i)
      CHECK(b.energy.direction[i] == a.energy.direction[i]);
  }
}

TEST_CASE("opposite orientations carry negated energy planes") {
  const RunConfig cfg = tight_config();
  SceneRenderer scene{moving_dot_scene(10)};
  Pipeline pipe(cfg, 64, 64);
  const KernelBank& bank = pipe.bank();
  for (int f = 0; f < 10; ++f) {
    const Activations act = pipe.step(scene.render(f));
    for (int k = 0; k < kNumOrientations / 2; ++k) {
      const int opp = k + kNumOrientations / 2;
      for (std::size_t i = 0; i < act.energy.on[k].size(); ++i) {
        CHECK(act.energy.on[opp][i] == -act.energy.on[k][i]);
        CHECK(act.energy.off[opp][i] == -act.energy.off[k][i]);
      }
    }
  }
  // And the shortcut agrees with filtering through the opposite kernels.
  FrameBuffer probe(64, 64, 0.0);
  probe.at(30, 30) = 5.0;
  probe.at(33, 31) = -2.0;
  const SacSlice direct = sac_filter(probe, probe, bank, 5);
  const SacSlice base = sac_filter(probe, probe, bank, 1);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    CHECK(direct.a_slow[i] == doctest::Approx(base.a_slow[i]).epsilon(1e-12));
    CHECK(direct.b_slow[i] == doctest::Approx(-base.b_slow[i]).epsilon(1e-12));
  }
}

TEST_CASE("detection respects the inhibition wiring") {
  const RunConfig cfg = tight_config();
  SceneRenderer scene{moving_dot_scene(16)};
  Pipeline pipe(cfg, 64, 64);
  for (int f = 0; f < 16; ++f) {
    const Activations act = pipe.step(scene.render(f));
    const FrameDetections with = pipe.detect(act, 0.4, true);
    const FrameDetections without = pipe.detect(act, 0.4, false);
    // One small target can never crowd an octant past the threshold, so
    // both paths see the same field.
    CHECK(with.inhibited.empty());
    REQUIRE(with.detections.size() == without.detections.size());
    for (std::size_t i = 0; i < with.detections.size(); ++i)
      CHECK(with.detections[i].x == without.detections[i].x);
    for (std::size_t i = 0; i < with.field.v.size(); ++i)
      CHECK(with.field.v[i] == act.base.v[i]);
  }
}

TEST_CASE("the detected cluster rides the moving target") {
  const RunConfig cfg = tight_config();
  SceneSpec spec = moving_dot_scene(40);
  SceneRenderer scene(spec);
  Pipeline pipe(cfg, 64, 64);
  int hits = 0, frames = 0;
  for (int f = 0; f < spec.n_frames; ++f) {
    const Activations act = pipe.step(scene.render(f));
    if (f < 12) continue;
    ++frames;
    const FrameDetections det = pipe.detect(act, 0.5, true);
    if (det.detections.empty()) continue;
    const auto truth = scene.truth(f)[0];
    double best = 1e9;
    for (const auto& d : det.detections)
      best = std::min(best, std::hypot(d.x - truth.x, d.y - truth.y));
    if (best <= 8.0) ++hits;
  }
  CHECK(frames > 0);
  CHECK(hits >= frames * 8 / 10);
}

}  // TEST_SUITE

TEST_SUITE("pipeline") {

TEST_CASE("mirrored motion flips the sign of the axial energy") {
  const RunConfig cfg = tight_config();
  SceneSpec right = moving_dot_scene(30);
  right.targets[0].angle_deg = 0.0;
  right.targets[0].speed_deg_s = 150.0;  // half a carrier wavelength per frame
  right.targets[0].start_x_px = 14.0;
  right.targets[0].start_y_px = 32.0;
  SceneSpec left = right;
  left.targets[0].angle_deg = 180.0;
  left.targets[0].start_x_px = 50.0;

  SceneRenderer scene_r(right);
  SceneRenderer scene_l(left);
  Pipeline pr(cfg, 64, 64);
  Pipeline pl(cfg, 64, 64);
  double sum_r = 0.0, sum_l = 0.0;
  for (int f = 0; f < 30; ++f) {
    const Activations ar = pr.step(scene_r.render(f));
    const Activations al = pl.step(scene_l.render(f));
    if (f < 10) continue;
    // Accumulate the axial energy around each target's true position.
    const auto tr = scene_r.truth(f)[0];
    const auto tl = scene_l.truth(f)[0];
    for (int dy = -6; dy <= 6; ++dy)
      for (int dx = -6; dx <= 6; ++dx) {
        const int xr = static_cast<int>(tr.x) + dx, yr = static_cast<int>(tr.y) + dy;
        const int xl = static_cast<int>(tl.x) + dx, yl = static_cast<int>(tl.y) + dy;
        if (xr >= 0 && xr < 64 && yr >= 0 && yr < 64)
          sum_r += ar.energy.combined[0].at(xr, yr);
        if (xl >= 0 && xl < 64 && yl >= 0 && yl < 64)
          sum_l += al.energy.combined[0].at(xl, yl);
      }
  }
  CHECK(sum_r > 0.0);
  CHECK(sum_l < 0.0);
  // Reversal negates the response up to rasterization differences.
  CHECK(std::abs(sum_l) == doctest::Approx(std::abs(sum_r)).epsilon(0.5));
}

}  // TEST_SUITE
