// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "retmot/synth.hpp"

using namespace retmot;

namespace {

SceneSpec base_scene() {
  SceneSpec spec;
  spec.width = 128;
  spec.height = 128;
  spec.fov_deg = 32.0;
  spec.frame_rate_hz = 300.0;
  spec.n_frames = 60;
  spec.seed = 7;
  spec.background.mode = BackgroundSpec::Mode::uniform;
  spec.background.luminance = 1.0;
  return spec;
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("degree-to-pixel conversions") {
  SceneSpec spec = base_scene();
  CHECK(spec.px_per_deg() == doctest::Approx(4.0));
  CHECK(spec.deg_s_to_px_frame(150.0) == doctest::Approx(2.0));

  SceneSpec wide = base_scene();
  wide.width = 320;
  wide.height = 240;
  wide.fov_deg = 80.0;
  CHECK(wide.px_per_deg() == doctest::Approx(4.0));
}

TEST_CASE("identical specs render identical sequences") {
  SceneSpec spec = base_scene();
  spec.background.mode = BackgroundSpec::Mode::noise;
  spec.background.speed_deg_s = 75.0;
  TargetSpec t;
  t.path = TargetSpec::Path::random;
  t.speed_deg_s = 300.0;
  t.diameter_deg = 2.0;
  spec.targets.assign(3, t);

  SceneRenderer a(spec);
  SceneRenderer b(spec);
  for (int f = 0; f < spec.n_frames; f += 13) {
    const FrameBuffer fa = a.render(f);
    const FrameBuffer fb = b.render(f);
    for (std::size_t i = 0; i < fa.size(); ++i) CHECK(fa[i] == fb[i]);
    const auto ta = a.truth(f);
    const auto tb = b.truth(f);
    REQUIRE(ta.size() == tb.size());
    for (std::size_t i = 0; i < ta.size(); ++i) {
      CHECK(ta[i].x == tb[i].x);
      CHECK(ta[i].y == tb[i].y);
      CHECK(ta[i].direction == tb[i].direction);
    }
  }
}

TEST_CASE("every frame carries one truth row per target") {
  SceneSpec spec = base_scene();
  TargetSpec t;
  t.path = TargetSpec::Path::random;
  spec.targets.assign(5, t);
  SceneRenderer scene(spec);
  const auto rows = scene.all_truth();
  CHECK(rows.size() == static_cast<std::size_t>(5 * spec.n_frames));
  for (int f = 0; f < spec.n_frames; ++f) CHECK(scene.truth(f).size() == 5);
}

TEST_CASE("bounces only flip the velocity sign") {
  SceneSpec spec = base_scene();
  spec.n_frames = 200;
  TargetSpec t;
  t.path = TargetSpec::Path::linear;
  t.angle_deg = 0.0;
  t.speed_deg_s = 300.0;  // 4 px/frame
  t.diameter_deg = 2.0;
  t.start_x_px = 100.0;
  t.start_y_px = 64.0;
  spec.targets.push_back(t);
  SceneRenderer scene(spec);

  bool bounced = false;
  double speed0 = -1.0;
  for (int f = 1; f < spec.n_frames; ++f) {
    const auto prev = scene.truth(f - 1)[0];
    const auto now = scene.truth(f)[0];
    const double step = std::hypot(now.x - prev.x, now.y - prev.y);
    if (speed0 < 0.0) speed0 = step;
    CHECK(step == doctest::Approx(speed0).epsilon(1e-9));
    if (std::cos(now.direction) * std::cos(prev.direction) < 0.0)
      bounced = true;
    // Center stays inside the frame.
    CHECK(now.x >= 0.0);
    CHECK(now.x <= spec.width - 1.0);
  }
  CHECK(bounced);
}

TEST_CASE("five random targets stay inside the frame for a long run") {
  SceneSpec spec = base_scene();
  spec.n_frames = 180;
  spec.seed = 11;
  TargetSpec t;
  t.path = TargetSpec::Path::random;
  t.speed_deg_s = 300.0;
  t.diameter_deg = 2.0;
  spec.targets.assign(5, t);
  SceneRenderer scene(spec);
  for (int f = 0; f < spec.n_frames; ++f)
    for (const auto& row : scene.truth(f)) {
      CHECK(row.x >= 0.0);
      CHECK(row.x <= spec.width - 1.0);
      CHECK(row.y >= 0.0);
      CHECK(row.y <= spec.height - 1.0);
    }
}

TEST_CASE("a static scene repeats frames exactly") {
  SceneSpec spec = base_scene();
  spec.background.mode = BackgroundSpec::Mode::noise;
  spec.background.speed_deg_s = 0.0;
  TargetSpec t;
  t.speed_deg_s = 0.0;
  t.start_x_px = 50.0;
  t.start_y_px = 50.0;
  spec.targets.push_back(t);
  SceneRenderer scene(spec);
  const FrameBuffer first = scene.render(0);
  const FrameBuffer later = scene.render(17);
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(first[i] == later[i]);
}

TEST_CASE("rendered dot covers about its disc area") {
  SceneSpec spec = base_scene();
  TargetSpec t;
  t.diameter_deg = 1.0;  // radius 2 px
  t.luminance = 0.0;
  t.speed_deg_s = 0.0;
  t.start_x_px = 64.0;
  t.start_y_px = 64.0;
  spec.targets.push_back(t);
  SceneRenderer scene(spec);
  const FrameBuffer img = scene.render(0);
  int below = 0;
  double sx = 0.0, sy = 0.0, weight = 0.0;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      if (img.at(x, y) < 255.0) {
        ++below;
        const double w = 255.0 - img.at(x, y);
        sx += w * x;
        sy += w * y;
        weight += w;
      }
  const double area = std::numbers::pi * 4.0;  // pi r^2
  CHECK(below >= static_cast<int>(area) - 9);
  CHECK(below <= static_cast<int>(area) + 16);
  CHECK(sx / weight == doctest::Approx(64.0).epsilon(1e-6));
  CHECK(sy / weight == doctest::Approx(64.0).epsilon(1e-6));
}

TEST_CASE("orbit truth direction is the tangent") {
  SceneSpec spec = base_scene();
  spec.n_frames = 100;
  TargetSpec t;
  t.path = TargetSpec::Path::circular;
  t.orbit_radius_deg = 10.0;
  t.speed_deg_s = 150.0;
  spec.targets.push_back(t);
  SceneRenderer scene(spec);

  for (int f = 1; f < spec.n_frames - 1; ++f) {
    const auto prev = scene.truth(f - 1)[0];
    const auto now = scene.truth(f)[0];
    const auto next = scene.truth(f + 1)[0];
    // Central-difference heading vs the recorded tangent.
    const double heading =
        std::atan2(next.y - prev.y, next.x - prev.x);
    const double diff =
        std::remainder(heading - now.direction, 2.0 * std::numbers::pi);
    CHECK(std::abs(diff) < 0.06);
  }
}

TEST_CASE("background scroll shifts columns with wraparound") {
  SceneSpec spec = base_scene();
  spec.background.mode = BackgroundSpec::Mode::noise;
  spec.background.speed_deg_s = 75.0;  // exactly 1 px/frame at 4 px/deg
  SceneRenderer scene(spec);
  const FrameBuffer f0 = scene.render(0);
  const FrameBuffer f1 = scene.render(1);
  for (int y = 0; y < spec.height; ++y)
    for (int x = 1; x < spec.width; ++x)
      CHECK(f1.at(x, y) == doctest::Approx(f0.at(x - 1, y)).epsilon(1e-12));
  // Column zero wraps around from the right edge.
  for (int y = 0; y < spec.height; ++y)
    CHECK(f1.at(0, y) == doctest::Approx(f0.at(spec.width - 1, y)).epsilon(1e-12));
}

TEST_CASE("bad scene parameters are rejected") {
  SceneSpec spec = base_scene();
  spec.fov_deg = 0.0;
  CHECK_THROWS_AS(SceneRenderer{spec}, std::invalid_argument);
  spec = base_scene();
  TargetSpec t;
  t.diameter_deg = 40.0;
  spec.targets.push_back(t);
  CHECK_THROWS_AS(SceneRenderer{spec}, std::invalid_argument);
}

}  // TEST_SUITE
