// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_SYNTH_HPP_
#define RETMOT_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "retmot/frame.hpp"

namespace retmot {

struct TargetSpec {
  enum class Path { linear, circular, random };

  double diameter_deg = 1.0;
  double luminance = 0.0;  // 0..1, rendered as 255 * luminance
  double speed_deg_s = 150.0;
  Path path = Path::linear;
  double angle_deg = 0.0;         // linear heading
  double orbit_radius_deg = 10.0; // circular
  double start_x_px = -1.0;       // negative -> centered (linear/circular)
  double start_y_px = -1.0;       //   or seeded random (random path)
};

struct BackgroundSpec {
  enum class Mode { uniform, noise, image };

  Mode mode = Mode::uniform;
  double luminance = 1.0;    // uniform level, 0..1
  double speed_deg_s = 0.0;  // horizontal scroll, left to right
  int noise_cell_px = 16;    // base lattice spacing of the value noise
  int noise_octaves = 3;
  double noise_speckle = 0.10;  // fraction of the field covered by small
                                // high-contrast patches; 0 keeps it smooth
  double noise_lo = 0.0;   // luminance range; the rolling base stays in the
  double noise_hi = 0.85;  // dark lower part, speckles span the full range
  std::string image_path;  // tiled user texture
};

struct SceneSpec {
  int width = 128;
  int height = 128;
  double fov_deg = 32.0;
  double frame_rate_hz = 300.0;
  int n_frames = 180;
  std::uint64_t seed = 1;
  BackgroundSpec background;
  std::vector<TargetSpec> targets;

  double px_per_deg() const { return width / fov_deg; }
  double deg_s_to_px_frame(double deg_s) const {
    return deg_s * px_per_deg() / frame_rate_hz;
  }
};

struct TruthRecord {
  int frame = 0;
  int target_id = 0;
  double x = 0.0;  // center, pixels
  double y = 0.0;
  double d_px = 0.0;
  double direction = 0.0;  // heading, radians, atan2 convention
};

/// Deterministic scene renderer. All kinematics (bounces included) are
/// resolved at construction, so frames can be fetched in any order.
class SceneRenderer {
public:
  explicit SceneRenderer(SceneSpec spec);

  const SceneSpec& spec() const { return spec_; }
  int n_frames() const { return spec_.n_frames; }

  FrameBuffer render(int frame) const;
  std::vector<TruthRecord> truth(int frame) const;
  std::vector<TruthRecord> all_truth() const;

private:
  struct Pose {
    double x, y;       // center px
    double vx, vy;     // px/frame
    double direction;  // radians
  };

  void simulate();
  FrameBuffer render_background(int frame) const;

  SceneSpec spec_;
  FrameBuffer noise_tile_;  // horizontally seamless texture
  std::vector<std::vector<Pose>> poses_;  // [frame][target]
};

}  // namespace retmot

#endif  // RETMOT_SYNTH_HPP_
