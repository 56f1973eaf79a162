// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_CONFIG_HPP_
#define RETMOT_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "retmot/detector.hpp"
#include "retmot/ganglion.hpp"
#include "retmot/spatial.hpp"
#include "retmot/synth.hpp"
#include "retmot/temporal.hpp"

namespace retmot {

struct FrontendParams {
  int history_depth = 5;  // N_p
  double decay_shape = 1.0;  // u in 1/(1+e^(u*i))
  double dog_gain = 1.0;
  double dog_sigma1 = 1.0;
  double dog_sigma2 = 2.0;
  int dog_size = 13;
  bool dog_balanced = true;  // zero-DC bandpass (see dog_kernel_balanced)
};

/// Match radius rule: coeff * d + offset_deg, with d the truth extent in
/// pixels and the offset converted through the scene's pixel scale.
struct MatchRule {
  double coeff = 0.5;
  double offset_deg = 1.0;

  double radius_px(double d_px, double px_per_deg) const {
    return coeff * d_px + offset_deg * px_per_deg;
  }
};

MatchRule parse_match_rule(const std::string& text);  // e.g. "0.5d+1"

/// Full parameter set for a pipeline run. File format: key = value lines
/// under [section] headers; unknown sections or keys are errors.
struct RunConfig {
  FrontendParams frontend;
  CascadeParams temporal;
  SpatialParams spatial;
  GanglionParams ganglion;
  ClusterConfig detector;
  MatchRule match;
  double fov_deg = 32.0;
  double frame_rate_hz = 300.0;
  bool inhibition = true;

  static RunConfig from_file(const std::string& path);
  void apply(const std::string& section, const std::string& key,
             const std::string& value);

  double px_per_deg(int width) const { return width / fov_deg; }

  /// Canonical key=value dump (stable order) and its FNV-1a hash, used to
  /// stamp report files.
  std::string canonical() const;
  std::uint64_t hash() const;
};

struct KvEntry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

/// Shared low-level reader for config and scene files.
std::vector<KvEntry> parse_kv_file(const std::string& path);

SceneSpec scene_from_file(const std::string& path);

}  // namespace retmot

#endif  // RETMOT_CONFIG_HPP_
