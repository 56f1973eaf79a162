// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_DETECTOR_HPP_
#define RETMOT_DETECTOR_HPP_

#include <cstdint>
#include <vector>

#include "retmot/frame.hpp"

namespace retmot {

struct PixelPoint {
  int x = 0;
  int y = 0;
};

struct Detection {
  double x = 0.0;  // cluster centroid
  double y = 0.0;
  double direction = 0.0;  // population-coded, radians in (-pi, pi]
  double energy = 0.0;     // magnitude of the mean energy vector
  int n_points = 0;
  int frame_index = 0;
};

struct ClusterConfig {
  double eps = 3.0;    // neighborhood radius in pixels
  int min_points = 1;  // core-point threshold
  double gamma = 0.5;  // detection threshold on the normalized activation
};

/// Min-max rescale into [0,1]; a constant field maps to all zeros so a
/// featureless frame produces no candidates.
FrameBuffer minmax_norm(const FrameBuffer& field);

/// Pixels with value strictly greater than gamma, row-major order.
std::vector<PixelPoint> threshold_select(const FrameBuffer& norm_field,
                                         double gamma);

/// Density clustering with Euclidean metric; noise points are dropped.
/// Deterministic for a fixed input order.
std::vector<std::vector<PixelPoint>> dbscan(const std::vector<PixelPoint>& points,
                                            double eps, int min_points);

/// Population-coded readout over a cluster: each member contributes the
/// orientation-maximal energy decomposed along its direction estimate; the
/// cluster reports the mean vector's angle and magnitude.
Detection cluster_readout(const std::vector<PixelPoint>& cluster,
                          const FrameBuffer& max_energy,
                          const FrameBuffer& direction, int frame_index);

struct TruthPoint {
  double x = 0.0;
  double y = 0.0;
  double d_px = 0.0;  // target extent in pixels (diameter, or box diagonal)
};

struct MatchResult {
  int true_positives = 0;
  int false_positives = 0;
  std::vector<bool> truth_hit;  // parallel to the truth list
};

/// Greedy nearest-first one-to-one matching. A detection within the truth's
/// match radius counts once; leftovers are false positives. The radius is
/// scale_coeff * d_px + offset_px per truth entry.
MatchResult match_detections(const std::vector<Detection>& detections,
                             const std::vector<TruthPoint>& truths,
                             double scale_coeff, double offset_px);

}  // namespace retmot

#endif  // RETMOT_DETECTOR_HPP_
