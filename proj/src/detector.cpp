// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include "retmot/detector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace retmot {

FrameBuffer minmax_norm(const FrameBuffer& field) {
  if (!field.all_finite())
    throw std::invalid_argument("minmax_norm: non-finite field");
  const double lo = field.min();
  const double hi = field.max();
  FrameBuffer out(field.width(), field.height());
  if (hi <= lo) return out;  // constant field -> zeros
  const double inv = 1.0 / (hi - lo);
  for (std::size_t i = 0; i < field.size(); ++i) out[i] = (field[i] - lo) * inv;
  return out;
}

std::vector<PixelPoint> threshold_select(const FrameBuffer& norm_field,
                                         double gamma) {
  std::vector<PixelPoint> points;
  for (int y = 0; y < norm_field.height(); ++y)
    for (int x = 0; x < norm_field.width(); ++x)
      if (norm_field.at(x, y) > gamma) points.push_back({x, y});
  return points;
}

namespace {

// Uniform-grid neighbor index; cells of side eps so neighbors of a point
// live in its 3x3 cell block.
class NeighborGrid {
public:
  NeighborGrid(const std::vector<PixelPoint>& points, double eps)
      : points_(points), eps2_(eps * eps), cell_(eps > 0 ? eps : 1.0) {
    if (points.empty()) return;
    min_x_ = max_x_ = points[0].x;
    min_y_ = max_y_ = points[0].y;
    for (const auto& p : points) {
      min_x_ = std::min(min_x_, p.x);
      max_x_ = std::max(max_x_, p.x);
      min_y_ = std::min(min_y_, p.y);
      max_y_ = std::max(max_y_, p.y);
    }
    cols_ = static_cast<int>((max_x_ - min_x_) / cell_) + 1;
    rows_ = static_cast<int>((max_y_ - min_y_) / cell_) + 1;
    cells_.assign(static_cast<std::size_t>(cols_) * rows_, {});
    for (std::size_t i = 0; i < points.size(); ++i)
      cells_[cell_index(points[i])].push_back(static_cast<int>(i));
  }

  // Indices within eps of point i (inclusive of i itself), ascending.
  std::vector<int> query(int i) const {
    std::vector<int> out;
    const PixelPoint& p = points_[i];
    const int cx = static_cast<int>((p.x - min_x_) / cell_);
    const int cy = static_cast<int>((p.y - min_y_) / cell_);
    for (int gy = std::max(cy - 1, 0); gy <= std::min(cy + 1, rows_ - 1); ++gy)
      for (int gx = std::max(cx - 1, 0); gx <= std::min(cx + 1, cols_ - 1);
           ++gx)
        for (int j : cells_[static_cast<std::size_t>(gy) * cols_ + gx]) {
          const double dx = points_[j].x - p.x;
          const double dy = points_[j].y - p.y;
          if (dx * dx + dy * dy <= eps2_) out.push_back(j);
        }
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  std::size_t cell_index(const PixelPoint& p) const {
    const int cx = static_cast<int>((p.x - min_x_) / cell_);
    const int cy = static_cast<int>((p.y - min_y_) / cell_);
    return static_cast<std::size_t>(cy) * cols_ + cx;
  }

  const std::vector<PixelPoint>& points_;
  double eps2_;
  double cell_;
  int min_x_ = 0, max_x_ = 0, min_y_ = 0, max_y_ = 0;
  int cols_ = 0, rows_ = 0;
  std::vector<std::vector<int>> cells_;
};

}  // namespace

std::vector<std::vector<PixelPoint>> dbscan(const std::vector<PixelPoint>& points,
                                            double eps, int min_points) {
  if (eps <= 0.0 || min_points < 1)
    throw std::invalid_argument("dbscan: eps > 0 and min_points >= 1 required");

  constexpr int kUnvisited = -1;
  constexpr int kNoise = -2;
  std::vector<int> label(points.size(), kUnvisited);
  NeighborGrid grid(points, eps);
  std::vector<std::vector<PixelPoint>> clusters;

  for (std::size_t i = 0; i < points.size(); ++i) {
    if (label[i] != kUnvisited) continue;
    std::vector<int> neighbors = grid.query(static_cast<int>(i));
    if (static_cast<int>(neighbors.size()) < min_points) {
      label[i] = kNoise;
      continue;
    }
    const int cid = static_cast<int>(clusters.size());
    clusters.emplace_back();
    label[i] = cid;
    clusters[cid].push_back(points[i]);
    std::queue<int> seeds;
    for (int j : neighbors)
      if (j != static_cast<int>(i)) seeds.push(j);
    while (!seeds.empty()) {
      const int j = seeds.front();
      seeds.pop();
      if (label[j] == kNoise) {  // border point reached from a core
        label[j] = cid;
        clusters[cid].push_back(points[j]);
        continue;
      }
      if (label[j] != kUnvisited) continue;
      label[j] = cid;
      clusters[cid].push_back(points[j]);
      std::vector<int> far = grid.query(j);
      if (static_cast<int>(far.size()) >= min_points)
        for (int n : far) seeds.push(n);
    }
  }
  return clusters;
}

Detection cluster_readout(const std::vector<PixelPoint>& cluster,
                          const FrameBuffer& max_energy,
                          const FrameBuffer& direction, int frame_index) {
  if (cluster.empty())
    throw std::invalid_argument("cluster_readout: empty cluster");
  double sum_x = 0.0, sum_y = 0.0, sum_ex = 0.0, sum_ey = 0.0;
  for (const auto& p : cluster) {
    sum_x += p.x;
    sum_y += p.y;
    const double e = max_energy.at(p.x, p.y);
    const double phi = direction.at(p.x, p.y);
    sum_ex += e * std::cos(phi);
    sum_ey += e * std::sin(phi);
  }
  const double n = static_cast<double>(cluster.size());
  Detection det;
  det.x = sum_x / n;
  det.y = sum_y / n;
  const double ex = sum_ex / n;
  const double ey = sum_ey / n;
  // Mean-vector angle in (-pi, pi], y component first, matching the
  // per-pixel direction map.
  det.direction = (ex == 0.0 && ey == 0.0) ? 0.0 : std::atan2(ey, ex);
  if (det.direction == -std::numbers::pi) det.direction = std::numbers::pi;
  det.energy = std::hypot(ex, ey);
  det.n_points = static_cast<int>(cluster.size());
  det.frame_index = frame_index;
  return det;
}

MatchResult match_detections(const std::vector<Detection>& detections,
                             const std::vector<TruthPoint>& truths,
                             double scale_coeff, double offset_px) {
  struct Pair {
    double dist;
    int det;
    int truth;
  };
  std::vector<Pair> pairs;
  for (int d = 0; d < static_cast<int>(detections.size()); ++d)
    for (int t = 0; t < static_cast<int>(truths.size()); ++t) {
      const double dist = std::hypot(detections[d].x - truths[t].x,
                                     detections[d].y - truths[t].y);
      const double radius = scale_coeff * truths[t].d_px + offset_px;
      if (dist <= radius) pairs.push_back({dist, d, t});
    }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.det != b.det) return a.det < b.det;
    return a.truth < b.truth;
  });

  MatchResult res;
  res.truth_hit.assign(truths.size(), false);
  std::vector<bool> det_used(detections.size(), false);
  for (const auto& p : pairs) {
    if (det_used[p.det] || res.truth_hit[p.truth]) continue;
    det_used[p.det] = true;
    res.truth_hit[p.truth] = true;
    ++res.true_positives;
  }
  res.false_positives =
      static_cast<int>(detections.size()) - res.true_positives;
  return res;
}

}  // namespace retmot
