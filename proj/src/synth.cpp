// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include "retmot/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "retmot/image_io.hpp"

namespace retmot {

namespace {

// Tileable multi-octave value noise on a torus lattice, accumulated into an
// existing field with halving amplitude per octave.
void accumulate_value_noise(FrameBuffer& field, std::mt19937_64& rng,
                            int base_cell, int octaves) {
  const int w = field.width();
  const int h = field.height();
  double amplitude = 1.0;
  int cell = base_cell;
  for (int oct = 0; oct < octaves && cell >= 1; ++oct) {
    const int gw = std::max(1, w / cell);
    const int gh = std::max(1, h / cell);
    std::vector<double> lattice(static_cast<std::size_t>(gw) * gh);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (auto& v : lattice) v = uni(rng);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const double gx = static_cast<double>(x) * gw / w;
        const double gy = static_cast<double>(y) * gh / h;
        const int x0 = static_cast<int>(gx) % gw;
        const int y0 = static_cast<int>(gy) % gh;
        const int x1 = (x0 + 1) % gw;
        const int y1 = (y0 + 1) % gh;
        const double fx = gx - std::floor(gx);
        const double fy = gy - std::floor(gy);
        const double v00 = lattice[static_cast<std::size_t>(y0) * gw + x0];
        const double v10 = lattice[static_cast<std::size_t>(y0) * gw + x1];
        const double v01 = lattice[static_cast<std::size_t>(y1) * gw + x0];
        const double v11 = lattice[static_cast<std::size_t>(y1) * gw + x1];
        const double top = v00 + (v10 - v00) * fx;
        const double bot = v01 + (v11 - v01) * fx;
        field.at(x, y) += amplitude * (top + (bot - top) * fy);
      }
    amplitude *= 0.5;
    cell /= 2;
  }
}

FrameBuffer make_noise_tile(int w, int h, const BackgroundSpec& bg,
                            std::uint64_t seed) {
  FrameBuffer tile(w, h, 0.0);
  std::mt19937_64 rng(seed);
  accumulate_value_noise(tile, rng, bg.noise_cell_px, bg.noise_octaves);
  const double lo = tile.min();
  const double hi = tile.max();
  const double span = hi > lo ? hi - lo : 1.0;
  // Keep the rolling base dark and narrow so the speckle features carry
  // the contrast; a field that lights up everywhere merges every
  // detection island.
  for (std::size_t i = 0; i < tile.size(); ++i) {
    const double unit = (tile[i] - lo) / span;
    tile[i] = bg.noise_lo + (0.15 + 0.3 * unit) * (bg.noise_hi - bg.noise_lo);
  }
  if (bg.noise_speckle > 0.0) {
    // Sparse small patches, like leaves and berries against a canopy: a
    // fine-grained noise field thresholded at matching quantiles.
    FrameBuffer fine(w, h, 0.0);
    std::mt19937_64 rng2(seed * 0x2545f4914f6cdd1dull + 1);
    accumulate_value_noise(fine, rng2, 8, 2);
    std::vector<double> sorted(fine.data(), fine.data() + fine.size());
    std::sort(sorted.begin(), sorted.end());
    const double q_hi =
        sorted[static_cast<std::size_t>((1.0 - bg.noise_speckle / 2.0) *
                                        (sorted.size() - 1))];
    const double q_lo =
        sorted[static_cast<std::size_t>(bg.noise_speckle / 2.0 *
                                        (sorted.size() - 1))];
    // Two tiers: a strong core at full contrast inside each patch, graded
    // shoulders around it. Threshold sweeps then reveal clutter gradually
    // instead of all at once.
    const double q_hi2 = sorted[static_cast<std::size_t>(
        (1.0 - bg.noise_speckle / 6.0) * (sorted.size() - 1))];
    const double q_lo2 = sorted[static_cast<std::size_t>(
        bg.noise_speckle / 6.0 * (sorted.size() - 1))];
    for (std::size_t i = 0; i < tile.size(); ++i) {
      if (fine[i] >= q_hi2) {
        tile[i] = bg.noise_hi;
      } else if (fine[i] >= q_hi && q_hi2 > q_hi) {
        const double s = (fine[i] - q_hi) / (q_hi2 - q_hi);
        tile[i] = tile[i] + (bg.noise_hi - tile[i]) * s * s;
      } else if (fine[i] <= q_lo2) {
        tile[i] = bg.noise_lo;
      } else if (fine[i] <= q_lo && q_lo > q_lo2) {
        const double s = (q_lo - fine[i]) / (q_lo - q_lo2);
        tile[i] = tile[i] - (tile[i] - bg.noise_lo) * s * s;
      }
    }
  }
  for (std::size_t i = 0; i < tile.size(); ++i) tile[i] *= 255.0;
  return tile;
}

double wrap(double v, double period) {
  double r = std::fmod(v, period);
  if (r < 0.0) r += period;
  return r;
}

}  // namespace

SceneRenderer::SceneRenderer(SceneSpec spec) : spec_(std::move(spec)) {
  if (spec_.fov_deg <= 0.0 || spec_.width <= 0 || spec_.height <= 0 ||
      spec_.n_frames <= 0 || spec_.frame_rate_hz <= 0.0)
    throw std::invalid_argument("SceneRenderer: invalid scene dimensions");
  for (const auto& t : spec_.targets) {
    if (t.diameter_deg >= spec_.fov_deg)
      throw std::invalid_argument("SceneRenderer: target larger than the view");
    if (t.luminance < 0.0 || t.luminance > 1.0)
      throw std::invalid_argument("SceneRenderer: luminance outside [0,1]");
  }
  switch (spec_.background.mode) {
    case BackgroundSpec::Mode::noise:
      noise_tile_ = make_noise_tile(spec_.width, spec_.height,
                                    spec_.background, spec_.seed ^ 0x9e3779b9);
      break;
    case BackgroundSpec::Mode::image: {
      FrameBuffer img = read_gray_image(spec_.background.image_path);
      // Re-tile to frame size with wraparound so scrolling is seamless.
      noise_tile_ = FrameBuffer(spec_.width, spec_.height);
      for (int y = 0; y < spec_.height; ++y)
        for (int x = 0; x < spec_.width; ++x)
          noise_tile_.at(x, y) = img.at(x % img.width(), y % img.height());
      break;
    }
    case BackgroundSpec::Mode::uniform:
      break;
  }
  simulate();
}

void SceneRenderer::simulate() {
  const double scale = spec_.px_per_deg();
  std::mt19937_64 rng(spec_.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  std::vector<Pose> cur(spec_.targets.size());
  std::vector<double> orbit_phase(spec_.targets.size(), 0.0);
  for (std::size_t i = 0; i < spec_.targets.size(); ++i) {
    const auto& t = spec_.targets[i];
    const double r = t.diameter_deg * scale / 2.0;
    const double v = spec_.deg_s_to_px_frame(t.speed_deg_s);
    Pose& p = cur[i];
    const double margin = r + 2.0;
    switch (t.path) {
      case TargetSpec::Path::linear: {
        p.x = t.start_x_px >= 0.0 ? t.start_x_px : spec_.width / 2.0;
        p.y = t.start_y_px >= 0.0 ? t.start_y_px : spec_.height / 2.0;
        const double ang = t.angle_deg * std::numbers::pi / 180.0;
        p.vx = v * std::cos(ang);
        p.vy = v * std::sin(ang);
        p.direction = std::atan2(p.vy, p.vx);
        break;
      }
      case TargetSpec::Path::circular: {
        const double orx = t.orbit_radius_deg * scale;
        orbit_phase[i] = 0.0;
        p.x = spec_.width / 2.0 + orx;
        p.y = spec_.height / 2.0;
        p.direction = std::numbers::pi / 2.0;  // tangent at phase 0
        p.vx = 0.0;
        p.vy = v;
        break;
      }
      case TargetSpec::Path::random: {
        p.x = margin + uni(rng) * (spec_.width - 2.0 * margin);
        p.y = margin + uni(rng) * (spec_.height - 2.0 * margin);
        const double ang = uni(rng) * 2.0 * std::numbers::pi;
        p.vx = v * std::cos(ang);
        p.vy = v * std::sin(ang);
        p.direction = std::atan2(p.vy, p.vx);
        break;
      }
    }
  }

  poses_.assign(spec_.n_frames, {});
  poses_[0] = cur;
  for (int f = 1; f < spec_.n_frames; ++f) {
    for (std::size_t i = 0; i < spec_.targets.size(); ++i) {
      const auto& t = spec_.targets[i];
      Pose& p = cur[i];
      if (t.path == TargetSpec::Path::circular) {
        const double orx = t.orbit_radius_deg * spec_.px_per_deg();
        const double omega = spec_.deg_s_to_px_frame(t.speed_deg_s) / orx;
        orbit_phase[i] += omega;
        p.x = spec_.width / 2.0 + orx * std::cos(orbit_phase[i]);
        p.y = spec_.height / 2.0 + orx * std::sin(orbit_phase[i]);
        p.vx = -orx * omega * std::sin(orbit_phase[i]);
        p.vy = orx * omega * std::cos(orbit_phase[i]);
        p.direction = orbit_phase[i] + std::numbers::pi / 2.0;
        p.direction = std::remainder(p.direction, 2.0 * std::numbers::pi);
        continue;
      }
      p.x += p.vx;
      p.y += p.vy;
    }
    // Bounce: leaving the frame or touching another target reverses the
    // velocity outright (at most one reversal per target per frame).
    for (std::size_t i = 0; i < spec_.targets.size(); ++i) {
      const auto& t = spec_.targets[i];
      if (t.path == TargetSpec::Path::circular) continue;
      Pose& p = cur[i];
      const double r = t.diameter_deg * spec_.px_per_deg() / 2.0;
      bool reverse = p.x - r < 0.0 || p.x + r > spec_.width - 1.0 ||
                     p.y - r < 0.0 || p.y + r > spec_.height - 1.0;
      for (std::size_t j = 0; !reverse && j < spec_.targets.size(); ++j) {
        if (j == i) continue;
        const double rj =
            spec_.targets[j].diameter_deg * spec_.px_per_deg() / 2.0;
        if (std::hypot(cur[j].x - p.x, cur[j].y - p.y) < r + rj)
          reverse = true;
      }
      if (reverse) {
        p.vx = -p.vx;
        p.vy = -p.vy;
        p.direction = std::atan2(p.vy, p.vx);
      }
    }
    poses_[f] = cur;
  }
}

FrameBuffer SceneRenderer::render_background(int frame) const {
  const int w = spec_.width;
  const int h = spec_.height;
  if (spec_.background.mode == BackgroundSpec::Mode::uniform)
    return FrameBuffer(w, h, 255.0 * spec_.background.luminance);

  // Scroll left-to-right with wraparound and linear resampling.
  const double offset =
      frame * spec_.deg_s_to_px_frame(spec_.background.speed_deg_s);
  FrameBuffer out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double sx = wrap(x - offset, static_cast<double>(w));
      const int x0 = static_cast<int>(sx);
      const int x1 = (x0 + 1) % w;
      const double fx = sx - x0;
      const double a = noise_tile_.at(x0, y);
      const double b = noise_tile_.at(x1, y);
      out.at(x, y) = a + (b - a) * fx;
    }
  return out;
}

FrameBuffer SceneRenderer::render(int frame) const {
  if (frame < 0 || frame >= spec_.n_frames)
    throw std::out_of_range("SceneRenderer::render: frame out of range");
  FrameBuffer img = render_background(frame);

  // 4x4 supersampled coverage per pixel keeps sub-pixel motion smooth.
  constexpr int kSub = 4;
  for (std::size_t i = 0; i < spec_.targets.size(); ++i) {
    const auto& t = spec_.targets[i];
    const Pose& p = poses_[frame][i];
    const double r = t.diameter_deg * spec_.px_per_deg() / 2.0;
    const double color = 255.0 * t.luminance;
    const int x_lo = std::max(0, static_cast<int>(std::floor(p.x - r - 1.0)));
    const int x_hi =
        std::min(spec_.width - 1, static_cast<int>(std::ceil(p.x + r + 1.0)));
    const int y_lo = std::max(0, static_cast<int>(std::floor(p.y - r - 1.0)));
    const int y_hi =
        std::min(spec_.height - 1, static_cast<int>(std::ceil(p.y + r + 1.0)));
    for (int y = y_lo; y <= y_hi; ++y)
      for (int x = x_lo; x <= x_hi; ++x) {
        int inside = 0;
        for (int sy = 0; sy < kSub; ++sy)
          for (int sx = 0; sx < kSub; ++sx) {
            const double px = x - 0.5 + (sx + 0.5) / kSub;
            const double py = y - 0.5 + (sy + 0.5) / kSub;
            const double dx = px - p.x;
            const double dy = py - p.y;
            if (dx * dx + dy * dy <= r * r) ++inside;
          }
        if (inside == 0) continue;
        const double cover = static_cast<double>(inside) / (kSub * kSub);
        img.at(x, y) = img.at(x, y) * (1.0 - cover) + color * cover;
      }
  }
  return img;
}

std::vector<TruthRecord> SceneRenderer::truth(int frame) const {
  if (frame < 0 || frame >= spec_.n_frames)
    throw std::out_of_range("SceneRenderer::truth: frame out of range");
  std::vector<TruthRecord> rows;
  rows.reserve(spec_.targets.size());
  for (std::size_t i = 0; i < spec_.targets.size(); ++i) {
    const Pose& p = poses_[frame][i];
    rows.push_back({frame, static_cast<int>(i), p.x, p.y,
                    spec_.targets[i].diameter_deg * spec_.px_per_deg(),
                    p.direction});
  }
  return rows;
}

std::vector<TruthRecord> SceneRenderer::all_truth() const {
  std::vector<TruthRecord> rows;
  for (int f = 0; f < spec_.n_frames; ++f) {
    auto r = truth(f);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return rows;
}

}  // namespace retmot
