// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include "retmot/ganglion.hpp"

#include <cmath>
#include <numbers>

#include "retmot/ops.hpp"

namespace retmot {

FrameBuffer motion_energy(const FrameBuffer& a_slow, const FrameBuffer& b_slow,
                          const FrameBuffer& a_fast,
                          const FrameBuffer& b_fast) {
  require_same_size(a_slow, b_fast, "motion_energy");
  FrameBuffer out(a_slow.width(), a_slow.height());
  ops::table().opponent(a_slow.data(), b_fast.data(), a_fast.data(),
                        b_slow.data(), out.data(), out.size());
  return out;
}

FrameBuffer combine_onoff(const FrameBuffer& on, const FrameBuffer& off,
                          double w_on, double w_off) {
  require_same_size(on, off, "combine_onoff");
  FrameBuffer out(on.width(), on.height());
  ops::table().scale_add(w_on, on.data(), w_off, off.data(), out.data(),
                         out.size());
  return out;
}

FrameBuffer direction_map(const FrameBuffer& e0, const FrameBuffer& e90) {
  require_same_size(e0, e90, "direction_map");
  FrameBuffer out(e0.width(), e0.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double y = e90[i];
    const double x = e0[i];
    // Result stays in (-pi, pi]; the y argument comes first throughout.
    double phi = (x == 0.0 && y == 0.0) ? 0.0 : std::atan2(y, x);
    if (phi == -std::numbers::pi) phi = std::numbers::pi;
    out[i] = phi;
  }
  return out;
}

namespace {

FrameBuffer max_over(const std::array<FrameBuffer, kNumOrientations>& planes) {
  FrameBuffer out = planes[0];
  const auto& t = ops::table();
  for (int k = 1; k < kNumOrientations; ++k)
    t.max2(out.data(), planes[k].data(), out.data(), out.size());
  return out;
}

}  // namespace

GanglionField ganglion_response(const EnergyTensor& energy,
                                const FrameBuffer& wa_on,
                                const FrameBuffer& wa_off,
                                const GanglionParams& params) {
  GanglionField g;
  const auto& t = ops::table();
  g.v_on = FrameBuffer(wa_on.width(), wa_on.height());
  g.v_off = FrameBuffer(wa_off.width(), wa_off.height());
  t.mul(energy.max_on.data(), wa_on.data(), g.v_on.data(), g.v_on.size());
  t.mul(energy.max_off.data(), wa_off.data(), g.v_off.data(), g.v_off.size());
  g.v = combine_onoff(g.v_on, g.v_off, params.w_on, params.w_off);
  t.relu(g.v.data(), g.v.data(), g.v.size());
  return g;
}

std::vector<int> inhibition_set(const std::vector<double>& directions,
                                int crowd_threshold) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  // Bins centered on the eight orientations. Edge-aligned bins would split
  // an axis-aligned crowd (a horizontally drifting background reads as
  // direction ~pi) across two bins and starve the trigger.
  int counts[kNumOrientations] = {};
  for (double phi : directions) {
    double wrapped = std::fmod(phi, kTwoPi);
    if (wrapped < 0.0) wrapped += kTwoPi;
    const int nearest =
        static_cast<int>(std::lround(wrapped / (std::numbers::pi / 4.0))) %
        kNumOrientations;
    ++counts[nearest];
  }
  bool flagged[kNumOrientations] = {};
  for (int k = 0; k < kNumOrientations; ++k)
    if (counts[k] > crowd_threshold) {
      // The crowd's orientation and both flanking ones: per-pixel direction
      // estimates of a drifting texture spread across the neighbors.
      flagged[(k + kNumOrientations - 1) % kNumOrientations] = true;
      flagged[k] = true;
      flagged[(k + 1) % kNumOrientations] = true;
    }
  std::vector<int> inhibited;
  for (int k = 0; k < kNumOrientations; ++k)
    if (flagged[k]) inhibited.push_back(k);
  return inhibited;
}

GanglionField apply_inhibition(const GanglionField& field,
                               const EnergyTensor& energy,
                               const FrameBuffer& wa_on,
                               const FrameBuffer& wa_off,
                               const std::vector<int>& inhibited,
                               const GanglionParams& params) {
  if (inhibited.empty()) return field;

  const auto& t = ops::table();
  const std::size_t n = field.v.size();
  FrameBuffer max_inh_on = energy.on[inhibited[0]];
  FrameBuffer max_inh_off = energy.off[inhibited[0]];
  for (std::size_t i = 1; i < inhibited.size(); ++i) {
    t.max2(max_inh_on.data(), energy.on[inhibited[i]].data(),
           max_inh_on.data(), n);
    t.max2(max_inh_off.data(), energy.off[inhibited[i]].data(),
           max_inh_off.data(), n);
  }

  GanglionField out;
  out.v_on = FrameBuffer(field.v.width(), field.v.height());
  out.v_off = FrameBuffer(field.v.width(), field.v.height());
  t.mul(max_inh_on.data(), wa_on.data(), max_inh_on.data(), n);
  t.mul(max_inh_off.data(), wa_off.data(), max_inh_off.data(), n);
  t.sub(field.v_on.data(), max_inh_on.data(), out.v_on.data(), n);
  t.sub(field.v_off.data(), max_inh_off.data(), out.v_off.data(), n);
  out.v = combine_onoff(out.v_on, out.v_off, params.w_on, params.w_off);
  t.relu(out.v.data(), out.v.data(), out.v.size());
  return out;
}

/// Fills the max planes of an energy tensor once all orientations are set.
void finalize_energy_maxima(EnergyTensor& energy) {
  energy.max_on = max_over(energy.on);
  energy.max_off = max_over(energy.off);
  energy.max_combined = max_over(energy.combined);
}

}  // namespace retmot
