// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_GANGLION_HPP_
#define RETMOT_GANGLION_HPP_

#include <array>
#include <vector>

#include "retmot/frame.hpp"
#include "retmot/spatial.hpp"

namespace retmot {

struct GanglionParams {
  double w_on = 0.5;
  double w_off = 0.5;
  int crowd_threshold = 6;  // N_th: more than this many same-direction
                            // detections flags an inhibited interval
};

/// Per-orientation opponent energies for both polarities, their weighted
/// recombination, and the per-pixel direction estimate.
struct EnergyTensor {
  std::array<FrameBuffer, kNumOrientations> on;        // E_+^theta
  std::array<FrameBuffer, kNumOrientations> off;       // E_-^theta
  std::array<FrameBuffer, kNumOrientations> combined;  // E^theta
  FrameBuffer max_on;        // max over theta of E_+
  FrameBuffer max_off;       // max over theta of E_-
  FrameBuffer max_combined;  // max over theta of E
  FrameBuffer direction;     // atan2(E^{pi/2}, E^0) per pixel
};

/// Opponent product of quadrature pairs at the two temporal taps:
/// a_slow*b_fast - a_fast*b_slow.
FrameBuffer motion_energy(const FrameBuffer& a_slow, const FrameBuffer& b_slow,
                          const FrameBuffer& a_fast,
                          const FrameBuffer& b_fast);

FrameBuffer combine_onoff(const FrameBuffer& on, const FrameBuffer& off,
                          double w_on, double w_off);

/// Per-pixel direction from the two axial energies.
FrameBuffer direction_map(const FrameBuffer& e0, const FrameBuffer& e90);

/// Fills the max_* planes once all orientation planes are populated.
void finalize_energy_maxima(EnergyTensor& energy);

struct GanglionField {
  FrameBuffer v_on;
  FrameBuffer v_off;
  FrameBuffer v;  // rectified weighted sum
};

/// V_± = (max_theta E_±) * WA_±; V = [w_on V_+ + w_off V_-]^+
GanglionField ganglion_response(const EnergyTensor& energy,
                                const FrameBuffer& wa_on,
                                const FrameBuffer& wa_off,
                                const GanglionParams& params);

/// Orientation labels (indices into the 8-way bank) flagged for inhibition:
/// both endpoints of every direction octant holding more than
/// crowd_threshold detections. Directions in radians, any branch.
std::vector<int> inhibition_set(const std::vector<double>& directions,
                                int crowd_threshold);

/// V'_± = V_± - max_{theta in inhibited} E_±^theta * WA_±, re-rectified.
/// An empty set returns the input field unchanged.
GanglionField apply_inhibition(const GanglionField& field,
                               const EnergyTensor& energy,
                               const FrameBuffer& wa_on,
                               const FrameBuffer& wa_off,
                               const std::vector<int>& inhibited,
                               const GanglionParams& params);

}  // namespace retmot

#endif  // RETMOT_GANGLION_HPP_
