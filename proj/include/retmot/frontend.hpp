// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_FRONTEND_HPP_
#define RETMOT_FRONTEND_HPP_

#include <deque>
#include <utility>
#include <vector>

#include "retmot/frame.hpp"
#include "retmot/kernels.hpp"

namespace retmot {

/// Luminance-change stage. Keeps the previous input frame plus a short ring
/// of its own outputs, which re-enter the recursion with fast-decaying
/// weights 1/(1+e^(u*i)).
class PhotoreceptorState {
public:
  PhotoreceptorState(int depth, double u);

  // First call seeds the previous-frame slot and returns an all-zero field;
  // afterwards returns the change signal
  //   P(t) = I(t) - I(t-1) + sum_i p_i * P(t-i).
  FrameBuffer update(const FrameBuffer& frame);

  int depth() const { return depth_; }
  const std::vector<double>& decay_coeffs() const { return coeffs_; }
  void reset();

private:
  int depth_;
  std::vector<double> coeffs_;
  std::deque<FrameBuffer> history_;  // most recent first
  FrameBuffer prev_frame_;
  bool primed_ = false;
};

/// Half-wave rectification into the ON (increment) and OFF (decrement)
/// channels; the OFF branch carries inverted sign.
std::pair<FrameBuffer, FrameBuffer> onoff_split(const FrameBuffer& change);

/// Bandpass via the difference-of-gaussians taps.
FrameBuffer bipolar_bandpass(const FrameBuffer& channel, const Kernel2D& dog);

}  // namespace retmot

#endif  // RETMOT_FRONTEND_HPP_
