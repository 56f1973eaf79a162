// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_TEMPORAL_HPP_
#define RETMOT_TEMPORAL_HPP_

#include <utility>
#include <vector>

#include "retmot/frame.hpp"

namespace retmot {

/// Cascade of first-order leaky integrators:
///   tau * dz_n/dt = -A * z_n + C * z_{n-1},
/// stepped by explicit Euler once per frame. The bandpass output is the
/// gained difference of two layers, K * (z_n - z_{n+m}).
struct CascadeParams {
  double decay = 60.0;         // A
  double transmission = 60.0;  // C
  double tau = 3.0;
  double gain = 5.0;  // K
  int fast_tap = 1;   // n_f
  int slow_tap = 3;   // n_s
  int tap_offset = 1; // m
  double dt = 0.05;

  void validate() const;
  double a() const { return decay / tau; }
  double b() const { return transmission / tau; }
};

class CascadeState {
public:
  CascadeState(const CascadeParams& params, int width, int height);

  // Advance one Euler step. Layer 0 is the input port; layers n >= 1 update
  // synchronously from the previous step's values (layer 1 reads the fresh
  // input).
  void step(const FrameBuffer& input);

  // K * (z_tap - z_{tap+m})
  FrameBuffer readout(int tap) const;

  const FrameBuffer& layer(int n) const { return layers_.at(n); }
  int deepest() const { return static_cast<int>(layers_.size()) - 1; }
  const CascadeParams& params() const { return params_; }
  void reset();

private:
  CascadeParams params_;
  std::vector<FrameBuffer> layers_;  // z_0 .. z_{slow_tap + m}
};

struct FastSlow {
  FrameBuffer fast;
  FrameBuffer slow;
};

/// Both taps read from one shared cascade.
FastSlow fast_slow_responses(const CascadeState& state);

/// Closed-form unit-impulse response of the readout at depth n:
///   K e^{-a t} [ b^n t^(n-1)/(n-1)! - b^(n+m) t^(n+m-1)/(n+m-1)! ]
double impulse_response_analytic(const CascadeParams& params, int n, double t);

/// Times of the impulse-response maximum (first) and minimum (second) for
/// m = 1, from the roots of a*b*(n-1)!*t^2 - (a+b)*n!*t + (n-1)*n! = 0.
std::pair<double, double> extrema_times(double a, double b, int n);

}  // namespace retmot

#endif  // RETMOT_TEMPORAL_HPP_
