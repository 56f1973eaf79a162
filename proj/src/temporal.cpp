// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include "retmot/temporal.hpp"

#include <cmath>
#include <stdexcept>

#include "retmot/ops.hpp"

namespace retmot {

void CascadeParams::validate() const {
  if (tau <= 0.0 || dt <= 0.0)
    throw std::invalid_argument("cascade: tau and dt must be > 0");
  if (decay <= 0.0 || transmission <= 0.0)
    throw std::invalid_argument("cascade: A and C must be > 0");
  if (fast_tap >= slow_tap)
    throw std::invalid_argument("cascade: fast tap must be < slow tap");
  if (fast_tap < 1 || tap_offset < 1)
    throw std::invalid_argument("cascade: taps and offset must be >= 1");
}

CascadeState::CascadeState(const CascadeParams& params, int width, int height)
    : params_(params) {
  params_.validate();
  const int deepest = params_.slow_tap + params_.tap_offset;
  layers_.reserve(deepest + 1);
  for (int n = 0; n <= deepest; ++n) layers_.emplace_back(width, height, 0.0);
}

void CascadeState::reset() {
  for (auto& l : layers_) l.fill(0.0);
}

void CascadeState::step(const FrameBuffer& input) {
  if (!input.all_finite())
    throw std::invalid_argument("cascade: non-finite input");
  require_same_size(input, layers_[0], "cascade");

  layers_[0] = input;
  // z_n <- (1 - A dt/tau) z_n + (C dt/tau) z_{n-1}; ascending order with each
  // z_{n-1} read before it is overwritten keeps the update synchronous.
  const double keep = 1.0 - params_.decay * params_.dt / params_.tau;
  const double feed = params_.transmission * params_.dt / params_.tau;
  const auto& t = ops::table();
  FrameBuffer prev_old = layers_[0];
  for (std::size_t n = 1; n < layers_.size(); ++n) {
    FrameBuffer this_old = layers_[n];
    t.scale_add(keep, layers_[n].data(), feed, prev_old.data(),
                layers_[n].data(), layers_[n].size());
    prev_old = std::move(this_old);
  }
}

FrameBuffer CascadeState::readout(int tap) const {
  const int upper = tap + params_.tap_offset;
  if (tap < 0 || upper > deepest())
    throw std::out_of_range("cascade readout: tap out of range");
  FrameBuffer out(layers_[0].width(), layers_[0].height());
  ops::table().scale_add(params_.gain, layers_[tap].data(), -params_.gain,
                         layers_[upper].data(), out.data(), out.size());
  return out;
}

FastSlow fast_slow_responses(const CascadeState& state) {
  return {state.readout(state.params().fast_tap),
          state.readout(state.params().slow_tap)};
}

namespace {
double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}
}  // namespace

double impulse_response_analytic(const CascadeParams& params, int n,
                                 double t) {
  if (t < 0.0) throw std::invalid_argument("impulse response: t < 0");
  const double a = params.a();
  const double b = params.b();
  const int m = params.tap_offset;
  const double lead =
      std::pow(b, n) * std::pow(t, n - 1) / factorial(n - 1);
  const double lag =
      std::pow(b, n + m) * std::pow(t, n + m - 1) / factorial(n + m - 1);
  return params.gain * std::exp(-a * t) * (lead - lag);
}

std::pair<double, double> extrema_times(double a, double b, int n) {
  if (a <= 0.0 || b <= 0.0 || n < 2)
    throw std::invalid_argument("extrema_times: need a,b > 0 and n >= 2");
  const double nf = factorial(n);
  const double nm1f = factorial(n - 1);
  const double disc =
      (a + b) * nf * ((a + b) * nf) - 4.0 * a * b * nm1f * (n - 1) * nf;
  const double root = std::sqrt(disc);
  const double denom = 2.0 * a * b * nm1f;
  return {((a + b) * nf - root) / denom, ((a + b) * nf + root) / denom};
}

}  // namespace retmot
