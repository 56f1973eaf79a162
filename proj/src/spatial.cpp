// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include "retmot/spatial.hpp"

#include <numbers>

#include "retmot/ops.hpp"

namespace retmot {

double orientation_angle(int k) { return k * std::numbers::pi / 4.0; }

KernelBank::KernelBank(const SpatialParams& params) : params_(params) {
  for (int k = 0; k < kNumOrientations; ++k) {
    const double theta = orientation_angle(k);
    even_[k] = gabor_kernel(params.gabor_lambda, theta, params.gabor_sigma,
                            0.0, params.gabor_size);
    odd_[k] = gabor_kernel(params.gabor_lambda, theta, params.gabor_sigma,
                           std::numbers::pi / 2.0, params.gabor_size);
  }
  cs_ = center_surround_kernel(params.effective_cs_lambda(),
                               params.effective_cs_sigma_px(), params.cs_size);
}

SacSlice sac_filter(const FrameBuffer& slow, const FrameBuffer& fast,
                    const KernelBank& bank, int orientation) {
  require_same_size(slow, fast, "sac_filter");
  return {convolve2d(slow, bank.gabor_even(orientation)),
          convolve2d(slow, bank.gabor_odd(orientation)),
          convolve2d(fast, bank.gabor_even(orientation)),
          convolve2d(fast, bank.gabor_odd(orientation))};
}

FrameBuffer wac_mediate(const FrameBuffer& slow, const Kernel2D& cs) {
  FrameBuffer rect(slow.width(), slow.height());
  const auto& t = ops::table();
  t.relu(slow.data(), rect.data(), rect.size());
  FrameBuffer out = convolve2d(rect, cs);
  t.relu(out.data(), out.data(), out.size());
  return out;
}

}  // namespace retmot
