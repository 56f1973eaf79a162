// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_SPATIAL_HPP_
#define RETMOT_SPATIAL_HPP_

#include <array>
#include <utility>

#include "retmot/frame.hpp"
#include "retmot/kernels.hpp"

namespace retmot {

inline constexpr int kNumOrientations = 8;

/// theta_k = k * pi/4 for k in 0..7.
double orientation_angle(int k);

struct SpatialParams {
  double gabor_lambda = 4.0;
  double gabor_sigma = 0.3;
  int gabor_size = 5;
  double cs_lambda = 0.0;  // pixels; <= 0 selects the 2 * cs_size default
  double cs_sigma = 1.5;   // envelope scale relative to the half-window
  int cs_size = 21;        // M_W, pixels

  // The gate only passes anything when its excitatory lobe spans a useful
  // fraction of the window, so the envelope rides the window size and the
  // default wavelength tapers the cosine to zero right at the edge.
  double effective_cs_lambda() const {
    return cs_lambda > 0.0 ? cs_lambda : 2.0 * cs_size;
  }
  double effective_cs_sigma_px() const { return cs_sigma * cs_size / 2.0; }
};

/// All filter taps precomputed once per configuration: an even/odd Gabor
/// pair per orientation plus the center-surround window. Immutable after
/// construction and freely shareable across pipeline instances.
class KernelBank {
public:
  explicit KernelBank(const SpatialParams& params);

  const Kernel2D& gabor_even(int k) const { return even_[k]; }
  const Kernel2D& gabor_odd(int k) const { return odd_[k]; }
  const Kernel2D& center_surround() const { return cs_; }
  const SpatialParams& params() const { return params_; }

private:
  SpatialParams params_;
  std::array<Kernel2D, kNumOrientations> even_;
  std::array<Kernel2D, kNumOrientations> odd_;
  Kernel2D cs_;
};

/// One orientation's worth of oriented filtering for one polarity:
/// slow/fast responses through the even (A) and odd (B) kernels.
struct SacSlice {
  FrameBuffer a_slow;  // slow x even
  FrameBuffer b_slow;  // slow x odd
  FrameBuffer a_fast;  // fast x even
  FrameBuffer b_fast;  // fast x odd
};

SacSlice sac_filter(const FrameBuffer& slow, const FrameBuffer& fast,
                    const KernelBank& bank, int orientation);

/// Center-surround gating field: rectify, filter, rectify.
FrameBuffer wac_mediate(const FrameBuffer& slow, const Kernel2D& cs);

}  // namespace retmot

#endif  // RETMOT_SPATIAL_HPP_
