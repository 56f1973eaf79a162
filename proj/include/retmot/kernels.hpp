// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_KERNELS_HPP_
#define RETMOT_KERNELS_HPP_

#include <vector>

#include "retmot/frame.hpp"

namespace retmot {

/// Square odd-sized filter tap grid, row-major, origin at the center.
class Kernel2D {
public:
  Kernel2D() = default;
  explicit Kernel2D(int size);

  int size() const { return size_; }
  int radius() const { return size_ / 2; }

  double* data() { return taps_.data(); }
  const double* data() const { return taps_.data(); }

  // dx, dy in [-radius, radius]
  double& at(int dx, int dy) {
    return taps_[static_cast<std::size_t>(dy + radius()) * size_ +
                 (dx + radius())];
  }
  double at(int dx, int dy) const {
    return taps_[static_cast<std::size_t>(dy + radius()) * size_ +
                 (dx + radius())];
  }

  double sum() const;

private:
  int size_ = 0;
  std::vector<double> taps_;
};

/// Difference-of-gaussians bandpass tap grid: narrow minus wide, both with
/// 1/(sqrt(2*pi)*sigma) normalization and a common gain.
Kernel2D dog_kernel(double gain, double sigma1, double sigma2, int size);

/// Zero-DC variant: each sampled gaussian is normalized to unit mass before
/// differencing, so a uniform field maps to zero. The plain form's net gain
/// is about gain*sqrt(2*pi)*(sigma1-sigma2), which inverts the sign of any
/// extended blob and starves the downstream rectifiers.
Kernel2D dog_kernel_balanced(double gain, double sigma1, double sigma2,
                             int size);

/// Oriented sinusoid under a gaussian envelope. theta rotates the carrier
/// axis, psi shifts its phase (0 -> even kernel, pi/2 -> odd kernel).
Kernel2D gabor_kernel(double lambda, double theta, double sigma, double psi,
                      int size);

/// Excitatory center with a uniform inhibitory floor:
/// 2*exp(-r^2/2sigma^2)*cos(2*pi*x/lambda) - 1 over the full window.
Kernel2D center_surround_kernel(double lambda, double sigma, int size);


/// Same-size 2-D correlation with replicate-edge padding. All bank kernels
/// are either even or odd about the origin, so only the odd ones care about
/// the orientation convention; their sign feeds the direction estimate.
FrameBuffer convolve2d(const FrameBuffer& field, const Kernel2D& kernel);

/// Plain gaussian taps, normalized to unit sum (display smoothing).
Kernel2D gaussian_kernel(double sigma, int size);

}  // namespace retmot

#endif  // RETMOT_KERNELS_HPP_
