// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include "retmot/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "retmot/ops.hpp"

namespace retmot {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_odd(int size, const char* what) {
  if (size < 1 || size % 2 == 0)
    throw std::invalid_argument(std::string(what) + ": size must be odd");
}
}  // namespace

Kernel2D::Kernel2D(int size) : size_(size) {
  require_odd(size, "Kernel2D");
  taps_.assign(static_cast<std::size_t>(size) * size, 0.0);
}

double Kernel2D::sum() const {
  double s = 0.0;
  for (double v : taps_) s += v;
  return s;
}

namespace {
// The window must not truncate the wide gaussian: at least 6*sigma2,
// rounded up to odd.
void require_dog_window(double sigma2, int size) {
  int min_size = static_cast<int>(std::ceil(6.0 * sigma2));
  if (min_size % 2 == 0) ++min_size;
  if (size < min_size)
    throw std::invalid_argument("dog_kernel: size must be >= 6*sigma2");
}
}  // namespace

Kernel2D dog_kernel(double gain, double sigma1, double sigma2, int size) {
  if (sigma1 >= sigma2)
    throw std::invalid_argument("dog_kernel: sigma1 must be < sigma2");
  require_dog_window(sigma2, size);
  Kernel2D k(size);
  const double c1 = gain / (std::sqrt(kTwoPi) * sigma1);
  const double c2 = gain / (std::sqrt(kTwoPi) * sigma2);
  const double s1 = 2.0 * sigma1 * sigma1;
  const double s2 = 2.0 * sigma2 * sigma2;
  for (int dy = -k.radius(); dy <= k.radius(); ++dy)
    for (int dx = -k.radius(); dx <= k.radius(); ++dx) {
      const double r2 = static_cast<double>(dx) * dx + static_cast<double>(dy) * dy;
      k.at(dx, dy) = c1 * std::exp(-r2 / s1) - c2 * std::exp(-r2 / s2);
    }
  return k;
}

Kernel2D dog_kernel_balanced(double gain, double sigma1, double sigma2,
                             int size) {
  if (sigma1 >= sigma2)
    throw std::invalid_argument("dog_kernel: sigma1 must be < sigma2");
  require_dog_window(sigma2, size);
  Kernel2D k(size);
  const double s1 = 2.0 * sigma1 * sigma1;
  const double s2 = 2.0 * sigma2 * sigma2;
  double sum1 = 0.0, sum2 = 0.0;
  for (int dy = -k.radius(); dy <= k.radius(); ++dy)
    for (int dx = -k.radius(); dx <= k.radius(); ++dx) {
      const double r2 = static_cast<double>(dx) * dx + static_cast<double>(dy) * dy;
      sum1 += std::exp(-r2 / s1);
      sum2 += std::exp(-r2 / s2);
    }
  for (int dy = -k.radius(); dy <= k.radius(); ++dy)
    for (int dx = -k.radius(); dx <= k.radius(); ++dx) {
      const double r2 = static_cast<double>(dx) * dx + static_cast<double>(dy) * dy;
      k.at(dx, dy) =
          gain * (std::exp(-r2 / s1) / sum1 - std::exp(-r2 / s2) / sum2);
    }
  return k;
}

Kernel2D gabor_kernel(double lambda, double theta, double sigma, double psi,
                      int size) {
  if (lambda <= 0.0 || sigma <= 0.0)
    throw std::invalid_argument("gabor_kernel: lambda and sigma must be > 0");
  Kernel2D k(size);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double s2 = 2.0 * sigma * sigma;
  for (int dy = -k.radius(); dy <= k.radius(); ++dy)
    for (int dx = -k.radius(); dx <= k.radius(); ++dx) {
      const double xr = dx * ct + dy * st;
      const double yr = -dx * st + dy * ct;
      k.at(dx, dy) = std::exp(-(xr * xr + yr * yr) / s2) *
                     std::cos(kTwoPi * xr / lambda + psi);
    }
  return k;
}

Kernel2D center_surround_kernel(double lambda, double sigma, int size) {
  if (lambda <= 0.0 || sigma <= 0.0)
    throw std::invalid_argument(
        "center_surround_kernel: lambda and sigma must be > 0");
  Kernel2D k(size);
  const double s2 = 2.0 * sigma * sigma;
  for (int dy = -k.radius(); dy <= k.radius(); ++dy)
    for (int dx = -k.radius(); dx <= k.radius(); ++dx) {
      const double r2 = static_cast<double>(dx) * dx + static_cast<double>(dy) * dy;
      k.at(dx, dy) =
          2.0 * std::exp(-r2 / s2) * std::cos(kTwoPi * dx / lambda) - 1.0;
    }
  return k;
}

Kernel2D gaussian_kernel(double sigma, int size) {
  if (sigma <= 0.0)
    throw std::invalid_argument("gaussian_kernel: sigma must be > 0");
  Kernel2D k(size);
  const double s2 = 2.0 * sigma * sigma;
  for (int dy = -k.radius(); dy <= k.radius(); ++dy)
    for (int dx = -k.radius(); dx <= k.radius(); ++dx) {
      const double r2 = static_cast<double>(dx) * dx + static_cast<double>(dy) * dy;
      k.at(dx, dy) = std::exp(-r2 / s2);
    }
  const double s = k.sum();
  for (int dy = -k.radius(); dy <= k.radius(); ++dy)
    for (int dx = -k.radius(); dx <= k.radius(); ++dx) k.at(dx, dy) /= s;
  return k;
}

FrameBuffer convolve2d(const FrameBuffer& field, const Kernel2D& kernel) {
  const int w = field.width();
  const int h = field.height();
  const int ks = kernel.size();
  const int r = kernel.radius();
  if (ks > w || ks > h)
    throw std::invalid_argument("convolve2d: kernel larger than field");

  // Replicate-edge padding into a scratch plane, then a dense correlation
  // pass per output row.
  const int pw = w + 2 * r;
  const int ph = h + 2 * r;
  std::vector<double> padded(static_cast<std::size_t>(pw) * ph);
  for (int y = 0; y < ph; ++y) {
    const int sy = std::min(std::max(y - r, 0), h - 1);
    double* dst = padded.data() + static_cast<std::size_t>(y) * pw;
    const double* src = field.data() + static_cast<std::size_t>(sy) * w;
    for (int x = 0; x < r; ++x) dst[x] = src[0];
    for (int x = 0; x < w; ++x) dst[r + x] = src[x];
    for (int x = 0; x < r; ++x) dst[r + w + x] = src[w - 1];
  }

  FrameBuffer out(w, h);
  const auto& t = ops::table();
  for (int y = 0; y < h; ++y)
    t.conv_row(padded.data() + static_cast<std::size_t>(y) * pw, pw,
               kernel.data(), ks, out.data() + static_cast<std::size_t>(y) * w,
               static_cast<std::size_t>(w));
  return out;
}

}  // namespace retmot
