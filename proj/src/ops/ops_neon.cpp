// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0
//
// NEON variants, 2 doubles per vector. Separate multiply/add, no fused ops.

#include "ops_impl.hpp"

#ifdef RETMOT_HAVE_NEON_BUILD

#include <arm_neon.h>

namespace retmot::ops {
namespace {

constexpr std::size_t kLanes = 2;

void relu_neon(const double* x, double* out, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    vst1q_f64(out + i, vmaxq_f64(vld1q_f64(x + i), zero));
  for (; i < n; ++i) out[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void halfwave_split_neon(const double* x, double* on, double* off,
                         std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t v = vld1q_f64(x + i);
    vst1q_f64(on + i, vmaxq_f64(v, zero));
    vst1q_f64(off + i, vmaxq_f64(vsubq_f64(zero, v), zero));
  }
  for (; i < n; ++i) {
    const double v = x[i];
    on[i] = v > 0.0 ? v : 0.0;
    off[i] = v < 0.0 ? -v : 0.0;
  }
}

void mul_neon(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void sub_neon(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    vst1q_f64(out + i, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void scale_add_neon(double ca, const double* a, double cb, const double* b,
                    double* out, std::size_t n) {
  const float64x2_t vca = vdupq_n_f64(ca);
  const float64x2_t vcb = vdupq_n_f64(cb);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t pa = vmulq_f64(vca, vld1q_f64(a + i));
    const float64x2_t pb = vmulq_f64(vcb, vld1q_f64(b + i));
    vst1q_f64(out + i, vaddq_f64(pa, pb));
  }
  for (; i < n; ++i) {
    const double pa = ca * a[i];
    const double pb = cb * b[i];
    out[i] = pa + pb;
  }
}

void opponent_neon(const double* a, const double* b, const double* c,
                   const double* d, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t p1 = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const float64x2_t p2 = vmulq_f64(vld1q_f64(c + i), vld1q_f64(d + i));
    vst1q_f64(out + i, vsubq_f64(p1, p2));
  }
  for (; i < n; ++i) {
    const double p1 = a[i] * b[i];
    const double p2 = c[i] * d[i];
    out[i] = p1 - p2;
  }
}

void max2_neon(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    vst1q_f64(out + i, vmaxq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

void conv_row_neon(const double* src, std::size_t stride, const double* k,
                   int ksize, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    float64x2_t acc = vdupq_n_f64(0.0);
    const double* kp = k;
    const double* row = src + i;
    for (int ky = 0; ky < ksize; ++ky, row += stride) {
      for (int kx = 0; kx < ksize; ++kx) {
        const float64x2_t p = vmulq_f64(vld1q_f64(row + kx), vdupq_n_f64(kp[kx]));
        acc = vaddq_f64(acc, p);
      }
      kp += ksize;
    }
    vst1q_f64(out + i, acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    const double* kp = k;
    const double* row = src + i;
    for (int ky = 0; ky < ksize; ++ky, row += stride) {
      for (int kx = 0; kx < ksize; ++kx) {
        const double p = row[kx] * kp[kx];
        acc = acc + p;
      }
      kp += ksize;
    }
    out[i] = acc;
  }
}

}  // namespace

const OpTable& neon_table() {
  static const OpTable t = {
      relu_neon, halfwave_split_neon, mul_neon,  sub_neon,
      scale_add_neon, opponent_neon,  max2_neon, conv_row_neon,
  };
  return t;
}

}  // namespace retmot::ops

#endif  // RETMOT_HAVE_NEON_BUILD
