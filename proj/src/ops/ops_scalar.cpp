// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0
//
// Reference kernels. These define the semantics every SIMD variant must
// reproduce bit for bit; keep each element's operation sequence explicit
// (one rounding per multiply, one per add).

#include "ops_impl.hpp"

namespace retmot::ops {
namespace {

void relu_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void halfwave_split_scalar(const double* x, double* on, double* off,
                           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i];
    on[i] = v > 0.0 ? v : 0.0;
    off[i] = v < 0.0 ? -v : 0.0;
  }
}

void mul_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void sub_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void scale_add_scalar(double ca, const double* a, double cb, const double* b,
                      double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double pa = ca * a[i];
    const double pb = cb * b[i];
    out[i] = pa + pb;
  }
}

void opponent_scalar(const double* a, const double* b, const double* c,
                     const double* d, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double p1 = a[i] * b[i];
    const double p2 = c[i] * d[i];
    out[i] = p1 - p2;
  }
}

void max2_scalar(const double* a, const double* b, double* out,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

void conv_row_scalar(const double* src, std::size_t stride, const double* k,
                     int ksize, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
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

const OpTable& scalar_table() {
  static const OpTable t = {
      relu_scalar, halfwave_split_scalar, mul_scalar,  sub_scalar,
      scale_add_scalar, opponent_scalar,  max2_scalar, conv_row_scalar,
  };
  return t;
}

}  // namespace retmot::ops
