// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0
//
// AVX2 variants, 4 doubles per vector. Multiply and add stay separate
// (no FMA) so every lane reproduces the scalar rounding sequence.

#include "ops_impl.hpp"

#ifdef RETMOT_HAVE_AVX2_BUILD

#include <immintrin.h>

namespace retmot::ops {
namespace {

constexpr std::size_t kLanes = 4;

void relu_avx2(const double* x, double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
  for (; i < n; ++i) out[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void halfwave_split_avx2(const double* x, double* on, double* off,
                         std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(on + i, _mm256_max_pd(v, zero));
    _mm256_storeu_pd(off + i, _mm256_max_pd(_mm256_sub_pd(zero, v), zero));
  }
  for (; i < n; ++i) {
    const double v = x[i];
    on[i] = v > 0.0 ? v : 0.0;
    off[i] = v < 0.0 ? -v : 0.0;
  }
}

void mul_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(
        out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void sub_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(
        out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void scale_add_avx2(double ca, const double* a, double cb, const double* b,
                    double* out, std::size_t n) {
  const __m256d vca = _mm256_set1_pd(ca);
  const __m256d vcb = _mm256_set1_pd(cb);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d pa = _mm256_mul_pd(vca, _mm256_loadu_pd(a + i));
    const __m256d pb = _mm256_mul_pd(vcb, _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(pa, pb));
  }
  for (; i < n; ++i) {
    const double pa = ca * a[i];
    const double pb = cb * b[i];
    out[i] = pa + pb;
  }
}

void opponent_avx2(const double* a, const double* b, const double* c,
                   const double* d, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d p1 =
        _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d p2 =
        _mm256_mul_pd(_mm256_loadu_pd(c + i), _mm256_loadu_pd(d + i));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(p1, p2));
  }
  for (; i < n; ++i) {
    const double p1 = a[i] * b[i];
    const double p2 = c[i] * d[i];
    out[i] = p1 - p2;
  }
}

void max2_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(
        out + i, _mm256_max_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

void conv_row_avx2(const double* src, std::size_t stride, const double* k,
                   int ksize, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d acc = _mm256_setzero_pd();
    const double* kp = k;
    const double* row = src + i;
    for (int ky = 0; ky < ksize; ++ky, row += stride) {
      for (int kx = 0; kx < ksize; ++kx) {
        const __m256d p =
            _mm256_mul_pd(_mm256_loadu_pd(row + kx), _mm256_set1_pd(kp[kx]));
        acc = _mm256_add_pd(acc, p);
      }
      kp += ksize;
    }
    _mm256_storeu_pd(out + i, acc);
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

const OpTable& avx2_table() {
  static const OpTable t = {
      relu_avx2, halfwave_split_avx2, mul_avx2,  sub_avx2,
      scale_add_avx2, opponent_avx2,  max2_avx2, conv_row_avx2,
  };
  return t;
}

}  // namespace retmot::ops

#endif  // RETMOT_HAVE_AVX2_BUILD
