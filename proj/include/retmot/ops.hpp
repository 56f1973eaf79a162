// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_OPS_HPP_
#define RETMOT_OPS_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace retmot::ops {

enum class Backend { scalar, avx2, neon };

const char* backend_name(Backend b);

// Elementwise kernels over contiguous double arrays. `out` may alias an input
// exactly (same pointer); partial overlap is not supported. Every backend
// performs the identical sequence of IEEE operations per element, so results
// are bit-identical across backends.
struct OpTable {
  // out[i] = max(x[i], 0)
  void (*relu)(const double* x, double* out, std::size_t n);
  // on[i] = max(x[i], 0); off[i] = max(-x[i], 0)
  void (*halfwave_split)(const double* x, double* on, double* off,
                         std::size_t n);
  // out[i] = a[i] * b[i]
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
  // out[i] = a[i] - b[i]
  void (*sub)(const double* a, const double* b, double* out, std::size_t n);
  // out[i] = ca * a[i] + cb * b[i]
  void (*scale_add)(double ca, const double* a, double cb, const double* b,
                    double* out, std::size_t n);
  // out[i] = a[i] * b[i] - c[i] * d[i]
  void (*opponent)(const double* a, const double* b, const double* c,
                   const double* d, double* out, std::size_t n);
  // out[i] = max(a[i], b[i])
  void (*max2)(const double* a, const double* b, double* out, std::size_t n);
  // Correlation of one output row against a padded field:
  //   out[i] = sum_{ky,kx} src[ky * stride + i + kx] * k[ky * ksize + kx]
  // src points at the top-left tap of the window for out[0]. Taps accumulate
  // in row-major order with one rounding per multiply and per add.
  void (*conv_row)(const double* src, std::size_t stride, const double* k,
                   int ksize, double* out, std::size_t n);
};

// Active table; selected once at startup (best available backend, overridable
// via the RETMOT_SIMD environment variable: scalar|avx2|neon).
const OpTable& table();
Backend active_backend();

// Explicit selection, primarily for tests and the CLI --backend flag.
// Returns false if the backend is not available on this machine.
bool set_backend(Backend b);
std::vector<Backend> available_backends();

}  // namespace retmot::ops

#endif  // RETMOT_OPS_HPP_
