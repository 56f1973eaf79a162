// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include "ops_impl.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace retmot::ops {
namespace {

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#ifdef RETMOT_HAVE_AVX2_BUILD
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Backend::neon:
#ifdef RETMOT_HAVE_NEON_BUILD
      return true;  // baseline on aarch64
#else
      return false;
#endif
  }
  return false;
}

const OpTable& table_for(Backend b) {
  switch (b) {
#ifdef RETMOT_HAVE_AVX2_BUILD
    case Backend::avx2:
      return avx2_table();
#endif
#ifdef RETMOT_HAVE_NEON_BUILD
    case Backend::neon:
      return neon_table();
#endif
    default:
      return scalar_table();
  }
}

Backend pick_default() {
  if (const char* env = std::getenv("RETMOT_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && backend_available(Backend::avx2))
      return Backend::avx2;
    if (std::strcmp(env, "neon") == 0 && backend_available(Backend::neon))
      return Backend::neon;
  }
  if (backend_available(Backend::avx2)) return Backend::avx2;
  if (backend_available(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{pick_default()};
  return b;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "?";
}

const OpTable& table() { return table_for(current().load()); }

Backend active_backend() { return current().load(); }

bool set_backend(Backend b) {
  if (!backend_available(b)) return false;
  current().store(b);
  return true;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> v;
  for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon})
    if (backend_available(b)) v.push_back(b);
  return v;
}

}  // namespace retmot::ops
