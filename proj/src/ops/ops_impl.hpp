// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_OPS_IMPL_HPP_
#define RETMOT_OPS_IMPL_HPP_

#include "retmot/ops.hpp"

namespace retmot::ops {

const OpTable& scalar_table();

#if defined(__x86_64__) || defined(_M_X64)
#define RETMOT_HAVE_AVX2_BUILD 1
const OpTable& avx2_table();
#endif

#if defined(__aarch64__)
#define RETMOT_HAVE_NEON_BUILD 1
const OpTable& neon_table();
#endif

}  // namespace retmot::ops

#endif  // RETMOT_OPS_IMPL_HPP_
