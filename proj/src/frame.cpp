// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include "retmot/frame.hpp"

#include <cmath>
#include <limits>

namespace retmot {

double FrameBuffer::min() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : data_)
    if (v < m) m = v;
  return m;
}

double FrameBuffer::max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : data_)
    if (v > m) m = v;
  return m;
}

double FrameBuffer::sum() const {
  double s = 0.0;
  for (double v : data_) s += v;
  return s;
}

bool FrameBuffer::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace retmot
