// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_FRAME_HPP_
#define RETMOT_FRAME_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace retmot {

/// 2-D scalar field over the pixel lattice, row-major. Carries the input
/// luminance as well as every intermediate activation plane.
class FrameBuffer {
public:
  FrameBuffer() = default;
  FrameBuffer(int width, int height, double fill = 0.0)
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * height, fill) {
    if (width <= 0 || height <= 0)
      throw std::invalid_argument("FrameBuffer: dimensions must be positive");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double& at(int x, int y) { return data_[idx(x, y)]; }
  double at(int x, int y) const { return data_[idx(x, y)]; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  bool same_size(const FrameBuffer& o) const {
    return width_ == o.width_ && height_ == o.height_;
  }

  void fill(double v) { data_.assign(data_.size(), v); }

  double min() const;
  double max() const;
  double sum() const;
  bool all_finite() const;

private:
  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

inline void require_same_size(const FrameBuffer& a, const FrameBuffer& b,
                              const char* what) {
  if (!a.same_size(b))
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace retmot

#endif  // RETMOT_FRAME_HPP_
