// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include "retmot/frontend.hpp"

#include <cmath>
#include <stdexcept>

#include "retmot/ops.hpp"

namespace retmot {

PhotoreceptorState::PhotoreceptorState(int depth, double u) : depth_(depth) {
  if (depth < 0) throw std::invalid_argument("PhotoreceptorState: depth < 0");
  coeffs_.reserve(depth);
  for (int i = 1; i <= depth; ++i)
    coeffs_.push_back(1.0 / (1.0 + std::exp(u * i)));
}

void PhotoreceptorState::reset() {
  history_.clear();
  prev_frame_ = FrameBuffer();
  primed_ = false;
}

FrameBuffer PhotoreceptorState::update(const FrameBuffer& frame) {
  if (!frame.all_finite())
    throw std::invalid_argument("photoreceptor: non-finite input");
  if (!primed_) {
    prev_frame_ = frame;
    primed_ = true;
    FrameBuffer zero(frame.width(), frame.height(), 0.0);
    history_.push_front(zero);
    while (static_cast<int>(history_.size()) > depth_) history_.pop_back();
    return zero;
  }
  require_same_size(frame, prev_frame_, "photoreceptor");

  FrameBuffer out(frame.width(), frame.height());
  const auto& t = ops::table();
  t.sub(frame.data(), prev_frame_.data(), out.data(), out.size());
  for (std::size_t i = 0; i < history_.size(); ++i)
    t.scale_add(1.0, out.data(), coeffs_[i], history_[i].data(), out.data(),
                out.size());

  prev_frame_ = frame;
  history_.push_front(out);
  while (static_cast<int>(history_.size()) > depth_) history_.pop_back();
  return out;
}

std::pair<FrameBuffer, FrameBuffer> onoff_split(const FrameBuffer& change) {
  FrameBuffer on(change.width(), change.height());
  FrameBuffer off(change.width(), change.height());
  ops::table().halfwave_split(change.data(), on.data(), off.data(),
                              change.size());
  return {std::move(on), std::move(off)};
}

FrameBuffer bipolar_bandpass(const FrameBuffer& channel, const Kernel2D& dog) {
  return convolve2d(channel, dog);
}

}  // namespace retmot
