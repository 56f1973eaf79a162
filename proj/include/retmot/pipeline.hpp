// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_PIPELINE_HPP_
#define RETMOT_PIPELINE_HPP_

#include <memory>
#include <vector>

#include "retmot/config.hpp"
#include "retmot/detector.hpp"
#include "retmot/frontend.hpp"
#include "retmot/ganglion.hpp"
#include "retmot/spatial.hpp"
#include "retmot/temporal.hpp"

namespace retmot {

/// Everything a frame's worth of filtering produces before any threshold is
/// applied. Detection is a pure function of this, so threshold sweeps reuse
/// one activation pass.
struct Activations {
  EnergyTensor energy;
  FrameBuffer wa_on;
  FrameBuffer wa_off;
  GanglionField base;  // V and its polarity components
  int frame_index = 0;
};

struct FrameDetections {
  std::vector<Detection> candidates;  // first pass, before inhibition
  std::vector<int> inhibited;         // orientation indices
  GanglionField field;                // V' (or V when nothing is inhibited)
  std::vector<Detection> detections;  // final
  std::vector<std::vector<PixelPoint>> clusters;  // member pixels, final pass
};

/// One stateful instance per frame sequence. step() must be called in frame
/// order; detect() is const and may be called any number of times per frame.
class Pipeline {
public:
  Pipeline(const RunConfig& config, int width, int height);

  Activations step(const FrameBuffer& frame);

  FrameDetections detect(const Activations& act, double gamma,
                         bool inhibition) const;
  FrameDetections detect(const Activations& act) const {
    return detect(act, config_.detector.gamma, config_.inhibition);
  }

  const RunConfig& config() const { return config_; }
  const KernelBank& bank() const { return bank_; }
  int frames_seen() const { return frame_index_; }
  void reset();

private:
  RunConfig config_;
  KernelBank bank_;
  Kernel2D dog_;
  PhotoreceptorState photoreceptor_;
  CascadeState cascade_on_;
  CascadeState cascade_off_;
  int frame_index_ = 0;
};

}  // namespace retmot

#endif  // RETMOT_PIPELINE_HPP_
