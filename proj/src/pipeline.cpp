// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include "retmot/pipeline.hpp"

#include "retmot/ops.hpp"

namespace retmot {

Pipeline::Pipeline(const RunConfig& config, int width, int height)
    : config_(config),
      bank_(config.spatial),
      dog_(config.frontend.dog_balanced
               ? dog_kernel_balanced(config.frontend.dog_gain,
                                     config.frontend.dog_sigma1,
                                     config.frontend.dog_sigma2,
                                     config.frontend.dog_size)
               : dog_kernel(config.frontend.dog_gain,
                            config.frontend.dog_sigma1,
                            config.frontend.dog_sigma2,
                            config.frontend.dog_size)),
      photoreceptor_(config.frontend.history_depth, config.frontend.decay_shape),
      cascade_on_(config.temporal, width, height),
      cascade_off_(config.temporal, width, height) {}

void Pipeline::reset() {
  photoreceptor_.reset();
  cascade_on_.reset();
  cascade_off_.reset();
  frame_index_ = 0;
}

Activations Pipeline::step(const FrameBuffer& frame) {
  const FrameBuffer change = photoreceptor_.update(frame);
  auto [on, off] = onoff_split(change);
  const FrameBuffer on_bp = bipolar_bandpass(on, dog_);
  const FrameBuffer off_bp = bipolar_bandpass(off, dog_);

  cascade_on_.step(on_bp);
  cascade_off_.step(off_bp);
  const FastSlow on_ts = fast_slow_responses(cascade_on_);
  const FastSlow off_ts = fast_slow_responses(cascade_off_);

  Activations act;
  act.frame_index = frame_index_++;
  act.wa_on = wac_mediate(on_ts.slow, bank_.center_surround());
  act.wa_off = wac_mediate(off_ts.slow, bank_.center_surround());

  // Opposite orientations share kernels up to the odd filter's sign, so the
  // energy planes for theta + pi are exact negations of theta's.
  const auto& t = ops::table();
  for (int k = 0; k < kNumOrientations / 2; ++k) {
    const SacSlice on_sac = sac_filter(on_ts.slow, on_ts.fast, bank_, k);
    const SacSlice off_sac = sac_filter(off_ts.slow, off_ts.fast, bank_, k);
    act.energy.on[k] = motion_energy(on_sac.a_slow, on_sac.b_slow,
                                     on_sac.a_fast, on_sac.b_fast);
    act.energy.off[k] = motion_energy(off_sac.a_slow, off_sac.b_slow,
                                      off_sac.a_fast, off_sac.b_fast);
    const int opposite = k + kNumOrientations / 2;
    act.energy.on[opposite] = FrameBuffer(frame.width(), frame.height());
    act.energy.off[opposite] = FrameBuffer(frame.width(), frame.height());
    t.scale_add(-1.0, act.energy.on[k].data(), 0.0, act.energy.on[k].data(),
                act.energy.on[opposite].data(), act.energy.on[k].size());
    t.scale_add(-1.0, act.energy.off[k].data(), 0.0, act.energy.off[k].data(),
                act.energy.off[opposite].data(), act.energy.off[k].size());
  }
  for (int k = 0; k < kNumOrientations; ++k)
    act.energy.combined[k] = combine_onoff(
        act.energy.on[k], act.energy.off[k], config_.ganglion.w_on,
        config_.ganglion.w_off);
  finalize_energy_maxima(act.energy);
  act.energy.direction =
      direction_map(act.energy.combined[0], act.energy.combined[2]);

  act.base =
      ganglion_response(act.energy, act.wa_on, act.wa_off, config_.ganglion);
  return act;
}

namespace {

struct DetectorPass {
  std::vector<Detection> detections;
  std::vector<std::vector<PixelPoint>> clusters;
};

DetectorPass run_detector(const FrameBuffer& activation,
                          const EnergyTensor& energy,
                          const ClusterConfig& cluster, double gamma,
                          int frame_index) {
  const FrameBuffer norm = minmax_norm(activation);
  const auto points = threshold_select(norm, gamma);
  DetectorPass pass;
  pass.clusters = dbscan(points, cluster.eps, cluster.min_points);
  pass.detections.reserve(pass.clusters.size());
  for (const auto& c : pass.clusters)
    pass.detections.push_back(
        cluster_readout(c, energy.max_combined, energy.direction, frame_index));
  return pass;
}

}  // namespace

FrameDetections Pipeline::detect(const Activations& act, double gamma,
                                 bool inhibition) const {
  FrameDetections out;
  if (!inhibition) {
    out.field = act.base;
    DetectorPass pass = run_detector(act.base.v, act.energy, config_.detector,
                                     gamma, act.frame_index);
    out.detections = pass.detections;
    out.candidates = std::move(pass.detections);
    out.clusters = std::move(pass.clusters);
    return out;
  }

  DetectorPass first = run_detector(act.base.v, act.energy, config_.detector,
                                    gamma, act.frame_index);
  out.candidates = std::move(first.detections);
  std::vector<double> directions;
  directions.reserve(out.candidates.size());
  for (const auto& d : out.candidates) directions.push_back(d.direction);
  out.inhibited =
      inhibition_set(directions, config_.ganglion.crowd_threshold);

  if (out.inhibited.empty()) {
    out.field = act.base;
    out.detections = out.candidates;
    out.clusters = std::move(first.clusters);
    return out;
  }
  out.field = apply_inhibition(act.base, act.energy, act.wa_on, act.wa_off,
                               out.inhibited, config_.ganglion);
  DetectorPass second = run_detector(out.field.v, act.energy, config_.detector,
                                     gamma, act.frame_index);
  out.detections = std::move(second.detections);
  out.clusters = std::move(second.clusters);
  return out;
}

}  // namespace retmot
