// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_METRICS_HPP_
#define RETMOT_METRICS_HPP_

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "retmot/config.hpp"
#include "retmot/detector.hpp"
#include "retmot/image_io.hpp"
#include "retmot/pipeline.hpp"
#include "retmot/synth.hpp"

namespace retmot {

/// |mean(target disc) - mean(surrounding annulus)| / 255, annulus width
/// equal to the target diameter. Throws if the annulus leaves the frame.
double weber_contrast(const FrameBuffer& frame, double cx, double cy,
                      double d_px);

struct RocPoint {
  double gamma = 0.0;
  double tpr = 0.0;  // matched truths over all truths
  double fpr = 0.0;  // false positives per frame
  long long true_detections = 0;
  long long actual_targets = 0;
  long long false_positives = 0;
  int frames = 0;
};

RocPoint tally_to_point(double gamma, long long tp, long long n_at,
                        long long fp, int frames);

/// Truth rows grouped by frame for matching.
using TruthTable = std::map<int, std::vector<TruthPoint>>;

TruthTable truth_table_from_records(const std::vector<TruthRecord>& records);

/// Default threshold grid: 0.01..0.09 step 0.01 plus 0.1..0.9 step 0.1.
std::vector<double> default_gamma_grid();

/// One activation pass over the sequence; detection re-runs per gamma.
/// Matching radius comes from config.match applied per truth row.
std::vector<RocPoint> roc_sweep(FrameSource& frames, const TruthTable& truth,
                                const RunConfig& config,
                                const std::vector<double>& gammas,
                                bool inhibition);

/// Linear interpolation of TPR at the requested FPR along a sweep (the
/// sweep's points are sorted by FPR internally). Clamps to the curve ends.
double tpr_at_fpr(const std::vector<RocPoint>& curve, double fpr);

struct TuningPoint {
  double value = 0.0;          // swept variable
  double mean_response = 0.0;  // mean V over the target neighborhood
};

enum class TuningVariable { contrast, size, velocity };

/// Single dark target bouncing on a white field; per grid value the mean V
/// over pixels within (d/2 + margin) of the true center, averaged over
/// post-transient frames.
std::vector<TuningPoint> tuning_sweep(TuningVariable var,
                                      const std::vector<double>& grid,
                                      const RunConfig& config);

/// Motion-energy sum per orientation over the detected target's point set.
struct PolarRow {
  int frame = 0;
  std::array<double, kNumOrientations> energy{};
  bool detected = false;
};

std::vector<PolarRow> energy_polar(Pipeline& pipeline, FrameSource& frames,
                                   double gamma);

// Report writers. Every file is written in one shot with a header row that
// carries the config hash where a config is involved.
void write_detections_csv(const std::string& path,
                          const std::vector<Detection>& detections);
void write_detections_json(const std::string& path,
                           const std::vector<Detection>& detections);
std::vector<Detection> read_detections_csv(const std::string& path);

void write_truth_csv(const std::string& path,
                     const std::vector<TruthRecord>& records);
TruthTable read_truth_csv(const std::string& path);

void write_roc_csv(const std::string& path, const std::vector<RocPoint>& curve,
                   const RunConfig& config);
void write_tuning_csv(const std::string& path,
                      const std::vector<TuningPoint>& curve,
                      const RunConfig& config, bool normalized);
void write_polar_csv(const std::string& path,
                     const std::vector<PolarRow>& rows);

}  // namespace retmot

#endif  // RETMOT_METRICS_HPP_
