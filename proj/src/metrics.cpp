// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include "retmot/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace retmot {

double weber_contrast(const FrameBuffer& frame, double cx, double cy,
                      double d_px) {
  const double r_in = d_px / 2.0;
  const double r_out = r_in + d_px;  // annulus width = diameter
  if (cx - r_out < -0.5 || cx + r_out > frame.width() - 0.5 ||
      cy - r_out < -0.5 || cy + r_out > frame.height() - 0.5)
    throw std::invalid_argument("weber_contrast: region leaves the frame");

  double sum_t = 0.0, sum_b = 0.0;
  long n_t = 0, n_b = 0;
  const int x_lo = static_cast<int>(std::floor(cx - r_out));
  const int x_hi = static_cast<int>(std::ceil(cx + r_out));
  const int y_lo = static_cast<int>(std::floor(cy - r_out));
  const int y_hi = static_cast<int>(std::ceil(cy + r_out));
  for (int y = y_lo; y <= y_hi; ++y)
    for (int x = x_lo; x <= x_hi; ++x) {
      if (x < 0 || y < 0 || x >= frame.width() || y >= frame.height())
        continue;
      const double dist = std::hypot(x - cx, y - cy);
      if (dist <= r_in) {
        sum_t += frame.at(x, y);
        ++n_t;
      } else if (dist <= r_out) {
        sum_b += frame.at(x, y);
        ++n_b;
      }
    }
  if (n_t == 0 || n_b == 0)
    throw std::invalid_argument("weber_contrast: degenerate region");
  return std::abs(sum_t / n_t - sum_b / n_b) / 255.0;
}

RocPoint tally_to_point(double gamma, long long tp, long long n_at,
                        long long fp, int frames) {
  if (n_at <= 0)
    throw std::invalid_argument("tpr: run contains no actual targets");
  if (frames <= 0) throw std::invalid_argument("tpr: empty run");
  RocPoint p;
  p.gamma = gamma;
  p.true_detections = tp;
  p.actual_targets = n_at;
  p.false_positives = fp;
  p.frames = frames;
  p.tpr = static_cast<double>(tp) / static_cast<double>(n_at);
  p.fpr = static_cast<double>(fp) / static_cast<double>(frames);
  return p;
}

TruthTable truth_table_from_records(const std::vector<TruthRecord>& records) {
  TruthTable table;
  for (const auto& r : records)
    table[r.frame].push_back({r.x, r.y, r.d_px});
  return table;
}

std::vector<double> default_gamma_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 9; ++i) g.push_back(i * 0.01);
  for (int i = 1; i <= 9; ++i) g.push_back(i * 0.1);
  return g;
}

std::vector<RocPoint> roc_sweep(FrameSource& frames, const TruthTable& truth,
                                const RunConfig& config,
                                const std::vector<double>& gammas,
                                bool inhibition) {
  frames.reset();
  auto first = frames.next();
  if (!first) throw std::runtime_error("roc_sweep: empty frame sequence");

  Pipeline pipe(config, first->width(), first->height());
  const double offset_px =
      config.match.offset_deg * config.px_per_deg(first->width());

  std::vector<long long> tp(gammas.size(), 0), fp(gammas.size(), 0);
  long long n_at = 0;
  int frame_idx = 0;

  std::optional<FrameBuffer> frame = std::move(first);
  while (frame) {
    const Activations act = pipe.step(*frame);
    static const std::vector<TruthPoint> kNone;
    const auto it = truth.find(frame_idx);
    const std::vector<TruthPoint>& rows = it == truth.end() ? kNone : it->second;
    n_at += static_cast<long long>(rows.size());
    for (std::size_t g = 0; g < gammas.size(); ++g) {
      const FrameDetections det = pipe.detect(act, gammas[g], inhibition);
      const MatchResult m = match_detections(det.detections, rows,
                                             config.match.coeff, offset_px);
      tp[g] += m.true_positives;
      fp[g] += m.false_positives;
    }
    ++frame_idx;
    frame = frames.next();
  }

  std::vector<RocPoint> curve;
  curve.reserve(gammas.size());
  for (std::size_t g = 0; g < gammas.size(); ++g)
    curve.push_back(tally_to_point(gammas[g], tp[g], n_at, fp[g], frame_idx));
  return curve;
}

double tpr_at_fpr(const std::vector<RocPoint>& curve, double fpr) {
  if (curve.empty()) throw std::invalid_argument("tpr_at_fpr: empty curve");
  std::vector<RocPoint> pts = curve;
  std::sort(pts.begin(), pts.end(),
            [](const RocPoint& a, const RocPoint& b) { return a.fpr < b.fpr; });
  if (fpr <= pts.front().fpr) return pts.front().tpr;
  if (fpr >= pts.back().fpr) return pts.back().tpr;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].fpr < fpr) continue;
    const double span = pts[i].fpr - pts[i - 1].fpr;
    if (span <= 0.0) return std::max(pts[i].tpr, pts[i - 1].tpr);
    const double w = (fpr - pts[i - 1].fpr) / span;
    return pts[i - 1].tpr + w * (pts[i].tpr - pts[i - 1].tpr);
  }
  return pts.back().tpr;
}

std::vector<TuningPoint> tuning_sweep(TuningVariable var,
                                      const std::vector<double>& grid,
                                      const RunConfig& config) {
  constexpr int kTransient = 25;
  constexpr int kMeasured = 75;
  constexpr double kSmearPx = 4.0;  // filter footprint around the disc

  std::vector<TuningPoint> curve;
  for (double value : grid) {
    SceneSpec spec;
    spec.width = 128;
    spec.height = 128;
    spec.fov_deg = config.fov_deg;
    spec.frame_rate_hz = config.frame_rate_hz;
    spec.n_frames = kTransient + kMeasured;
    spec.background.mode = BackgroundSpec::Mode::uniform;
    spec.background.luminance = 1.0;
    TargetSpec target;
    target.diameter_deg = 3.0;
    target.luminance = 0.0;
    target.speed_deg_s = 300.0;
    target.path = TargetSpec::Path::linear;
    target.angle_deg = 0.0;
    switch (var) {
      case TuningVariable::contrast:
        target.luminance = 1.0 - value;
        break;
      case TuningVariable::size:
        target.diameter_deg = value;
        break;
      case TuningVariable::velocity:
        target.speed_deg_s = value;
        break;
    }
    spec.targets.push_back(target);

    SceneRenderer scene(spec);
    Pipeline pipe(config, spec.width, spec.height);
    double acc = 0.0;
    long samples = 0;
    const double radius =
        target.diameter_deg * spec.px_per_deg() / 2.0 + kSmearPx;
    for (int f = 0; f < spec.n_frames; ++f) {
      const Activations act = pipe.step(scene.render(f));
      if (f < kTransient) continue;
      // Mean V over the disc plus its recent trail, so fast targets stay
      // inside the measured region.
      const int lag = std::min(f, 3);
      std::vector<std::pair<double, double>> centers;
      for (int back = 0; back <= lag; ++back) {
        const auto rows = scene.truth(f - back);
        centers.emplace_back(rows[0].x, rows[0].y);
      }
      double sum = 0.0;
      long count = 0;
      for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
          bool inside = false;
          for (const auto& [cx, cy] : centers) {
            const double dx = x - cx;
            const double dy = y - cy;
            if (dx * dx + dy * dy <= radius * radius) {
              inside = true;
              break;
            }
          }
          if (inside) {
            sum += act.base.v.at(x, y);
            ++count;
          }
        }
      if (count > 0) {
        acc += sum / count;
        ++samples;
      }
    }
    curve.push_back({value, samples > 0 ? acc / samples : 0.0});
  }
  return curve;
}

std::vector<PolarRow> energy_polar(Pipeline& pipeline, FrameSource& frames,
                                   double gamma) {
  frames.reset();
  std::vector<PolarRow> rows;
  std::optional<FrameBuffer> frame;
  while ((frame = frames.next())) {
    const Activations act = pipeline.step(*frame);
    const FrameDetections det = pipeline.detect(act, gamma, false);
    PolarRow row;
    row.frame = act.frame_index;
    if (!det.clusters.empty()) {
      // Strongest cluster stands in for the target's point set.
      std::size_t best = 0;
      for (std::size_t i = 1; i < det.detections.size(); ++i)
        if (det.detections[i].energy > det.detections[best].energy) best = i;
      row.detected = true;
      for (const auto& p : det.clusters[best])
        for (int k = 0; k < kNumOrientations; ++k)
          row.energy[k] += act.energy.on[k].at(p.x, p.y) +
                           act.energy.off[k].at(p.x, p.y);
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << std::setprecision(17);
  return out;
}

std::string hash_line(const RunConfig& config) {
  std::ostringstream os;
  os << "# config_hash=" << std::hex << config.hash();
  return os.str();
}

}  // namespace

void write_detections_csv(const std::string& path,
                          const std::vector<Detection>& detections) {
  auto out = open_out(path);
  out << "frame,x,y,phi_rad,energy,n_points\n";
  for (const auto& d : detections)
    out << d.frame_index << ',' << d.x << ',' << d.y << ',' << d.direction
        << ',' << d.energy << ',' << d.n_points << '\n';
}

void write_detections_json(const std::string& path,
                           const std::vector<Detection>& detections) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : detections)
    arr.push_back({{"frame", d.frame_index},
                   {"x", d.x},
                   {"y", d.y},
                   {"phi_rad", d.direction},
                   {"energy", d.energy},
                   {"n_points", d.n_points}});
  auto out = open_out(path);
  out << arr.dump(2) << '\n';
}

std::vector<Detection> read_detections_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::vector<Detection> dets;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("frame", 0) == 0)
      continue;
    Detection d;
    char comma;
    std::istringstream ss(line);
    if (!(ss >> d.frame_index >> comma >> d.x >> comma >> d.y >> comma >>
          d.direction >> comma >> d.energy >> comma >> d.n_points))
      throw std::runtime_error("malformed detection row in '" + path + "'");
    dets.push_back(d);
  }
  return dets;
}

void write_truth_csv(const std::string& path,
                     const std::vector<TruthRecord>& records) {
  auto out = open_out(path);
  out << "frame,target_id,x,y,d_px,direction_rad\n";
  for (const auto& r : records)
    out << r.frame << ',' << r.target_id << ',' << r.x << ',' << r.y << ','
        << r.d_px << ',' << r.direction << '\n';
}

TruthTable read_truth_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  TruthTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("frame", 0) == 0)
      continue;
    int frame, id;
    double x, y, d, dir;
    char comma;
    std::istringstream ss(line);
    if (!(ss >> frame >> comma >> id >> comma >> x >> comma >> y >> comma >>
          d >> comma >> dir))
      throw std::runtime_error("malformed truth row in '" + path + "'");
    table[frame].push_back({x, y, d});
  }
  return table;
}

void write_roc_csv(const std::string& path, const std::vector<RocPoint>& curve,
                   const RunConfig& config) {
  auto out = open_out(path);
  out << hash_line(config) << '\n';
  out << "gamma,tpr,fpr,true_detections,actual_targets,false_positives,frames\n";
  for (const auto& p : curve)
    out << p.gamma << ',' << p.tpr << ',' << p.fpr << ',' << p.true_detections
        << ',' << p.actual_targets << ',' << p.false_positives << ','
        << p.frames << '\n';
}

void write_tuning_csv(const std::string& path,
                      const std::vector<TuningPoint>& curve,
                      const RunConfig& config, bool normalized) {
  auto out = open_out(path);
  out << hash_line(config) << '\n';
  double lo = 0.0, hi = 0.0;
  if (normalized && !curve.empty()) {
    lo = hi = curve[0].mean_response;
    for (const auto& p : curve) {
      lo = std::min(lo, p.mean_response);
      hi = std::max(hi, p.mean_response);
    }
  }
  out << (normalized ? "value,mean_response,normalized\n"
                     : "value,mean_response\n");
  for (const auto& p : curve) {
    out << p.value << ',' << p.mean_response;
    if (normalized)
      out << ','
          << (hi > lo ? (p.mean_response - lo) / (hi - lo) : 0.0);
    out << '\n';
  }
}

void write_polar_csv(const std::string& path,
                     const std::vector<PolarRow>& rows) {
  auto out = open_out(path);
  out << "frame,theta_deg,energy,detected\n";
  for (const auto& r : rows)
    for (int k = 0; k < kNumOrientations; ++k)
      out << r.frame << ',' << k * 45 << ',' << r.energy[k] << ','
          << (r.detected ? 1 : 0) << '\n';
}

}  // namespace retmot
