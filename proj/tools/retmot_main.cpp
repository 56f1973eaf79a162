// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0
//
// Command-line front end: scene synthesis, pipeline runs, threshold sweeps,
// tuning curves, detection scoring, and the closed-form filter tables.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "retmot/config.hpp"
#include "retmot/image_io.hpp"
#include "retmot/metrics.hpp"
#include "retmot/ops.hpp"
#include "retmot/pipeline.hpp"
#include "retmot/synth.hpp"
#include "retmot/temporal.hpp"

namespace fs = std::filesystem;
using namespace retmot;

namespace {

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stod(item));
  }
  if (values.empty())
    throw CLI::ValidationError("expected a comma-separated number list");
  return values;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  for (double v : parse_double_list(text)) values.push_back(static_cast<int>(v));
  return values;
}

std::pair<int, int> parse_size(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos)
    throw CLI::ValidationError("expected WxH, e.g. 320x240");
  return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
}

RunConfig load_config(const std::string& path) {
  if (path.empty()) return RunConfig{};
  return RunConfig::from_file(path);
}

void apply_backend_flag(const std::string& backend) {
  if (backend.empty()) return;
  ops::Backend b = ops::Backend::scalar;
  if (backend == "avx2") b = ops::Backend::avx2;
  else if (backend == "neon") b = ops::Backend::neon;
  else if (backend != "scalar")
    throw CLI::ValidationError("--backend must be scalar, avx2 or neon");
  if (!ops::set_backend(b))
    throw CLI::ValidationError(std::string("backend '") + backend +
                               "' is not available on this machine");
}

void write_kernel_csv(const std::string& path, const Kernel2D& k) {
  std::ofstream out(path);
  out << std::setprecision(17);
  for (int dy = -k.radius(); dy <= k.radius(); ++dy) {
    for (int dx = -k.radius(); dx <= k.radius(); ++dx) {
      if (dx > -k.radius()) out << ',';
      out << k.at(dx, dy);
    }
    out << '\n';
  }
}

void dump_kernels(const std::string& dir, const Pipeline& pipe,
                  const RunConfig& cfg) {
  fs::create_directories(dir);
  const auto& bank = pipe.bank();
  for (int k = 0; k < kNumOrientations; ++k) {
    write_kernel_csv(dir + "/gabor_even_" + std::to_string(k * 45) + ".csv",
                     bank.gabor_even(k));
    write_kernel_csv(dir + "/gabor_odd_" + std::to_string(k * 45) + ".csv",
                     bank.gabor_odd(k));
  }
  write_kernel_csv(dir + "/center_surround.csv", bank.center_surround());
  write_kernel_csv(dir + "/dog.csv",
                   dog_kernel(cfg.frontend.dog_gain, cfg.frontend.dog_sigma1,
                              cfg.frontend.dog_sigma2, cfg.frontend.dog_size));
}

FrameBuffer scaled_for_display(const FrameBuffer& f) {
  FrameBuffer out(f.width(), f.height());
  const double lo = f.min();
  const double hi = f.max();
  const double inv = hi > lo ? 255.0 / (hi - lo) : 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = (f[i] - lo) * inv;
  return out;
}

std::string frame_name(const char* stem, int index, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%05d.%s", stem, index, ext);
  return buf;
}

int cmd_run(const std::string& frames_dir, const std::string& config_path,
            const std::string& out_dir, double gamma_override,
            bool no_inhibition, const std::string& resize,
            bool dump_activations, const std::string& kernels_dir,
            bool also_json) {
  RunConfig cfg = load_config(config_path);
  if (gamma_override >= 0.0) cfg.detector.gamma = gamma_override;
  if (no_inhibition) cfg.inhibition = false;

  int rw = 0, rh = 0;
  if (!resize.empty()) std::tie(rw, rh) = parse_size(resize);
  DirectoryFrameSource source(frames_dir, rw, rh);

  auto first = source.next();
  if (!first) throw std::runtime_error("no frames found");
  Pipeline pipe(cfg, first->width(), first->height());
  if (!kernels_dir.empty()) dump_kernels(kernels_dir, pipe, cfg);

  fs::create_directories(out_dir);
  std::ofstream timing(out_dir + "/timing.csv");
  timing << "frame,activation_ms,detection_ms\n" << std::setprecision(6);

  const Kernel2D smooth = gaussian_kernel(1.5, 9);
  std::vector<Detection> all;
  std::optional<FrameBuffer> frame = std::move(first);
  while (frame) {
    const auto t0 = std::chrono::steady_clock::now();
    const Activations act = pipe.step(*frame);
    const auto t1 = std::chrono::steady_clock::now();
    const FrameDetections det = pipe.detect(act);
    const auto t2 = std::chrono::steady_clock::now();
    all.insert(all.end(), det.detections.begin(), det.detections.end());

    const double act_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double det_ms =
        std::chrono::duration<double, std::milli>(t2 - t1).count();
    timing << act.frame_index << ',' << act_ms << ',' << det_ms << '\n';

    if (dump_activations) {
      write_pgm(out_dir + "/" + frame_name("v", act.frame_index, "pgm"),
                scaled_for_display(act.base.v));
      write_pgm(out_dir + "/" + frame_name("vi", act.frame_index, "pgm"),
                scaled_for_display(det.field.v));
      write_pgm(out_dir + "/" + frame_name("vi_smooth", act.frame_index, "pgm"),
                scaled_for_display(convolve2d(det.field.v, smooth)));
    }
    frame = source.next();
  }

  write_detections_csv(out_dir + "/detections.csv", all);
  if (also_json) write_detections_json(out_dir + "/detections.json", all);
  std::cout << "frames: " << pipe.frames_seen() << "  detections: "
            << all.size() << "  backend: "
            << ops::backend_name(ops::active_backend()) << "\n";
  return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir,
              const std::string& format) {
  if (format != "pgm" && format != "png")
    throw CLI::ValidationError("--format must be pgm or png");
  const SceneSpec spec = scene_from_file(spec_path);
  SceneRenderer scene(spec);
  fs::create_directories(out_dir);
  for (int f = 0; f < scene.n_frames(); ++f)
    write_gray_image(out_dir + "/" + frame_name("frame", f, format.c_str()),
                     scene.render(f));
  write_truth_csv(out_dir + "/truth.csv", scene.all_truth());
  std::cout << "wrote " << scene.n_frames() << " frames and truth.csv to "
            << out_dir << "\n";
  return 0;
}

int cmd_eval(const std::string& det_path, const std::string& truth_path,
             const std::string& rule_text, double fov, int width,
             int frames_override) {
  const MatchRule rule = parse_match_rule(rule_text);
  const auto dets = read_detections_csv(det_path);
  const TruthTable truth = read_truth_csv(truth_path);
  const double px_per_deg = width / fov;

  std::map<int, std::vector<Detection>> by_frame;
  int max_frame = -1;
  for (const auto& d : dets) {
    by_frame[d.frame_index].push_back(d);
    max_frame = std::max(max_frame, d.frame_index);
  }
  long long tp = 0, fp = 0, n_at = 0;
  for (const auto& [frame, rows] : truth) {
    max_frame = std::max(max_frame, frame);
    n_at += static_cast<long long>(rows.size());
    const auto it = by_frame.find(frame);
    static const std::vector<Detection> kNone;
    const auto& frame_dets = it == by_frame.end() ? kNone : it->second;
    const MatchResult m = match_detections(
        frame_dets, rows, rule.coeff, rule.offset_deg * px_per_deg);
    tp += m.true_positives;
    fp += m.false_positives;
  }
  // Detections on frames without truth rows are all false positives.
  for (const auto& [frame, frame_dets] : by_frame)
    if (truth.find(frame) == truth.end())
      fp += static_cast<long long>(frame_dets.size());

  const int frames = frames_override > 0 ? frames_override : max_frame + 1;
  const RocPoint p = tally_to_point(0.0, tp, n_at, fp, frames);
  std::cout << std::setprecision(6) << "tpr=" << p.tpr << " fpr=" << p.fpr
            << " tp=" << tp << " fp=" << fp << " targets=" << n_at
            << " frames=" << frames << "\n";
  return 0;
}

int cmd_tune(const std::string& var_name, const std::string& grid_text,
             const std::string& config_path, const std::string& out_path,
             bool normalize) {
  TuningVariable var;
  if (var_name == "contrast") var = TuningVariable::contrast;
  else if (var_name == "size") var = TuningVariable::size;
  else if (var_name == "velocity") var = TuningVariable::velocity;
  else throw CLI::ValidationError("--var must be contrast, size or velocity");

  const RunConfig cfg = load_config(config_path);
  const auto curve = tuning_sweep(var, parse_double_list(grid_text), cfg);
  write_tuning_csv(out_path, curve, cfg, normalize);
  std::cout << "wrote " << curve.size() << " points to " << out_path << "\n";
  return 0;
}

int cmd_oracle(bool impulse, bool extrema, const std::string& n_list_text,
               double decay, double transmission, double tau, double gain,
               int tap_offset, double dt, double tmax,
               const std::string& out_path) {
  if (impulse == extrema)
    throw CLI::ValidationError("choose exactly one of --impulse / --extrema");
  const std::vector<int> n_list = parse_int_list(n_list_text);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << std::setprecision(17);

  CascadeParams params;
  params.decay = decay;
  params.transmission = transmission;
  params.tau = tau;
  params.gain = gain;
  params.tap_offset = tap_offset;
  params.dt = dt;

  if (impulse) {
    out << "t";
    for (int n : n_list) out << ",n" << n;
    out << '\n';
    const int steps = static_cast<int>(tmax / dt);
    for (int s = 0; s <= steps; ++s) {
      const double t = s * dt;
      out << t;
      for (int n : n_list) out << ',' << impulse_response_analytic(params, n, t);
      out << '\n';
    }
  } else {
    out << "n,t_max,t_min\n";
    for (int n : n_list) {
      const auto [t1, t2] = extrema_times(params.a(), params.b(), n);
      out << n << ',' << t1 << ',' << t2 << '\n';
    }
  }
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_roc(const std::string& frames_dir, const std::string& truth_path,
            const std::string& config_path, const std::string& gammas_text,
            bool no_inhibition, const std::string& resize, bool stns,
            const std::string& out_path) {
  RunConfig cfg = load_config(config_path);
  if (stns) {
    // Real-footage protocol: tighter clustering on denser scenes, wide-field
    // surround, and an assumed 80-degree view.
    cfg.detector.eps = 2.0;
    cfg.detector.min_points = 8;
    cfg.spatial.cs_size = 21;
    cfg.spatial.cs_lambda = 0.0;
    cfg.spatial.cs_sigma = 1.5;
    cfg.fov_deg = 80.0;
  }
  if (no_inhibition) cfg.inhibition = false;

  int rw = 0, rh = 0;
  if (!resize.empty()) std::tie(rw, rh) = parse_size(resize);
  DirectoryFrameSource source(frames_dir, rw, rh);
  const TruthTable truth = read_truth_csv(truth_path);
  const std::vector<double> gammas = gammas_text.empty()
                                         ? default_gamma_grid()
                                         : parse_double_list(gammas_text);
  const auto curve = roc_sweep(source, truth, cfg, gammas, cfg.inhibition);
  write_roc_csv(out_path, curve, cfg);
  std::cout << "wrote " << curve.size() << " points to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"retinal motion pipeline for small moving targets"};
  app.require_subcommand(1);

  std::string backend;
  app.add_option("--backend", backend, "force kernel backend: scalar|avx2|neon");

  // run
  auto* run = app.add_subcommand("run", "process a frame directory");
  std::string run_frames, run_config, run_out, run_resize, run_kernels;
  double run_gamma = -1.0;
  bool run_noinh = false, run_dump = false, run_json = false;
  run->add_option("--frames", run_frames, "input frame directory")->required();
  run->add_option("--config", run_config, "config file");
  run->add_option("--out", run_out, "output directory")->required();
  run->add_option("--gamma", run_gamma, "detection threshold override");
  run->add_flag("--no-inhibition", run_noinh, "skip directional inhibition");
  run->add_option("--resize", run_resize, "resize input frames, WxH");
  run->add_flag("--dump-activations", run_dump, "write activation images");
  run->add_option("--dump-kernels", run_kernels, "write kernel CSVs here");
  run->add_flag("--json", run_json, "also write detections.json");

  // synth
  auto* synth = app.add_subcommand("synth", "render a synthetic scene");
  std::string synth_spec, synth_out, synth_format = "pgm";
  synth->add_option("--spec", synth_spec, "scene spec file")->required();
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--format", synth_format, "frame format: pgm|png");

  // eval
  auto* eval = app.add_subcommand("eval", "score detections against truth");
  std::string eval_dets, eval_truth, eval_rule = "0.5d+1";
  double eval_fov = 32.0;
  int eval_width = 128, eval_frames = 0;
  eval->add_option("--detections", eval_dets)->required();
  eval->add_option("--truth", eval_truth)->required();
  eval->add_option("--dth-rule", eval_rule, "match radius rule, e.g. 0.5d+1");
  eval->add_option("--fov", eval_fov, "field of view in degrees");
  eval->add_option("--width", eval_width, "frame width in pixels");
  eval->add_option("--frames", eval_frames, "total frame count override");

  // tune
  auto* tune = app.add_subcommand("tune", "response curve over a stimulus grid");
  std::string tune_var, tune_grid, tune_config, tune_out;
  bool tune_norm = false;
  tune->add_option("--var", tune_var, "contrast|size|velocity")->required();
  tune->add_option("--grid", tune_grid, "comma-separated values")->required();
  tune->add_option("--config", tune_config, "config file");
  tune->add_option("--out", tune_out, "output CSV")->required();
  tune->add_flag("--normalize", tune_norm, "append a min-max column");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "closed-form temporal filter");
  bool or_impulse = false, or_extrema = false;
  std::string or_nlist = "2,3,4,5", or_out;
  double or_decay = 60.0, or_trans = 60.0, or_tau = 8.0, or_gain = 5.0;
  double or_dt = 0.001, or_tmax = 1.5;
  int or_m = 1;
  oracle->add_flag("--impulse", or_impulse, "impulse-response table");
  oracle->add_flag("--extrema", or_extrema, "extremum-time table");
  oracle->add_option("--n-list", or_nlist, "tap depths");
  oracle->add_option("--decay", or_decay, "A");
  oracle->add_option("--transmission", or_trans, "C");
  oracle->add_option("--tau", or_tau);
  oracle->add_option("--gain", or_gain, "K");
  oracle->add_option("--tap-offset", or_m, "m");
  oracle->add_option("--dt", or_dt, "table time step");
  oracle->add_option("--tmax", or_tmax, "table end time");
  oracle->add_option("--out", or_out, "output CSV")->required();

  // roc
  auto* roc = app.add_subcommand("roc", "threshold sweep against truth");
  std::string roc_frames, roc_truth, roc_config, roc_gammas, roc_resize,
      roc_out;
  bool roc_noinh = false, roc_stns = false;
  roc->add_option("--frames", roc_frames)->required();
  roc->add_option("--truth", roc_truth)->required();
  roc->add_option("--config", roc_config, "config file");
  roc->add_option("--gammas", roc_gammas, "comma-separated thresholds");
  roc->add_flag("--no-inhibition", roc_noinh);
  roc->add_option("--resize", roc_resize, "resize input frames, WxH");
  roc->add_flag("--stns", roc_stns, "real-footage protocol preset");
  roc->add_option("--out", roc_out, "output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    apply_backend_flag(backend);
    if (*run)
      return cmd_run(run_frames, run_config, run_out, run_gamma, run_noinh,
                     run_resize, run_dump, run_kernels, run_json);
    if (*synth) return cmd_synth(synth_spec, synth_out, synth_format);
    if (*eval)
      return cmd_eval(eval_dets, eval_truth, eval_rule, eval_fov, eval_width,
                      eval_frames);
    if (*tune)
      return cmd_tune(tune_var, tune_grid, tune_config, tune_out, tune_norm);
    if (*oracle)
      return cmd_oracle(or_impulse, or_extrema, or_nlist, or_decay, or_trans,
                        or_tau, or_gain, or_m, or_dt, or_tmax, or_out);
    if (*roc)
      return cmd_roc(roc_frames, roc_truth, roc_config, roc_gammas, roc_noinh,
                     roc_resize, roc_stns, roc_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
