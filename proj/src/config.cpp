// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include "retmot/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace retmot {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void bad_entry(const KvEntry& e, const std::string& why) {
  throw std::runtime_error("config line " + std::to_string(e.line) + ": " +
                           why + " ('" + e.section + "." + e.key + "')");
}

double to_double(const KvEntry& e) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    bad_entry(e, "expected a number, got '" + e.value + "'");
  }
}

int to_int(const KvEntry& e) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    bad_entry(e, "expected an integer, got '" + e.value + "'");
  }
}

bool to_bool(const KvEntry& e) {
  if (e.value == "true" || e.value == "1" || e.value == "on") return true;
  if (e.value == "false" || e.value == "0" || e.value == "off") return false;
  bad_entry(e, "expected a boolean, got '" + e.value + "'");
}

}  // namespace

std::vector<KvEntry> parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::vector<KvEntry> entries;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      // A bare section header still matters (repeated [target] blocks), so
      // record it with an empty key.
      entries.push_back({section, "", "", lineno});
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    entries.push_back(
        {section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno});
  }
  return entries;
}

MatchRule parse_match_rule(const std::string& text) {
  // Accepted shape: "<coeff>d+<offset>" as in "0.5d+1".
  const std::size_t dpos = text.find('d');
  const std::size_t plus = text.find('+', dpos == std::string::npos ? 0 : dpos);
  if (dpos == std::string::npos || plus == std::string::npos)
    throw std::runtime_error("match rule '" + text +
                             "': expected the form '<a>d+<b>'");
  MatchRule rule;
  try {
    rule.coeff = std::stod(text.substr(0, dpos));
    rule.offset_deg = std::stod(text.substr(plus + 1));
  } catch (...) {
    throw std::runtime_error("match rule '" + text + "': bad numbers");
  }
  return rule;
}

void RunConfig::apply(const std::string& section, const std::string& key,
                      const std::string& value) {
  const KvEntry e{section, key, value, 0};
  if (section == "frontend") {
    if (key == "history_depth") frontend.history_depth = to_int(e);
    else if (key == "decay_shape") frontend.decay_shape = to_double(e);
    else if (key == "dog_gain") frontend.dog_gain = to_double(e);
    else if (key == "dog_sigma1") frontend.dog_sigma1 = to_double(e);
    else if (key == "dog_sigma2") frontend.dog_sigma2 = to_double(e);
    else if (key == "dog_size") frontend.dog_size = to_int(e);
    else if (key == "dog_balanced") frontend.dog_balanced = to_bool(e);
    else bad_entry(e, "unknown key");
  } else if (section == "temporal") {
    if (key == "decay") temporal.decay = to_double(e);
    else if (key == "transmission") temporal.transmission = to_double(e);
    else if (key == "tau") temporal.tau = to_double(e);
    else if (key == "gain") temporal.gain = to_double(e);
    else if (key == "fast_tap") temporal.fast_tap = to_int(e);
    else if (key == "slow_tap") temporal.slow_tap = to_int(e);
    else if (key == "tap_offset") temporal.tap_offset = to_int(e);
    else if (key == "dt") temporal.dt = to_double(e);
    else bad_entry(e, "unknown key");
  } else if (section == "spatial") {
    if (key == "gabor_lambda") spatial.gabor_lambda = to_double(e);
    else if (key == "gabor_sigma") spatial.gabor_sigma = to_double(e);
    else if (key == "gabor_size") spatial.gabor_size = to_int(e);
    else if (key == "cs_lambda") spatial.cs_lambda = to_double(e);
    else if (key == "cs_sigma") spatial.cs_sigma = to_double(e);
    else if (key == "cs_size") spatial.cs_size = to_int(e);
    else bad_entry(e, "unknown key");
  } else if (section == "ganglion") {
    if (key == "w_on") ganglion.w_on = to_double(e);
    else if (key == "w_off") ganglion.w_off = to_double(e);
    else if (key == "crowd_threshold") ganglion.crowd_threshold = to_int(e);
    else bad_entry(e, "unknown key");
  } else if (section == "detector") {
    if (key == "eps") detector.eps = to_double(e);
    else if (key == "min_points") detector.min_points = to_int(e);
    else if (key == "gamma") detector.gamma = to_double(e);
    else if (key == "match_rule") match = parse_match_rule(value);
    else if (key == "inhibition") inhibition = to_bool(e);
    else bad_entry(e, "unknown key");
  } else if (section == "scene") {
    if (key == "fov_deg") fov_deg = to_double(e);
    else if (key == "frame_rate_hz") frame_rate_hz = to_double(e);
    else bad_entry(e, "unknown key");
  } else {
    bad_entry(e, "unknown section");
  }
}

RunConfig RunConfig::from_file(const std::string& path) {
  RunConfig cfg;
  for (const auto& e : parse_kv_file(path)) {
    if (e.key.empty()) {
      if (e.section != "frontend" && e.section != "temporal" &&
          e.section != "spatial" && e.section != "ganglion" &&
          e.section != "detector" && e.section != "scene")
        throw std::runtime_error("config line " + std::to_string(e.line) +
                                 ": unknown section [" + e.section + "]");
      continue;
    }
    cfg.apply(e.section, e.key, e.value);
  }
  cfg.temporal.validate();
  return cfg;
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os.precision(17);
  os << "frontend.history_depth=" << frontend.history_depth
     << ";frontend.decay_shape=" << frontend.decay_shape
     << ";frontend.dog_gain=" << frontend.dog_gain
     << ";frontend.dog_sigma1=" << frontend.dog_sigma1
     << ";frontend.dog_sigma2=" << frontend.dog_sigma2
     << ";frontend.dog_size=" << frontend.dog_size
     << ";frontend.dog_balanced=" << (frontend.dog_balanced ? 1 : 0)
     << ";temporal.decay=" << temporal.decay
     << ";temporal.transmission=" << temporal.transmission
     << ";temporal.tau=" << temporal.tau << ";temporal.gain=" << temporal.gain
     << ";temporal.fast_tap=" << temporal.fast_tap
     << ";temporal.slow_tap=" << temporal.slow_tap
     << ";temporal.tap_offset=" << temporal.tap_offset
     << ";temporal.dt=" << temporal.dt
     << ";spatial.gabor_lambda=" << spatial.gabor_lambda
     << ";spatial.gabor_sigma=" << spatial.gabor_sigma
     << ";spatial.gabor_size=" << spatial.gabor_size
     << ";spatial.cs_lambda=" << spatial.effective_cs_lambda()
     << ";spatial.cs_sigma=" << spatial.cs_sigma
     << ";spatial.cs_size=" << spatial.cs_size
     << ";ganglion.w_on=" << ganglion.w_on
     << ";ganglion.w_off=" << ganglion.w_off
     << ";ganglion.crowd_threshold=" << ganglion.crowd_threshold
     << ";detector.eps=" << detector.eps
     << ";detector.min_points=" << detector.min_points
     << ";detector.gamma=" << detector.gamma
     << ";detector.match=" << match.coeff << "d+" << match.offset_deg
     << ";detector.inhibition=" << (inhibition ? 1 : 0)
     << ";scene.fov_deg=" << fov_deg
     << ";scene.frame_rate_hz=" << frame_rate_hz;
  return os.str();
}

std::uint64_t RunConfig::hash() const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

SceneSpec scene_from_file(const std::string& path) {
  SceneSpec spec;
  bool saw_scene = false;
  for (const auto& e : parse_kv_file(path)) {
    if (e.key.empty()) {
      if (e.section == "target")
        spec.targets.emplace_back();
      else if (e.section == "scene")
        saw_scene = true;
      else if (e.section != "background")
        throw std::runtime_error("scene line " + std::to_string(e.line) +
                                 ": unknown section [" + e.section + "]");
      continue;
    }
    if (e.section == "scene") {
      if (e.key == "width") spec.width = to_int(e);
      else if (e.key == "height") spec.height = to_int(e);
      else if (e.key == "fov_deg") spec.fov_deg = to_double(e);
      else if (e.key == "frame_rate_hz") spec.frame_rate_hz = to_double(e);
      else if (e.key == "n_frames") spec.n_frames = to_int(e);
      else if (e.key == "seed") spec.seed = static_cast<std::uint64_t>(to_int(e));
      else bad_entry(e, "unknown key");
    } else if (e.section == "background") {
      auto& bg = spec.background;
      if (e.key == "mode") {
        if (e.value == "uniform") bg.mode = BackgroundSpec::Mode::uniform;
        else if (e.value == "noise") bg.mode = BackgroundSpec::Mode::noise;
        else if (e.value == "image") bg.mode = BackgroundSpec::Mode::image;
        else bad_entry(e, "mode must be uniform|noise|image");
      } else if (e.key == "luminance") bg.luminance = to_double(e);
      else if (e.key == "speed_deg_s") bg.speed_deg_s = to_double(e);
      else if (e.key == "noise_cell_px") bg.noise_cell_px = to_int(e);
      else if (e.key == "noise_octaves") bg.noise_octaves = to_int(e);
      else if (e.key == "noise_speckle") bg.noise_speckle = to_double(e);
      else if (e.key == "noise_lo") bg.noise_lo = to_double(e);
      else if (e.key == "noise_hi") bg.noise_hi = to_double(e);
      else if (e.key == "image_path") bg.image_path = e.value;
      else bad_entry(e, "unknown key");
    } else if (e.section == "target") {
      if (spec.targets.empty())
        throw std::runtime_error("scene line " + std::to_string(e.line) +
                                 ": target key outside a [target] section");
      auto& t = spec.targets.back();
      if (e.key == "diameter_deg") t.diameter_deg = to_double(e);
      else if (e.key == "luminance") t.luminance = to_double(e);
      else if (e.key == "speed_deg_s") t.speed_deg_s = to_double(e);
      else if (e.key == "path") {
        if (e.value == "linear") t.path = TargetSpec::Path::linear;
        else if (e.value == "circular") t.path = TargetSpec::Path::circular;
        else if (e.value == "random") t.path = TargetSpec::Path::random;
        else bad_entry(e, "path must be linear|circular|random");
      } else if (e.key == "angle_deg") t.angle_deg = to_double(e);
      else if (e.key == "orbit_radius_deg") t.orbit_radius_deg = to_double(e);
      else if (e.key == "start_x_px") t.start_x_px = to_double(e);
      else if (e.key == "start_y_px") t.start_y_px = to_double(e);
      else bad_entry(e, "unknown key");
    } else {
      bad_entry(e, "unknown section");
    }
  }
  if (!saw_scene)
    throw std::runtime_error("scene file '" + path + "': missing [scene]");
  return spec;
}

}  // namespace retmot
