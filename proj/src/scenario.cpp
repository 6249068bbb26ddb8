// SPDX-License-Identifier: Apache-2.0
//
// csivitals - WiFi CSI vital-sign simulation and estimation toolkit
// Copyright (C) 2026 The csivitals authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "csivitals/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "csivitals/errors.hpp"

namespace csivitals {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string &tok, const std::string &where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != tok.size() || !std::isfinite(v))
    throw ParseError(where + ": '" + tok + "' is not a finite number");
  return v;
}

class LineParser {
public:
  LineParser(std::string value, std::string where) : in_(std::move(value)), where_(std::move(where)) {}

  double number() {
    std::string tok;
    if (!(in_ >> tok))
      throw ParseError(where_ + ": missing numeric field");
    return to_number(tok, where_);
  }

  std::string optional_word() {
    std::string tok;
    in_ >> tok;
    return tok;
  }

  std::optional<double> optional_number() {
    in_ >> std::ws;
    if (in_.eof())
      return std::nullopt;
    return number();
  }

  Point3d point() {
    const double x = number();
    const double y = number();
    const double z = number();
    return {x, y, z};
  }

  std::string word() {
    std::string tok;
    if (!(in_ >> tok))
      throw ParseError(where_ + ": missing field");
    return tok;
  }

  void done() {
    std::string extra;
    if (in_ >> extra)
      throw ParseError(where_ + ": unexpected trailing field '" + extra + "'");
  }

private:
  std::istringstream in_;
  std::string where_;
};

std::string pulse_name(PulseShape shape) {
  return shape == PulseShape::sinusoid ? "sinusoid" : "raised-cosine";
}

} // namespace

AntennaPaird Scenario::pair(int rx) const {
  if (rx < 0 || rx >= static_cast<int>(receivers.size()))
    throw DomainError("receiver index " + std::to_string(rx) + " out of range");
  return make_antenna_pair(tx, receivers[static_cast<std::size_t>(rx)].position, wavelength());
}

MotionVectord Scenario::plan_motion() const {
  if (motion)
    return *motion;
  return make_motion(posture_direction(profile.posture), effective_breath_depth(profile));
}

Scene Scenario::scene() const {
  Scene scene;
  scene.carrier_freq = carrier_freq;
  scene.subcarrier_spacing = subcarrier_spacing;
  scene.n_subcarriers = n_subcarriers;
  scene.sample_rate = sample_rate;
  for (int i = 0; i < static_cast<int>(receivers.size()); ++i) {
    StreamScene stream;
    stream.pair = pair(i);
    const double phase = static_phase ? *static_phase : los_phase(stream.pair, carrier_freq);
    stream.static_path = StaticPath::polar(static_amplitude, phase);
    stream.reflectors.push_back({body, receivers[static_cast<std::size_t>(i)].reflector_gain});
    scene.streams.push_back(stream);
  }
  scene.validate();
  return scene;
}

Scenario default_scenario() {
  const Scene scene = default_scene();
  Scenario s;
  s.description = "default bedside layout";
  s.carrier_freq = scene.carrier_freq;
  s.subcarrier_spacing = scene.subcarrier_spacing;
  s.n_subcarriers = scene.n_subcarriers;
  s.sample_rate = scene.sample_rate;
  s.tx = scene.streams.front().pair.tx;
  for (const auto &stream : scene.streams)
    s.receivers.push_back({stream.pair.rx, stream.reflectors.front().gain});
  s.body = scene.streams.front().reflectors.front().point;
  s.plan_rx = static_cast<int>(scene.streams.size()) - 1;
  return s;
}

Scenario parse_scenario(std::istream &in, const std::string &source) {
  Scenario s = default_scenario();
  bool receivers_replaced = false;
  bool plan_rx_set = false;
  std::optional<double> reflector_gain;
  std::vector<std::pair<Point3d, std::optional<double>>> rx_lines;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const std::string where = source + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    LineParser p(value, where);

    if (key == "description") {
      s.description = value;
      continue;
    } else if (key == "carrier_freq") {
      s.carrier_freq = p.number();
    } else if (key == "subcarrier_spacing") {
      s.subcarrier_spacing = p.number();
    } else if (key == "subcarriers") {
      s.n_subcarriers = static_cast<int>(p.number());
    } else if (key == "sample_rate") {
      s.sample_rate = p.number();
    } else if (key == "tx") {
      s.tx = p.point();
    } else if (key == "rx") {
      receivers_replaced = true;
      const Point3d pos = p.point();
      rx_lines.emplace_back(pos, p.optional_number());
    } else if (key == "reflector_gain") {
      reflector_gain = p.number();
    } else if (key == "body") {
      s.body = p.point();
    } else if (key == "static") {
      s.static_amplitude = p.number();
      const std::string phase = p.optional_word();
      if (phase.empty() || phase == "los")
        s.static_phase.reset();
      else
        s.static_phase = to_number(phase, where);
    } else if (key == "posture") {
      s.profile.posture = parse_posture(p.word());
    } else if (key == "breath_rate") {
      s.profile.breath_rate_bpm = p.number();
    } else if (key == "breath_depth") {
      s.profile.breath_depth = p.number();
    } else if (key == "heart_rate") {
      s.profile.heart_rate_bpm = p.number();
    } else if (key == "heart_amplitude") {
      s.profile.heart_amplitude = p.number();
    } else if (key == "pulse") {
      const std::string shape = p.word();
      if (shape == "sinusoid")
        s.profile.pulse_shape = PulseShape::sinusoid;
      else if (shape == "raised-cosine")
        s.profile.pulse_shape = PulseShape::raised_cosine;
      else
        throw ParseError(where + ": unknown pulse shape '" + shape + "'");
    } else if (key == "lateral_factor") {
      s.profile.lateral_depth_factor = p.number();
    } else if (key == "snr_db") {
      s.noise.snr_db = p.number();
    } else if (key == "outlier_rate") {
      s.noise.outlier_rate = p.number();
    } else if (key == "outlier_magnitude") {
      s.noise.outlier_magnitude = p.number();
    } else if (key == "duration") {
      s.duration = p.number();
    } else if (key == "seed") {
      s.seed = static_cast<std::uint64_t>(p.number());
    } else if (key == "candidate") {
      Candidate c;
      c.label = p.word();
      c.point = p.point();
      s.candidates.push_back(c);
    } else if (key == "motion") {
      const Point3d dir = p.point();
      const double amp = p.number();
      try {
        s.motion = make_motion(dir, amp);
      } catch (const DomainError &e) {
        throw ParseError(where + ": " + e.what());
      }
    } else if (key == "plan_rx") {
      s.plan_rx = static_cast<int>(p.number());
      plan_rx_set = true;
    } else {
      throw ParseError(where + ": unknown key '" + key + "'");
    }
    p.done();
  }

  if (receivers_replaced) {
    s.receivers.clear();
    for (const auto &[pos, gain] : rx_lines)
      s.receivers.push_back({pos, gain.value_or(reflector_gain.value_or(Receiver{}.reflector_gain))});
    if (!plan_rx_set)
      s.plan_rx = 0;
  } else if (reflector_gain) {
    for (auto &r : s.receivers)
      r.reflector_gain = *reflector_gain;
  }
  if (s.plan_rx < 0 || s.plan_rx >= static_cast<int>(s.receivers.size()))
    throw ParseError(source + ": plan_rx " + std::to_string(s.plan_rx) + " out of range");
  try {
    s.scene();
    s.noise.validate();
    s.profile.validate();
  } catch (const DomainError &e) {
    throw ParseError(source + ": " + e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path &path) {
  if (!std::filesystem::exists(path))
    throw FileNotFound("file not found: " + path.string());
  std::ifstream in(path);
  if (!in)
    throw FormatError("cannot open " + path.string());
  return parse_scenario(in, path.string());
}

void write_scenario(std::ostream &out, const Scenario &s) {
  out << std::setprecision(17);
  if (!s.description.empty())
    out << "description = " << s.description << '\n';
  out << "carrier_freq = " << s.carrier_freq << '\n'
      << "subcarrier_spacing = " << s.subcarrier_spacing << '\n'
      << "subcarriers = " << s.n_subcarriers << '\n'
      << "sample_rate = " << s.sample_rate << '\n'
      << "tx = " << s.tx.x() << ' ' << s.tx.y() << ' ' << s.tx.z() << '\n';
  for (const auto &r : s.receivers)
    out << "rx = " << r.position.x() << ' ' << r.position.y() << ' ' << r.position.z() << ' ' << r.reflector_gain
        << '\n';
  out << "body = " << s.body.x() << ' ' << s.body.y() << ' ' << s.body.z() << '\n';
  out << "static = " << s.static_amplitude;
  if (s.static_phase)
    out << ' ' << *s.static_phase;
  out << '\n'
      << "posture = " << to_string(s.profile.posture) << '\n'
      << "breath_rate = " << s.profile.breath_rate_bpm << '\n'
      << "breath_depth = " << s.profile.breath_depth << '\n'
      << "heart_rate = " << s.profile.heart_rate_bpm << '\n'
      << "heart_amplitude = " << s.profile.heart_amplitude << '\n'
      << "pulse = " << pulse_name(s.profile.pulse_shape) << '\n'
      << "lateral_factor = " << s.profile.lateral_depth_factor << '\n'
      << "snr_db = " << s.noise.snr_db << '\n'
      << "outlier_rate = " << s.noise.outlier_rate << '\n'
      << "outlier_magnitude = " << s.noise.outlier_magnitude << '\n'
      << "duration = " << s.duration << '\n'
      << "seed = " << s.seed << '\n';
  for (const auto &c : s.candidates)
    out << "candidate = " << c.label << ' ' << c.point.x() << ' ' << c.point.y() << ' ' << c.point.z() << '\n';
  if (s.motion)
    out << "motion = " << s.motion->direction.x() << ' ' << s.motion->direction.y() << ' '
        << s.motion->direction.z() << ' ' << s.motion->amplitude << '\n';
  out << "plan_rx = " << s.plan_rx << '\n';
}

std::vector<PlacementRow> rank_placements(const Scenario &scenario) {
  const AntennaPaird pair = scenario.pair(scenario.plan_rx);
  const MotionVectord motion = scenario.plan_motion();
  std::vector<PlacementRow> rows;
  for (const auto &c : scenario.candidates) {
    PlacementRow row;
    row.label = c.label;
    row.point = c.point;
    row.zone_index = zone_index(pair, c.point);
    row.zone = fresnel_zone(pair, c.point);
    row.effective_displacement = effective_displacement(pair, c.point, motion);
    row.parity = parity_factor(row.zone_index);
    row.score = placement_score(pair, c.point, motion);
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const PlacementRow &a, const PlacementRow &b) { return a.score > b.score; });
  return rows;
}

} // namespace csivitals
