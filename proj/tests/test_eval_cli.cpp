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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <unistd.h>

#include "csivitals/cli.hpp"
#include "csivitals/errors.hpp"
#include "csivitals/eval.hpp"
#include "csivitals/io.hpp"
#include "csivitals/scenario.hpp"

using namespace csivitals;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("csivitals-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string &name) const { return (path / name).string(); }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(const std::vector<std::string> &args, const std::string &input = {}) {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty())
      out.push_back(line);
  return out;
}

void write_file(const std::string &path, const std::string &text) { std::ofstream(path) << text; }

} // namespace

TEST_CASE("accuracy arithmetic") {
  CHECK(window_accuracy(18.0, 17.5) == doctest::Approx(100.0 * (1.0 - 0.5 / 18.0)).epsilon(1e-12));
  CHECK(window_accuracy(18.0, 17.5) == doctest::Approx(97.222).epsilon(1e-5));
  CHECK(window_accuracy(18.0, 18.0) == 100.0);
  CHECK(window_accuracy(10.0, 25.0) == 0.0);
  CHECK_THROWS_AS(window_accuracy(0.0, 1.0), DomainError);

  std::vector<WindowResult> w(3);
  const double truth[] = {18.0, 20.0, 15.0}, est[] = {17.5, 21.0, 15.0};
  double hand = 0;
  for (int i = 0; i < 3; ++i) {
    w[i].breath_truth = truth[i];
    w[i].breath_estimate = est[i];
    w[i].heart_truth = w[i].heart_estimate = 70.0;
    w[i].posture = i == 2 ? "prone" : "supine";
    w[i].participant = "p1";
    hand += 100.0 * (1.0 - std::abs(est[i] - truth[i]) / truth[i]) / 3.0;
  }
  const EvalReport r = build_report(w);
  CHECK(r.breath.accuracy_percent == doctest::Approx(hand).epsilon(1e-12));
  CHECK(std::abs(r.breath.accuracy_percent - hand) < 1e-9);
  CHECK(r.breath.mean_abs_error == doctest::Approx(0.5));
  CHECK(r.heart.accuracy_percent == 100.0);
  REQUIRE(r.by_posture.size() == 2);
  CHECK(r.by_posture[0].key == "prone");
  CHECK(r.by_posture[0].breath.windows == 1);
}

TEST_CASE("mean error and accuracy imply the mean truth") {
  // 0.575 bpm error at 96.636% accuracy means a truth near 17.1 bpm.
  const double truth = 0.575 / (1.0 - 0.96636);
  CHECK(truth == doctest::Approx(17.09).epsilon(1e-3));
  std::vector<WindowResult> w(4);
  for (int i = 0; i < 4; ++i) {
    w[i].breath_truth = truth;
    w[i].breath_estimate = truth + (i % 2 ? 0.575 : -0.575);
    w[i].heart_truth = w[i].heart_estimate = 70.0;
  }
  const EvalReport r = build_report(w);
  CHECK(r.breath.mean_abs_error == doctest::Approx(0.575).epsilon(1e-12));
  CHECK(std::round(r.breath.accuracy_percent * 1000) / 1000 == 96.636);
}

TEST_CASE("ground truth rates") {
  TimeSeries accel;
  for (int i = 0; i <= 50 * 60; ++i) {
    accel.time_s.push_back(i / 50.0);
    accel.value.push_back(std::sin(2 * std::numbers::pi * 0.3 * i / 50.0));
  }
  // The window holds 2001 samples, so 0.3 Hz is off-grid by up to half a padded bin.
  CHECK(std::abs(breath_truth_bpm(accel, 10.0, 50.0, kBreathBand, 4) - 18.0) <= 0.1875);
  CHECK_THROWS_AS(breath_truth_bpm(accel, 30.0, 70.0, kBreathBand, 4), AlignmentError);

  TimeSeries pulse{{0, 1, 2, 3, 4}, {70, 72, 74, 76, 78}};
  CHECK(pulse_truth_bpm(pulse, 1.0, 3.0) == doctest::Approx(74.0));
  CHECK_THROWS_AS(pulse_truth_bpm(pulse, 2.0, 9.0), AlignmentError);
}

TEST_CASE("scenario files") {
  std::istringstream in(R"(# bedroom
description = test room
carrier_freq = 5.32e9
tx = 0 0 0
rx = 0.8 0 0 0.3
rx = 1.2 0 0
body = 0.4 0.1 0.1
posture = prone
breath_rate = 20
candidate = a 0.4 0.1 0.1
motion = 0 0 1 0.005
)");
  const Scenario s = parse_scenario(in);
  CHECK(s.description == "test room");
  CHECK(s.receivers.size() == 2);
  CHECK(s.receivers[0].reflector_gain == 0.3);
  CHECK(s.profile.posture == Posture::prone);
  CHECK(s.profile.breath_rate_bpm == 20.0);
  CHECK(s.candidates.size() == 1);
  CHECK(s.scene().streams.size() == 2);

  std::ostringstream out;
  write_scenario(out, s);
  std::istringstream again(out.str());
  const Scenario t = parse_scenario(again);
  CHECK(t.receivers.size() == 2);
  CHECK(t.body == s.body);
  CHECK(t.profile.breath_rate_bpm == s.profile.breath_rate_bpm);

  std::istringstream unknown("colour = blue\n");
  CHECK_THROWS_AS(parse_scenario(unknown), ParseError);
  std::istringstream bad_number("breath_rate = fast\n");
  CHECK_THROWS_AS(parse_scenario(bad_number), ParseError);
}

TEST_CASE("placement ranking matches brute-force scores") {
  Scenario s;
  s.receivers = {{Point3d(1.2, 0, 0), 0.3}};
  s.motion = make_motion<double>({0, 0, 1}, 0.005);
  for (int i = 1; i <= 40; ++i)
    s.candidates.push_back({"c" + std::to_string(i), Point3d(0.6, 0.0, 0.004 * i)});
  const auto rows = rank_placements(s);
  REQUIRE(rows.size() == 40);
  const AntennaPaird pair = s.pair(0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].score == doctest::Approx(placement_score(pair, rows[i].point, *s.motion)));
    if (i > 0)
      CHECK(rows[i - 1].score >= rows[i].score);
  }

  // Even-boundary candidate ranks below an odd-zone-centre candidate with
  // the same effective displacement.
  auto at_zone = [&](double zone) {
    const double half = 0.5 * (1.2 + zone * pair.wavelength / 2);
    return Point3d(0.6, 0.0, std::sqrt(half * half - 0.36));
  };
  Scenario two;
  two.receivers = s.receivers;
  two.candidates = {{"boundary", at_zone(2.0)}, {"centre", at_zone(2.5)}};
  two.motion = make_motion<double>(Point3d(1, 0, 0), 0.0);
  two.motion->direction = Point3d::UnitZ();
  two.motion->amplitude = 0.005;
  const auto ranked = rank_placements(two);
  CHECK(ranked[0].label == "centre");
}

TEST_CASE("synth command") {
  TempDir dir;
  auto r = cli({"synth", "--duration", "60", "--seed", "3", "--out", dir / "a.csit"});
  CHECK(r.code == kExitOk);
  CHECK(read_trace(dir / "a.csit").frame_count() == 30000);
  cli({"synth", "--duration", "5", "--seed", "3", "--out", dir / "b.csit"});
  cli({"synth", "--duration", "5", "--seed", "3", "--out", dir / "c.csit"});
  CHECK(slurp(dir / "b.csit") == slurp(dir / "c.csit"));

  r = cli({"synth", "--duration", "0", "--out", dir / "z.csit"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("duration") != std::string::npos);
  CHECK(cli({"synth"}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"synth", "--out", dir / "p.csit", "--posture", "upside-down"}).code == kExitUsage);
}

TEST_CASE("analyze and stream") {
  TempDir dir;
  REQUIRE(cli({"synth", "--duration", "41", "--seed", "8", "--out", dir / "t.csit"}).code == kExitOk);

  auto r = cli({"analyze", dir / "t.csit", "--spectra-csv", dir / "spec.csv"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("breath   18.00 bpm") != std::string::npos);
  CHECK(r.out.find("heart    72.00 bpm") != std::string::npos);
  CHECK(fs::exists(dir / "spec.csv"));

  r = cli({"--format", "csv", "analyze", dir / "t.csit"});
  REQUIRE(lines(r.out).size() == 2);
  const std::string analyzed = lines(r.out)[1];

  auto s = cli({"stream", dir / "t.csit", "--store", dir / "store", "--session", "n1"});
  CHECK(s.code == kExitOk);
  const auto emitted = lines(s.out);
  REQUIRE(emitted.size() == 2);
  // The batch result equals the last streamed estimate.
  std::string last = emitted.back();
  std::string csv_prefix;
  for (char c : last)
    if (c != ' ')
      csv_prefix += c;
  CHECK(analyzed.rfind(csv_prefix, 0) == 0);
  CHECK(list_sessions(dir / "store").at(0).estimates.size() == 2);

  // Piped input.
  const std::string bytes = slurp(dir / "t.csit");
  CHECK(lines(cli({"stream", "-"}, bytes).out).size() == 2);

  REQUIRE(cli({"synth", "--duration", "39", "--out", dir / "short.csit"}).code == kExitOk);
  s = cli({"stream", dir / "short.csit"});
  CHECK(s.code == kExitOk);
  CHECK(lines(s.out).empty());
  CHECK(cli({"analyze", dir / "short.csit"}).code == kExitData);

  CHECK(cli({"analyze", dir / "missing.csit"}).code == kExitData);
  CHECK(cli({"stream", dir / "missing.csit"}).code == kExitData);
}

TEST_CASE("stream rejects non-monotone input") {
  CsiTrace t;
  t.layout.n_antennas = 1;
  t.layout.n_subcarriers = 2;
  t.values = CsiMatrix::Constant(3, 2, {1.0f, 0.0f});
  t.timestamps_us = {0, 2000, 2000};
  std::ostringstream out(std::ios::binary);
  write_trace_header(out, t.layout);
  for (std::size_t i = 0; i < 3; ++i)
    write_trace_frame(out, t.layout, t.frame(i));
  const auto r = cli({"stream", "-"}, out.str());
  CHECK(r.code == kExitData);
  CHECK(r.err.find("frame 2") != std::string::npos);

  const auto truncated = cli({"stream", "-"}, out.str().substr(0, out.str().size() - 3));
  CHECK(truncated.code == kExitData);
  CHECK(truncated.err.find("frame 2") != std::string::npos);
}

TEST_CASE("plan command") {
  TempDir dir;
  write_file(dir / "one.scn", "rx = 1.2 0 0\ncandidate = only 0.6 0 0.1\n");
  auto r = cli({"plan", dir / "one.scn"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out).size() == 2);
  CHECK(r.out.find("only") != std::string::npos);

  write_file(dir / "none.scn", "rx = 1.2 0 0\n");
  r = cli({"plan", dir / "none.scn"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("no placement candidates") != std::string::npos);

  write_file(dir / "bad.scn", "rx = 1.2 0\n");
  CHECK(cli({"plan", dir / "bad.scn"}).code == kExitData);
  CHECK(cli({"plan", dir / "absent.scn"}).code == kExitData);
}

TEST_CASE("eval command") {
  TempDir dir;
  REQUIRE(cli({"synth", "--duration", "42", "--breath-rate", "18", "--heart-rate", "75", "--posture", "prone",
               "--out", dir / "a.csit", "--truth-prefix", dir / "a"})
              .code == kExitOk);
  write_file(dir / "manifest.csv", "trace,breath_truth,pulse_truth,participant,posture\n"
                                   "a.csit,a-breath.csv,a-pulse.csv,p1,prone\n");
  auto r = cli({"eval", dir / "manifest.csv", "--csv", dir / "windows.csv"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("posture:prone") != std::string::npos);
  CHECK(r.out.find("participant:p1") != std::string::npos);
  CHECK(lines(slurp(dir / "windows.csv")).size() == 1 + 3);

  // Truth that stops before the trace does is an alignment error.
  TimeSeries pulse{{0, 1, 2, 3}, {70, 70, 70, 70}};
  write_ground_truth(dir / "a-pulse.csv", pulse);
  r = cli({"eval", dir / "manifest.csv"});
  CHECK(r.code == kExitData);
  CHECK(r.err.find("covers") != std::string::npos);
}

TEST_CASE("config file from the environment") {
  TempDir dir;
  REQUIRE(cli({"synth", "--duration", "41", "--seed", "8", "--out", dir / "t.csit"}).code == kExitOk);
  write_file(dir / "cfg.toml", "update-interval = 0.5\n");
  ::setenv(kConfigEnvVar, (dir / "cfg.toml").c_str(), 1);
  const auto r = cli({"stream", dir / "t.csit"});
  ::unsetenv(kConfigEnvVar);
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out).size() == 3);
  CHECK(cli({"--update-interval", "0", "stream", dir / "t.csit"}).code == kExitUsage);
}
