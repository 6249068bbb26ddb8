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

#include "csivitals/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
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

std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ','))
    fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',')
    fields.emplace_back();
  return fields;
}

// Index range of samples with time in [start - tol, end + tol], after
// checking the series spans the window.
std::pair<std::size_t, std::size_t> covering(const TimeSeries &s, double start, double end, const char *what) {
  if (s.size() < 2)
    throw AlignmentError(std::string(what) + " series has fewer than two samples");
  const double tol = (s.time_s.back() - s.time_s.front()) / static_cast<double>(s.size() - 1);
  if (s.time_s.front() > start + tol || s.time_s.back() < end - tol) {
    std::ostringstream msg;
    msg << what << " covers [" << s.time_s.front() << ", " << s.time_s.back() << "] s but the window is [" << start
        << ", " << end << "] s";
    throw AlignmentError(msg.str());
  }
  const auto lo = std::lower_bound(s.time_s.begin(), s.time_s.end(), start - 0.5 * tol) - s.time_s.begin();
  const auto hi = std::upper_bound(s.time_s.begin(), s.time_s.end(), end + 0.5 * tol) - s.time_s.begin();
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

void group_into(std::vector<GroupSummary> &out, const std::vector<WindowResult> &windows,
                std::string WindowResult::*key) {
  std::map<std::string, std::vector<const WindowResult *>> groups;
  for (const auto &w : windows)
    groups[w.*key].push_back(&w);
  for (const auto &[name, members] : groups) {
    std::vector<double> bt, be, ht, he;
    for (const WindowResult *w : members) {
      bt.push_back(w->breath_truth);
      be.push_back(w->breath_estimate);
      ht.push_back(w->heart_truth);
      he.push_back(w->heart_estimate);
    }
    out.push_back({name, summarize(bt, be), summarize(ht, he)});
  }
}

} // namespace

double window_accuracy(double truth, double estimate) {
  if (!(truth > 0.0))
    throw DomainError("ground truth rate must be positive");
  return std::clamp((1.0 - std::abs(estimate - truth) / truth) * 100.0, 0.0, 100.0);
}

MetricSummary summarize(std::span<const double> truth, std::span<const double> estimate) {
  if (truth.size() != estimate.size())
    throw DomainError("truth and estimate counts differ");
  MetricSummary s;
  s.windows = truth.size();
  if (truth.empty())
    return s;
  double err = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    err += std::abs(estimate[i] - truth[i]);
    acc += window_accuracy(truth[i], estimate[i]);
  }
  s.mean_abs_error = err / static_cast<double>(truth.size());
  s.accuracy_percent = acc / static_cast<double>(truth.size());
  return s;
}

EvalReport build_report(std::vector<WindowResult> windows) {
  EvalReport r;
  r.windows = std::move(windows);
  std::vector<double> bt, be, ht, he;
  for (const auto &w : r.windows) {
    bt.push_back(w.breath_truth);
    be.push_back(w.breath_estimate);
    ht.push_back(w.heart_truth);
    he.push_back(w.heart_estimate);
  }
  r.breath = summarize(bt, be);
  r.heart = summarize(ht, he);
  group_into(r.by_posture, r.windows, &WindowResult::posture);
  group_into(r.by_participant, r.windows, &WindowResult::participant);
  return r;
}

double breath_truth_bpm(const TimeSeries &accel, double start, double end, const BandSpec &band, int zero_pad) {
  const auto [lo, hi] = covering(accel, start, end, "accelerometer");
  if (hi - lo < 2)
    throw AlignmentError("accelerometer has no samples inside the window");
  AmplitudeSeries series;
  series.sample_rate =
      static_cast<double>(hi - lo - 1) / (accel.time_s[hi - 1] - accel.time_s[lo]);
  series.samples = Eigen::Map<const Eigen::VectorXd>(accel.value.data() + lo, static_cast<Eigen::Index>(hi - lo));
  return estimate_rate_fft(series, band, zero_pad).peak_bpm;
}

double pulse_truth_bpm(const TimeSeries &pulse, double start, double end) {
  const auto [lo, hi] = covering(pulse, start, end, "pulse oximeter");
  if (hi == lo)
    throw AlignmentError("pulse oximeter has no readings inside the window");
  double sum = 0.0;
  for (std::size_t i = lo; i < hi; ++i)
    sum += pulse.value[i];
  return sum / static_cast<double>(hi - lo);
}

std::vector<WindowResult> evaluate_trace(const CsiTrace &trace, const GroundTruth &truth, const StreamConfig &config,
                                         const std::string &participant, const std::string &posture) {
  StreamingEstimator estimator(trace.layout, config);
  std::vector<WindowResult> out;
  for (std::size_t i = 0; i < trace.frame_count(); ++i) {
    const auto est = estimator.push_frame(trace.frame(i));
    if (!est)
      continue;
    WindowResult w;
    w.participant = participant;
    w.posture = posture;
    w.window_start = est->window_start;
    w.window_end = est->window_end;
    w.breath_estimate = est->breath_bpm;
    w.heart_estimate = est->heart_bpm;
    w.breath_truth =
        breath_truth_bpm(truth.breath, w.window_start, w.window_end, config.pipeline.breath_band, config.pipeline.zero_pad);
    w.heart_truth = pulse_truth_bpm(truth.pulse, w.window_start, w.window_end);
    out.push_back(w);
  }
  return out;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path &path) {
  if (!std::filesystem::exists(path))
    throw FileNotFound("file not found: " + path.string());
  std::ifstream in(path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "trace,breath_truth,pulse_truth,participant,posture")
    throw ParseError(path.string() + ": expected header 'trace,breath_truth,pulse_truth,participant,posture'");
  const std::filesystem::path base = path.parent_path();
  std::vector<ManifestEntry> entries;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty())
      continue;
    const auto f = split_csv(trim(line));
    if (f.size() != 5)
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected 5 fields");
    entries.push_back({base / f[0], base / f[1], base / f[2], f[3], f[4]});
  }
  return entries;
}

EvalReport evaluate_manifest(const std::filesystem::path &path, const StreamConfig &config) {
  std::vector<WindowResult> windows;
  for (const auto &entry : read_manifest(path)) {
    const CsiTrace trace = read_trace(entry.trace);
    GroundTruth truth{read_ground_truth(entry.breath_truth), read_ground_truth(entry.pulse_truth)};
    auto rows = evaluate_trace(trace, truth, config, entry.participant, entry.posture);
    windows.insert(windows.end(), rows.begin(), rows.end());
  }
  return build_report(std::move(windows));
}

void write_report_text(std::ostream &out, const EvalReport &report) {
  auto line = [&](const std::string &label, const MetricSummary &b, const MetricSummary &h) {
    out << std::left << std::setw(20) << label << std::right << std::setw(8) << b.windows << std::fixed
        << std::setprecision(3) << std::setw(12) << b.mean_abs_error << std::setw(11) << b.accuracy_percent
        << std::setw(12) << h.mean_abs_error << std::setw(11) << h.accuracy_percent << '\n';
  };
  out << std::left << std::setw(20) << "group" << std::right << std::setw(8) << "windows" << std::setw(12)
      << "breath_err" << std::setw(11) << "breath_%" << std::setw(12) << "heart_err" << std::setw(11) << "heart_%"
      << '\n';
  line("overall", report.breath, report.heart);
  for (const auto &g : report.by_posture)
    line("posture:" + g.key, g.breath, g.heart);
  for (const auto &g : report.by_participant)
    line("participant:" + g.key, g.breath, g.heart);
}

void write_report_csv(std::ostream &out, const EvalReport &report) {
  out << "participant,posture,window_start,window_end,breath_truth,breath_estimate,breath_abs_error,"
         "heart_truth,heart_estimate,heart_abs_error\n"
      << std::setprecision(9);
  for (const auto &w : report.windows)
    out << w.participant << ',' << w.posture << ',' << w.window_start << ',' << w.window_end << ',' << w.breath_truth
        << ',' << w.breath_estimate << ',' << std::abs(w.breath_estimate - w.breath_truth) << ',' << w.heart_truth
        << ',' << w.heart_estimate << ',' << std::abs(w.heart_estimate - w.heart_truth) << '\n';
}

GroundTruth synth_ground_truth(const VitalProfile &profile, double duration_s, double accel_rate) {
  profile.validate();
  if (!(duration_s > 0.0) || !(accel_rate > 0.0))
    throw DomainError("duration and accelerometer rate must be positive");
  GroundTruth truth;
  const double w = 2.0 * std::numbers::pi * profile.breath_rate_bpm / 60.0;
  const double depth = effective_breath_depth(profile);
  const auto n_accel = static_cast<std::size_t>(std::floor(duration_s * accel_rate + 1e-9));
  for (std::size_t i = 0; i < n_accel; ++i) {
    const double t = static_cast<double>(i) / accel_rate;
    truth.breath.time_s.push_back(t);
    truth.breath.value.push_back(-w * w * depth * std::sin(w * t) * 1e3);
  }
  const auto n_pulse = static_cast<std::size_t>(std::floor(duration_s + 1e-9)) + 1;
  for (std::size_t i = 0; i < n_pulse; ++i) {
    truth.pulse.time_s.push_back(static_cast<double>(i));
    truth.pulse.value.push_back(profile.heart_rate_bpm);
  }
  return truth;
}

} // namespace csivitals
