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

#pragma once

// Evaluation against reference sensors.
//
// Per-window accuracy is (1 - |estimate - truth| / truth) * 100, clamped to
// [0, 100]; reported accuracy is the mean of the per-window values.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "csivitals/channel.hpp"
#include "csivitals/io.hpp"
#include "csivitals/streaming.hpp"

namespace csivitals {

struct WindowResult {
  std::string participant;
  std::string posture;
  double window_start = 0.0;
  double window_end = 0.0;
  double breath_truth = 0.0;
  double breath_estimate = 0.0;
  double heart_truth = 0.0;
  double heart_estimate = 0.0;
};

struct MetricSummary {
  std::size_t windows = 0;
  double mean_abs_error = 0.0;   // bpm
  double accuracy_percent = 0.0; // mean per-window accuracy
};

struct GroupSummary {
  std::string key;
  MetricSummary breath;
  MetricSummary heart;
};

struct EvalReport {
  std::vector<WindowResult> windows;
  MetricSummary breath;
  MetricSummary heart;
  std::vector<GroupSummary> by_posture;
  std::vector<GroupSummary> by_participant;
};

double window_accuracy(double truth, double estimate);
MetricSummary summarize(std::span<const double> truth, std::span<const double> estimate);
EvalReport build_report(std::vector<WindowResult> windows);

// Breathing rate of the accelerometer series over [start, end], via the same
// FFT estimator as the CSI pipeline.
double breath_truth_bpm(const TimeSeries &accel, double start, double end, const BandSpec &band, int zero_pad);
// Mean oximeter reading over [start, end].
double pulse_truth_bpm(const TimeSeries &pulse, double start, double end);

// One row per streaming emission over the trace.
std::vector<WindowResult> evaluate_trace(const CsiTrace &trace, const GroundTruth &truth, const StreamConfig &config,
                                         const std::string &participant, const std::string &posture);

// Manifest CSV: header `trace,breath_truth,pulse_truth,participant,posture`;
// paths relative to the manifest's directory.
struct ManifestEntry {
  std::filesystem::path trace;
  std::filesystem::path breath_truth;
  std::filesystem::path pulse_truth;
  std::string participant;
  std::string posture;
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path &path);
EvalReport evaluate_manifest(const std::filesystem::path &path, const StreamConfig &config);

void write_report_text(std::ostream &out, const EvalReport &report);
void write_report_csv(std::ostream &out, const EvalReport &report);

// Reference-sensor readings matching a synthesized profile: abdominal
// acceleration at `accel_rate` and a constant oximeter reading once a second.
GroundTruth synth_ground_truth(const VitalProfile &profile, double duration_s, double accel_rate = 50.0);

} // namespace csivitals
