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

// Amplitude-domain processing chain: stream selection, Hampel outlier
// removal, zero-phase Butterworth band split, and FFT peak picking.

#include <array>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "csivitals/trace.hpp"

namespace csivitals {

struct AmplitudeSeries {
  double sample_rate = 0.0;
  Eigen::VectorXd samples;

  Eigen::Index size() const { return samples.size(); }
  double duration_s() const { return static_cast<double>(samples.size()) / sample_rate; }
  void validate() const;
};

struct BandSpec {
  double low = 0.0;  // Hz
  double high = 0.0; // Hz

  double low_bpm() const { return low * 60.0; }
  double high_bpm() const { return high * 60.0; }
  double center() const { return 0.5 * (low + high); }
  void validate(double sample_rate) const;
};

inline constexpr BandSpec kBreathBand{0.25, 0.5};
inline constexpr BandSpec kHeartBand{1.0, 2.0};

struct SpectrumEstimate {
  Eigen::VectorXd frequencies; // in-band grid, Hz
  Eigen::VectorXd magnitudes;
  double peak_freq = 0.0;
  double peak_bpm = 0.0;
  double confidence = 0.0; // peak / median in-band magnitude; 0 when no peak
  bool has_peak = false;
};

struct PipelineConfig {
  std::optional<int> hampel_window; // samples; unset = one second, odd-adjusted
  double hampel_nsigma = 3.0;
  int butterworth_order = 4;
  BandSpec breath_band = kBreathBand;
  BandSpec heart_band = kHeartBand;
  double fft_window = 40.0; // s
  int zero_pad = 4;
  double min_confidence = 8.0;
  std::optional<int> antenna; // unset = best stream over all antennas
  bool harmonic_guard = true;

  int hampel_window_for(double sample_rate) const;
  std::size_t window_frames(double sample_rate) const;
  void validate(double sample_rate) const;
};

struct VitalEstimate {
  double breath_bpm = 0.0;
  double heart_bpm = 0.0;
  double breath_confidence = 0.0;
  double heart_confidence = 0.0;
  bool breath_confident = false;
  bool heart_confident = false;
  double window_start = 0.0; // s, first frame
  double window_end = 0.0;   // s, last frame
  int antenna = 0;
  int subcarrier = 0;
};

// Second-order section, a0 normalized to 1.
struct Biquad {
  double b0, b1, b2, a1, a2;
};

struct SosFilter {
  std::vector<Biquad> sections;

  std::complex<double> response(double freq_hz, double sample_rate) const;
};

// Digital Butterworth bandpass from an `order`-pole lowpass prototype
// (2*order poles in total), bilinear transform with prewarping, unity gain at
// the geometric band center.
SosFilter butterworth_bandpass(int order, const BandSpec &band, double sample_rate);

// One causal pass with initial state matched to a step of height x[0].
Eigen::VectorXd sosfilt(const SosFilter &filter, const Eigen::VectorXd &x);

// Forward-backward filtering with odd-symmetric edge extension.
Eigen::VectorXd filtfilt(const SosFilter &filter, const Eigen::VectorXd &x, Eigen::Index padlen);

AmplitudeSeries bandpass(const AmplitudeSeries &series, const BandSpec &band, int order);

// Replace samples deviating from their window median by more than
// nsigma * 1.4826 * MAD with that median. Passes repeat until nothing
// changes, so the result is a fixed point of the filter.
AmplitudeSeries hampel_filter(const AmplitudeSeries &series, int window, double nsigma);

// Single pass; hampel_filter() iterates this.
Eigen::VectorXd hampel_pass(const Eigen::VectorXd &x, int window, double nsigma);

// Excluded [low, high] frequency intervals for the peak search.
using FrequencyIntervals = std::vector<std::pair<double, double>>;

SpectrumEstimate estimate_rate_fft(const AmplitudeSeries &series, const BandSpec &band, int zero_pad = 4,
                                   const FrequencyIntervals &excluded = {});

int select_subcarrier(const CsiTrace &trace, int antenna);

// Highest-variance (antenna, subcarrier) over all antennas; ties go to the
// lowest antenna, then the lowest subcarrier.
std::pair<int, int> select_stream(const CsiTrace &trace);

AmplitudeSeries amplitude_series(const CsiTrace &trace, int antenna, int subcarrier);

struct PipelineTrace {
  VitalEstimate estimate;
  AmplitudeSeries raw;
  AmplitudeSeries denoised;
  AmplitudeSeries breath_signal;
  AmplitudeSeries heart_signal;
  SpectrumEstimate breath_spectrum;
  SpectrumEstimate heart_spectrum;
};

// Runs the full chain on the trailing fft_window seconds of `trace`.
VitalEstimate estimate_vitals(const CsiTrace &trace, const PipelineConfig &config);

// Same as estimate_vitals() but keeps every intermediate signal.
PipelineTrace run_pipeline(const CsiTrace &trace, const PipelineConfig &config);

} // namespace csivitals
