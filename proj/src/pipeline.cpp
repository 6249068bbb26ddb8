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

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "csivitals/dsp.hpp"
#include "csivitals/errors.hpp"

namespace csivitals {

namespace {

// Below this ratio of filtered to raw RMS the band carries only rounding noise.
constexpr double kSilentBand = 1e-9;

double rms(const Eigen::VectorXd &x) {
  return x.size() == 0 ? 0.0 : std::sqrt(x.squaredNorm() / static_cast<double>(x.size()));
}

} // namespace

int PipelineConfig::hampel_window_for(double sample_rate) const {
  if (hampel_window)
    return *hampel_window;
  const auto w = static_cast<int>(std::lround(sample_rate));
  return std::max(3, w % 2 == 0 ? w + 1 : w);
}

std::size_t PipelineConfig::window_frames(double sample_rate) const {
  return static_cast<std::size_t>(std::llround(fft_window * sample_rate));
}

void PipelineConfig::validate(double sample_rate) const {
  const int w = hampel_window_for(sample_rate);
  if (w < 3 || w % 2 == 0)
    throw DomainError("Hampel window must be odd and at least 3");
  if (!(hampel_nsigma > 0.0))
    throw DomainError("Hampel threshold must be positive");
  if (butterworth_order < 1)
    throw DomainError("Butterworth order must be positive");
  if (zero_pad < 1)
    throw DomainError("zero-padding factor must be at least 1");
  if (!(min_confidence >= 0.0))
    throw DomainError("confidence threshold must be non-negative");
  breath_band.validate(sample_rate);
  heart_band.validate(sample_rate);
  for (const BandSpec &band : {breath_band, heart_band})
    if (fft_window < 2.0 / band.low)
      throw DomainError("FFT window of " + std::to_string(fft_window) + " s cannot resolve " +
                        std::to_string(band.low) + " Hz");
}

PipelineTrace run_pipeline(const CsiTrace &trace, const PipelineConfig &config) {
  const double fs = trace.layout.sample_rate;
  config.validate(fs);
  const std::size_t needed = config.window_frames(fs);
  if (trace.frame_count() < needed)
    throw InsufficientData("trace holds " + std::to_string(trace.frame_count()) + " frames, analysis window needs " +
                           std::to_string(needed));

  const CsiTrace window = trace.tail(needed);
  PipelineTrace out;
  VitalEstimate &est = out.estimate;
  est.window_start = window.time_s(0);
  est.window_end = window.time_s(window.frame_count() - 1);

  if (config.antenna) {
    est.antenna = *config.antenna;
    est.subcarrier = select_subcarrier(window, est.antenna);
  } else {
    std::tie(est.antenna, est.subcarrier) = select_stream(window);
  }

  out.raw = amplitude_series(window, est.antenna, est.subcarrier);
  out.denoised = hampel_filter(out.raw, config.hampel_window_for(fs), config.hampel_nsigma);
  out.breath_signal = bandpass(out.denoised, config.breath_band, config.butterworth_order);
  out.heart_signal = bandpass(out.denoised, config.heart_band, config.butterworth_order);

  const double reference = rms(out.denoised.samples);
  out.breath_spectrum = estimate_rate_fft(out.breath_signal, config.breath_band, config.zero_pad);

  // Breathing harmonics land in the heart band (2 x 0.5 Hz = 1 Hz); keep the
  // heart peak search off them.
  FrequencyIntervals guard;
  if (config.harmonic_guard && out.breath_spectrum.has_peak) {
    const double bin = 1.0 / config.fft_window;
    for (int k : {2, 3}) {
      const double f = k * out.breath_spectrum.peak_freq;
      guard.emplace_back(f - bin, f + bin);
    }
  }
  out.heart_spectrum = estimate_rate_fft(out.heart_signal, config.heart_band, config.zero_pad, guard);

  est.breath_bpm = out.breath_spectrum.peak_bpm;
  est.heart_bpm = out.heart_spectrum.peak_bpm;
  est.breath_confidence = out.breath_spectrum.confidence;
  est.heart_confidence = out.heart_spectrum.confidence;
  if (rms(out.breath_signal.samples) <= kSilentBand * reference)
    est.breath_confidence = 0.0;
  if (rms(out.heart_signal.samples) <= kSilentBand * reference)
    est.heart_confidence = 0.0;
  est.breath_confident = out.breath_spectrum.has_peak && est.breath_confidence >= config.min_confidence;
  est.heart_confident = out.heart_spectrum.has_peak && est.heart_confidence >= config.min_confidence;
  return out;
}

VitalEstimate estimate_vitals(const CsiTrace &trace, const PipelineConfig &config) {
  return run_pipeline(trace, config).estimate;
}

} // namespace csivitals
