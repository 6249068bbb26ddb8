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
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "csivitals/dsp.hpp"
#include "csivitals/errors.hpp"

namespace csivitals {

namespace {

double median_of(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1)
    return *mid;
  return 0.5 * (*mid + *std::max_element(v.begin(), mid));
}

double variance_of(const Eigen::VectorXd &x) {
  if (x.size() < 2)
    return 0.0;
  const double mean = x.mean();
  return (x.array() - mean).square().sum() / static_cast<double>(x.size() - 1);
}

} // namespace

SpectrumEstimate estimate_rate_fft(const AmplitudeSeries &series, const BandSpec &band, int zero_pad,
                                   const FrequencyIntervals &excluded) {
  series.validate();
  band.validate(series.sample_rate);
  if (zero_pad < 1)
    throw DomainError("zero-padding factor must be at least 1");
  const Eigen::Index n = series.size();
  if (static_cast<double>(n) < 2.0 * series.sample_rate / band.low)
    throw InsufficientData("need at least " + std::to_string(2.0 / band.low) + " s of data to resolve " +
                           std::to_string(band.low) + " Hz, got " + std::to_string(series.duration_s()) +
                           " s");

  const Eigen::Index m = n * zero_pad;
  std::vector<double> buffer(static_cast<std::size_t>(m), 0.0);
  const double mean = series.samples.mean();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double hann = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                              static_cast<double>(n)));
    buffer[static_cast<std::size_t>(i)] = (series.samples[i] - mean) * hann;
  }

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, buffer);

  const double df = series.sample_rate / static_cast<double>(m);
  const auto k_lo = static_cast<Eigen::Index>(std::ceil(band.low / df - 1e-9));
  const auto k_hi = static_cast<Eigen::Index>(std::floor(band.high / df + 1e-9));

  SpectrumEstimate out;
  out.frequencies.resize(k_hi - k_lo + 1);
  out.magnitudes.resize(k_hi - k_lo + 1);
  std::vector<double> usable;
  Eigen::Index best = -1;
  for (Eigen::Index k = k_lo; k <= k_hi; ++k) {
    const double f = static_cast<double>(k) * df;
    const double mag = std::abs(spectrum[static_cast<std::size_t>(k)]);
    out.frequencies[k - k_lo] = f;
    out.magnitudes[k - k_lo] = mag;
    const bool blocked = std::any_of(excluded.begin(), excluded.end(),
                                     [f](const auto &iv) { return f >= iv.first && f <= iv.second; });
    if (blocked)
      continue;
    usable.push_back(mag);
    if (best < 0 || mag > out.magnitudes[best - k_lo])
      best = k;
  }

  if (best < 0) {
    out.peak_freq = band.low;
    out.peak_bpm = band.low_bpm();
    return out;
  }
  out.peak_freq = static_cast<double>(best) * df;
  out.peak_bpm = 60.0 * out.peak_freq;
  const double peak = out.magnitudes[best - k_lo];
  const double floor_level = median_of(usable);
  out.has_peak = peak > 0.0;
  if (out.has_peak)
    out.confidence = floor_level > 0.0 ? peak / floor_level : std::numeric_limits<double>::infinity();
  return out;
}

AmplitudeSeries amplitude_series(const CsiTrace &trace, int antenna, int subcarrier) {
  return {trace.layout.sample_rate, trace.amplitude(antenna, subcarrier)};
}

int select_subcarrier(const CsiTrace &trace, int antenna) {
  if (trace.empty())
    throw DomainError("cannot select a subcarrier from an empty trace");
  if (antenna < 0 || antenna >= trace.layout.n_antennas)
    throw DomainError("antenna index " + std::to_string(antenna) + " out of range");
  int best = 0;
  double best_var = -1.0;
  for (int k = 0; k < trace.layout.n_subcarriers; ++k) {
    const double v = variance_of(trace.amplitude(antenna, k));
    if (v > best_var) {
      best_var = v;
      best = k;
    }
  }
  return best;
}

std::pair<int, int> select_stream(const CsiTrace &trace) {
  if (trace.empty())
    throw DomainError("cannot select a stream from an empty trace");
  std::pair<int, int> best{0, 0};
  double best_var = -1.0;
  for (int a = 0; a < trace.layout.n_antennas; ++a) {
    for (int k = 0; k < trace.layout.n_subcarriers; ++k) {
      const double v = variance_of(trace.amplitude(a, k));
      if (v > best_var) {
        best_var = v;
        best = {a, k};
      }
    }
  }
  return best;
}

} // namespace csivitals
