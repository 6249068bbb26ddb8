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

#include "csivitals/dsp.hpp"
#include "csivitals/errors.hpp"

namespace csivitals {

namespace {

using cd = std::complex<double>;

cd bilinear(cd s, double fs) { return (2.0 * fs + s) / (2.0 * fs - s); }

double prewarp(double f, double fs) { return 2.0 * fs * std::tan(std::numbers::pi * f / fs); }

} // namespace

void BandSpec::validate(double sample_rate) const {
  if (!(low > 0.0) || !(high > low) || !(high < 0.5 * sample_rate))
    throw DomainError("band [" + std::to_string(low) + ", " + std::to_string(high) +
                      "] Hz must satisfy 0 < low < high < sample_rate/2");
}

std::complex<double> SosFilter::response(double freq_hz, double sample_rate) const {
  const cd zinv = std::polar(1.0, -2.0 * std::numbers::pi * freq_hz / sample_rate);
  cd h = 1.0;
  for (const auto &s : sections)
    h *= (s.b0 + zinv * (s.b1 + zinv * s.b2)) / (1.0 + zinv * (s.a1 + zinv * s.a2));
  return h;
}

SosFilter butterworth_bandpass(int order, const BandSpec &band, double sample_rate) {
  if (order < 1 || order > 16)
    throw DomainError("Butterworth order must lie in [1, 16]");
  band.validate(sample_rate);

  const double w_lo = prewarp(band.low, sample_rate);
  const double w_hi = prewarp(band.high, sample_rate);
  const double bw = w_hi - w_lo;
  const double w0_sq = w_lo * w_hi;

  // Lowpass prototype poles on the unit circle, each split into two bandpass
  // poles, then mapped to z.
  std::vector<cd> poles;
  for (int k = 1; k <= order; ++k) {
    const cd p = std::polar(1.0, std::numbers::pi * (2.0 * k + order - 1) / (2.0 * order));
    const cd half = p * (bw / 2.0);
    const cd root = std::sqrt(half * half - w0_sq);
    poles.push_back(bilinear(half + root, sample_rate));
    poles.push_back(bilinear(half - root, sample_rate));
  }

  std::vector<cd> upper, real;
  for (const cd &z : poles) {
    if (std::abs(z.imag()) <= 1e-14 * std::abs(z))
      real.push_back(z.real());
    else if (z.imag() > 0.0)
      upper.push_back(z);
  }
  std::sort(real.begin(), real.end(), [](cd a, cd b) { return a.real() < b.real(); });

  // Every section carries one zero at z = 1 (DC) and one at z = -1 (Nyquist).
  SosFilter filter;
  for (const cd &z : upper)
    filter.sections.push_back({1.0, 0.0, -1.0, -2.0 * z.real(), std::norm(z)});
  for (std::size_t i = 0; i + 1 < real.size(); i += 2)
    filter.sections.push_back(
        {1.0, 0.0, -1.0, -(real[i].real() + real[i + 1].real()), real[i].real() * real[i + 1].real()});

  const double center = std::sqrt(w0_sq);
  const double f0 = sample_rate / std::numbers::pi * std::atan(center / (2.0 * sample_rate));
  const double gain = std::abs(filter.response(f0, sample_rate));
  const double per_section = std::pow(1.0 / gain, 1.0 / static_cast<double>(filter.sections.size()));
  for (auto &s : filter.sections) {
    s.b0 *= per_section;
    s.b1 *= per_section;
    s.b2 *= per_section;
  }
  return filter;
}

Eigen::VectorXd sosfilt(const SosFilter &filter, const Eigen::VectorXd &x) {
  Eigen::VectorXd y = x;
  if (x.size() == 0)
    return y;
  double level = x[0];
  for (const auto &s : filter.sections) {
    // Transposed direct form II, state preloaded with the steady-state
    // response to a constant input of `level`.
    const double dc = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
    double z2 = (s.b2 - s.a2 * dc) * level;
    double z1 = (s.b1 - s.a1 * dc) * level + z2;
    level *= dc;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double in = y[i];
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      y[i] = out;
    }
  }
  return y;
}

Eigen::VectorXd filtfilt(const SosFilter &filter, const Eigen::VectorXd &x, Eigen::Index padlen) {
  const Eigen::Index n = x.size();
  if (n == 0)
    return x;
  padlen = std::clamp<Eigen::Index>(padlen, 0, n - 1);

  Eigen::VectorXd ext(n + 2 * padlen);
  for (Eigen::Index i = 0; i < padlen; ++i) {
    ext[i] = 2.0 * x[0] - x[padlen - i];
    ext[n + padlen + i] = 2.0 * x[n - 1] - x[n - 2 - i];
  }
  ext.segment(padlen, n) = x;

  Eigen::VectorXd y = sosfilt(filter, ext);
  y.reverseInPlace();
  y = sosfilt(filter, y);
  y.reverseInPlace();
  return y.segment(padlen, n);
}

AmplitudeSeries bandpass(const AmplitudeSeries &series, const BandSpec &band, int order) {
  series.validate();
  const SosFilter filter = butterworth_bandpass(order, band, series.sample_rate);
  const auto padlen = static_cast<Eigen::Index>(std::ceil(series.sample_rate / band.low));
  return {series.sample_rate, filtfilt(filter, series.samples, padlen)};
}

} // namespace csivitals
