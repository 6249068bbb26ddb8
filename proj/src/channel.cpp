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

#include "csivitals/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>
#include <tuple>

#include "csivitals/errors.hpp"

namespace csivitals {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

} // namespace

std::string to_string(Posture posture) {
  switch (posture) {
  case Posture::supine:
    return "supine";
  case Posture::prone:
    return "prone";
  case Posture::left_recumbent:
    return "left-recumbent";
  case Posture::right_recumbent:
    return "right-recumbent";
  }
  return "unknown";
}

Posture parse_posture(const std::string &name) {
  if (name == "supine")
    return Posture::supine;
  if (name == "prone")
    return Posture::prone;
  if (name == "left-recumbent" || name == "left")
    return Posture::left_recumbent;
  if (name == "right-recumbent" || name == "right")
    return Posture::right_recumbent;
  throw DomainError("unknown posture '" + name + "'");
}

void VitalProfile::validate() const {
  if (!(breath_rate_bpm >= 15.0 && breath_rate_bpm <= 30.0))
    throw DomainError("breath rate must lie in [15, 30] bpm");
  if (!(heart_rate_bpm >= 60.0 && heart_rate_bpm <= 120.0))
    throw DomainError("heart rate must lie in [60, 120] bpm");
  if (!(breath_depth >= 0.0) || !(heart_amplitude >= 0.0))
    throw DomainError("motion depths must be non-negative");
  if (heart_amplitude > 0.0 && !(heart_amplitude < breath_depth))
    throw DomainError("heart amplitude must be smaller than breath depth");
  if (!(pulse_duty > 0.0 && pulse_duty <= 1.0))
    throw DomainError("pulse duty must lie in (0, 1]");
  if (!(lateral_depth_factor >= 0.0))
    throw DomainError("lateral depth factor must be non-negative");
}

Point3d posture_direction(Posture posture) {
  switch (posture) {
  case Posture::supine:
    return Point3d::UnitZ();
  case Posture::prone:
    return -Point3d::UnitZ();
  case Posture::left_recumbent:
    return Point3d::UnitY();
  case Posture::right_recumbent:
    return -Point3d::UnitY();
  }
  return Point3d::UnitZ();
}

double effective_breath_depth(const VitalProfile &profile) {
  const bool lateral =
      profile.posture == Posture::left_recumbent || profile.posture == Posture::right_recumbent;
  return lateral ? profile.breath_depth * profile.lateral_depth_factor : profile.breath_depth;
}

double pulse_wave(PulseShape shape, double phase, double duty) {
  if (shape == PulseShape::sinusoid)
    return std::sin(phase);
  // Raised-cosine bump over the first `duty` of each period, shifted to zero
  // mean and scaled to peak-to-peak 2.
  double u = std::fmod(phase, kTwoPi);
  if (u < 0.0)
    u += kTwoPi;
  const double width = kTwoPi * duty;
  const double bump = u < width ? 0.5 * (1.0 - std::cos(kTwoPi * u / width)) : 0.0;
  return 2.0 * (bump - 0.5 * duty);
}

StaticPath StaticPath::polar(double amplitude, double phase) {
  if (!(amplitude >= 0.0))
    throw DomainError("static path amplitude must be non-negative");
  return {std::polar(amplitude, phase)};
}

DynamicPath make_dynamic_path(const AntennaPaird &pair, const Point3d &point,
                              const Point3d &direction, double gain) {
  if (!(gain >= 0.0))
    throw DomainError("dynamic path gain must be non-negative");
  DynamicPath path;
  path.gain = gain;
  path.base_length = (point - pair.tx).norm() + (pair.rx - point).norm();
  path.coupling = motion_coupling(pair, point, direction);
  path.reflection_point = point;
  return path;
}

TraceLayout Scene::layout() const {
  TraceLayout layout;
  layout.sample_rate = sample_rate;
  layout.carrier_freq = carrier_freq;
  layout.subcarrier_spacing = subcarrier_spacing;
  layout.n_antennas = static_cast<int>(streams.size());
  layout.n_subcarriers = n_subcarriers;
  return layout;
}

void Scene::validate() const {
  if (streams.empty())
    throw DomainError("scene has no receive antennas");
  layout().validate();
  for (const auto &stream : streams) {
    make_antenna_pair(stream.pair.tx, stream.pair.rx, stream.pair.wavelength);
    for (const auto &r : stream.reflectors) {
      if (!all_finite(r.point) || !(r.gain >= 0.0))
        throw DomainError("reflector must have a finite position and non-negative gain");
      path_gradient(stream.pair, r.point);
    }
  }
}

NoiseSpec NoiseSpec::none() {
  NoiseSpec spec;
  spec.snr_db = std::numeric_limits<double>::infinity();
  spec.outlier_rate = 0.0;
  return spec;
}

bool NoiseSpec::has_noise() const { return std::isfinite(snr_db); }

void NoiseSpec::validate() const {
  if (std::isnan(snr_db))
    throw DomainError("snr_db must be a number");
  if (!(outlier_rate >= 0.0 && outlier_rate < 1.0))
    throw DomainError("outlier rate must lie in [0, 1)");
  if (!(outlier_magnitude >= 0.0))
    throw DomainError("outlier magnitude must be non-negative");
}

double los_phase(const AntennaPaird &pair, double carrier_freq) {
  const double cycles = carrier_freq * pair.los_length() / kSpeedOfLight;
  return -kTwoPi * (cycles - std::floor(cycles));
}

Scene default_scene() {
  const double wavelength = kSpeedOfLight / kDefaultCarrierHz;
  const Point3d tx(0.0, 0.0, 0.0);
  const Point3d primary_rx(0.8, 0.0, 0.0);

  // Body above and beside the midpoint of the primary link, at the center of
  // its third Fresnel zone (zone coordinate 2.5).
  const double half = 0.5 * (primary_rx.x() + 1.25 * wavelength);
  const double offset = std::sqrt(half * half - 0.16) / std::numbers::sqrt2;
  const Point3d body(0.4, offset, offset);

  Scene scene;
  const std::vector<std::pair<Point3d, double>> receivers = {
      {Point3d(1.2, 0.0, 0.0), 0.15},   // long link, weakly coupled
      {Point3d(0.6, -0.45, 0.0), 0.15},
      {primary_rx, 0.3},
  };
  for (const auto &[rx, gain] : receivers) {
    StreamScene stream;
    stream.pair = make_antenna_pair(tx, rx, wavelength);
    stream.static_path = StaticPath::polar(1.0, los_phase(stream.pair, kDefaultCarrierHz));
    stream.reflectors.push_back({body, gain});
    scene.streams.push_back(stream);
  }
  return scene;
}

Eigen::VectorXd synth_displacement(const VitalProfile &profile, double duration_s, double rate_hz) {
  if (!(duration_s > 0.0) || !(rate_hz > 0.0))
    throw DomainError("duration and rate must be positive");
  profile.validate();
  const auto n = static_cast<Eigen::Index>(std::floor(duration_s * rate_hz + 1e-9));
  const double depth = effective_breath_depth(profile);
  const double fb = profile.breath_rate_bpm / 60.0;
  const double fh = profile.heart_rate_bpm / 60.0;

  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate_hz;
    d[i] = depth * std::sin(kTwoPi * fb * t) +
           profile.heart_amplitude * pulse_wave(profile.pulse_shape, kTwoPi * fh * t, profile.pulse_duty);
  }
  return d;
}

std::complex<double> dynamic_cfr(const DynamicPath &path, double displacement, double freq_hz) {
  const double length = path.base_length + path.coupling * displacement;
  const double cycles = freq_hz * length / kSpeedOfLight;
  return std::polar(path.gain, -kTwoPi * (cycles - std::floor(cycles)));
}

std::complex<double> total_cfr(const StaticPath &static_path, const std::vector<DynamicPath> &dynamics,
                               double displacement, double freq_hz) {
  std::complex<double> h = static_path.gain;
  for (const auto &path : dynamics)
    h += dynamic_cfr(path, displacement, freq_hz);
  return h;
}

Synthesis synthesize(const Scene &scene, const VitalProfile &profile, double duration_s,
                     const NoiseSpec &noise, std::uint64_t seed) {
  scene.validate();
  noise.validate();

  Synthesis out;
  out.displacement = synth_displacement(profile, duration_s, scene.sample_rate);
  const TraceLayout layout = scene.layout();
  const auto frames = out.displacement.size();
  const int n_sub = layout.n_subcarriers;
  const Point3d direction = posture_direction(profile.posture);

  std::vector<double> freqs(static_cast<std::size_t>(n_sub));
  for (int k = 0; k < n_sub; ++k)
    freqs[static_cast<std::size_t>(k)] = layout.subcarrier_freq(k);

  Eigen::MatrixXcd h(frames, layout.stream_count());
  for (int a = 0; a < layout.n_antennas; ++a) {
    const StreamScene &stream = scene.streams[static_cast<std::size_t>(a)];
    std::vector<DynamicPath> dynamics;
    for (const auto &r : stream.reflectors)
      dynamics.push_back(make_dynamic_path(stream.pair, r.point, direction, r.gain));
    for (Eigen::Index i = 0; i < frames; ++i)
      for (int k = 0; k < n_sub; ++k)
        h(i, layout.column(a, k)) =
            total_cfr(stream.static_path, dynamics, out.displacement[i], freqs[static_cast<std::size_t>(k)]);
  }

  std::mt19937_64 rng(seed);
  if (noise.has_noise() && frames > 0) {
    const double inv_snr = std::pow(10.0, -noise.snr_db / 10.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Eigen::Index c = 0; c < h.cols(); ++c) {
      // SNR is the ratio of the clean stream's variance to the noise variance.
      const std::complex<double> mean = h.col(c).mean();
      const double variance = (h.col(c).array() - mean).abs2().sum() / static_cast<double>(frames);
      const double sigma = std::sqrt(variance * inv_snr / 2.0);
      for (Eigen::Index i = 0; i < frames; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        h(i, c) += std::complex<double>(sigma * re, sigma * im);
      }
    }
  }

  if (noise.outlier_rate > 0.0 && frames > 1) {
    std::bernoulli_distribution hit(noise.outlier_rate);
    for (Eigen::Index c = 0; c < h.cols(); ++c) {
      const Eigen::ArrayXd amp = h.col(c).cwiseAbs().array();
      const double std_amp = std::sqrt((amp - amp.mean()).square().sum() / static_cast<double>(frames - 1));
      const double spike = noise.outlier_magnitude * std_amp;
      for (Eigen::Index i = 0; i < frames; ++i) {
        if (!hit(rng))
          continue;
        const double a = std::abs(h(i, c));
        h(i, c) = a > 0.0 ? h(i, c) * ((a + spike) / a) : std::complex<double>(spike, 0.0);
        out.outliers.push_back({static_cast<std::size_t>(i), static_cast<int>(c / n_sub),
                                static_cast<int>(c % n_sub)});
      }
    }
    std::sort(out.outliers.begin(), out.outliers.end(), [](const OutlierSite &x, const OutlierSite &y) {
      return std::tie(x.frame, x.antenna, x.subcarrier) < std::tie(y.frame, y.antenna, y.subcarrier);
    });
  }

  out.trace.layout = layout;
  out.trace.timestamps_us.resize(static_cast<std::size_t>(frames));
  for (Eigen::Index i = 0; i < frames; ++i)
    out.trace.timestamps_us[static_cast<std::size_t>(i)] =
        static_cast<std::uint64_t>(std::llround(static_cast<double>(i) * 1e6 / scene.sample_rate));
  out.trace.values = h.cast<CsiSample>();
  return out;
}

CsiTrace synthesize_trace(const Scene &scene, const VitalProfile &profile, double duration_s,
                          const NoiseSpec &noise, std::uint64_t seed) {
  return synthesize(scene, profile, duration_s, noise, seed).trace;
}

} // namespace csivitals
