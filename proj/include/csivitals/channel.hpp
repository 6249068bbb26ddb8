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

// Synthetic CSI: a static channel plus body-reflected paths whose length is
// modulated by breathing and heartbeat motion.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "csivitals/geometry.hpp"
#include "csivitals/trace.hpp"

namespace csivitals {

enum class Posture { supine, prone, left_recumbent, right_recumbent };
enum class PulseShape { raised_cosine, sinusoid };

std::string to_string(Posture posture);
Posture parse_posture(const std::string &name);

struct VitalProfile {
  double breath_rate_bpm = 18.0;
  double breath_depth = 0.005;      // chest excursion amplitude, m
  double heart_rate_bpm = 72.0;
  double heart_amplitude = 0.0005;  // m
  Posture posture = Posture::supine;
  PulseShape pulse_shape = PulseShape::raised_cosine;
  double pulse_duty = 0.3;          // fraction of the beat period the pulse occupies
  double lateral_depth_factor = 0.4; // breath depth scale for recumbent postures

  void validate() const;
};

// Direction of chest motion for a posture; z is vertical, y is lateral.
Point3d posture_direction(Posture posture);
double effective_breath_depth(const VitalProfile &profile);

// Zero-mean periodic heartbeat waveform with peak-to-peak 2, like sin().
double pulse_wave(PulseShape shape, double phase, double duty);

struct StaticPath {
  std::complex<double> gain{1.0, 0.0};

  static StaticPath polar(double amplitude, double phase);
};

struct DynamicPath {
  double gain = 0.0;        // h_k >= 0
  double base_length = 0.0; // m, >= |TxRx|
  double coupling = 1.0;    // path change per meter of body displacement (signed)
  Point3d reflection_point = Point3d::Zero();
};

// Reflected path via `point` for motion along `direction`.
DynamicPath make_dynamic_path(const AntennaPaird &pair, const Point3d &point,
                              const Point3d &direction, double gain);

struct Reflector {
  Point3d point = Point3d::Zero();
  double gain = 0.3;
};

// Everything seen by one receive antenna.
struct StreamScene {
  AntennaPaird pair;
  StaticPath static_path;
  std::vector<Reflector> reflectors;
};

struct Scene {
  std::vector<StreamScene> streams;
  double carrier_freq = kDefaultCarrierHz;
  double subcarrier_spacing = 20e6 / 29.0;
  int n_subcarriers = 30;
  double sample_rate = 500.0;

  TraceLayout layout() const;
  void validate() const;
};

struct NoiseSpec {
  double snr_db = 20.0;
  double outlier_rate = 0.0;
  double outlier_magnitude = 10.0; // multiples of the stream's amplitude std

  static NoiseSpec none();
  bool has_noise() const;
  void validate() const;
};

struct OutlierSite {
  std::size_t frame;
  int antenna;
  int subcarrier;

  bool operator==(const OutlierSite &) const = default;
};

struct Synthesis {
  CsiTrace trace;
  Eigen::VectorXd displacement;
  std::vector<OutlierSite> outliers;
};

// Static phase that puts the LOS path at its free-space phase at the carrier,
// making the relative phase of a reflection follow its Fresnel zone index.
double los_phase(const AntennaPaird &pair, double carrier_freq);

// Three receive antennas around a bed, the body sitting mid-zone for the
// primary pair.
Scene default_scene();

Eigen::VectorXd synth_displacement(const VitalProfile &profile, double duration_s, double rate_hz);

std::complex<double> dynamic_cfr(const DynamicPath &path, double displacement, double freq_hz);

std::complex<double> total_cfr(const StaticPath &static_path, const std::vector<DynamicPath> &dynamics,
                               double displacement, double freq_hz);

Synthesis synthesize(const Scene &scene, const VitalProfile &profile, double duration_s,
                     const NoiseSpec &noise, std::uint64_t seed);

CsiTrace synthesize_trace(const Scene &scene, const VitalProfile &profile, double duration_s,
                          const NoiseSpec &noise, std::uint64_t seed);

} // namespace csivitals
