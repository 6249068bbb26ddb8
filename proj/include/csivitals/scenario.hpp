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

// Scenario files: a line-oriented `key = value` description of the antenna
// geometry, the subject, noise, and optional placement candidates.
//
//   # comment
//   carrier_freq = 5.32e9
//   tx = 0 0 0
//   rx = 0.8 0 0 0.3          # position, optional reflector gain
//   body = 0.4 0.12 0.12
//   posture = supine
//   candidate = bedside 0.4 0.2 0.1
//   motion = 0 0 1 0.005      # direction, amplitude (planner)
//
// Unknown keys are errors. The first `rx` line replaces the default receivers.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "csivitals/channel.hpp"
#include "csivitals/geometry.hpp"

namespace csivitals {

struct Receiver {
  Point3d position = Point3d::Zero();
  double reflector_gain = 0.3;
};

struct Candidate {
  std::string label;
  Point3d point = Point3d::Zero();
};

struct Scenario {
  std::string description;
  double carrier_freq = kDefaultCarrierHz;
  double subcarrier_spacing = 20e6 / 29.0;
  int n_subcarriers = 30;
  double sample_rate = 500.0;

  Point3d tx = Point3d::Zero();
  std::vector<Receiver> receivers;
  Point3d body = Point3d::Zero();
  double static_amplitude = 1.0;
  std::optional<double> static_phase; // unset: free-space LOS phase per antenna

  VitalProfile profile;
  NoiseSpec noise;
  double duration = 60.0;
  std::uint64_t seed = 1;

  std::vector<Candidate> candidates;
  std::optional<MotionVectord> motion; // unset: posture direction, breath depth
  int plan_rx = 0;

  double wavelength() const { return kSpeedOfLight / carrier_freq; }
  AntennaPaird pair(int rx) const;
  MotionVectord plan_motion() const;
  Scene scene() const;
};

Scenario default_scenario();
Scenario parse_scenario(std::istream &in, const std::string &source = "<scenario>");
Scenario load_scenario(const std::filesystem::path &path);
void write_scenario(std::ostream &out, const Scenario &scenario);

struct PlacementRow {
  std::string label;
  Point3d point;
  double zone_index = 0.0;
  int zone = 0;
  double effective_displacement = 0.0;
  double parity = 0.0;
  double score = 0.0;
};

// Candidates scored against scenario.pair(plan_rx), best first; ties keep
// file order.
std::vector<PlacementRow> rank_placements(const Scenario &scenario);

} // namespace csivitals
