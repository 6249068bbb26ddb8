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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace csivitals {

using CsiSample = std::complex<float>;
// One row per frame; columns antenna-major: antenna * n_subcarriers + subcarrier.
using CsiMatrix = Eigen::Matrix<CsiSample, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CsiRow = Eigen::Matrix<CsiSample, 1, Eigen::Dynamic>;

struct TraceLayout {
  double sample_rate = 500.0;
  double carrier_freq = 5.32e9;
  double subcarrier_spacing = 20e6 / 29.0;
  int n_antennas = 3;
  int n_subcarriers = 30;

  int stream_count() const { return n_antennas * n_subcarriers; }
  int column(int antenna, int subcarrier) const { return antenna * n_subcarriers + subcarrier; }
  // Subcarriers are spaced uniformly and centered on the carrier.
  double subcarrier_freq(int subcarrier) const;
  std::uint64_t frame_period_us() const;

  void validate() const;
  bool operator==(const TraceLayout &) const = default;
};

struct CsiFrame {
  std::uint64_t timestamp_us = 0;
  CsiRow values;
};

struct CsiTrace {
  TraceLayout layout;
  std::vector<std::uint64_t> timestamps_us;
  CsiMatrix values;

  std::size_t frame_count() const { return timestamps_us.size(); }
  bool empty() const { return timestamps_us.empty(); }
  double time_s(std::size_t frame) const { return static_cast<double>(timestamps_us[frame]) * 1e-6; }

  // |H| over time for one (antenna, subcarrier) stream.
  Eigen::VectorXd amplitude(int antenna, int subcarrier) const;

  CsiFrame frame(std::size_t index) const;
  CsiTrace slice(std::size_t first, std::size_t count) const;
  CsiTrace tail(std::size_t count) const;

  // Strictly increasing timestamps spaced 1/sample_rate within 1%.
  void validate() const;
};

// Same layout, timestamps, and bit patterns of every sample.
bool bitwise_equal(const CsiTrace &a, const CsiTrace &b);

} // namespace csivitals
