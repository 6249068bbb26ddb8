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

#include "csivitals/trace.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "csivitals/errors.hpp"

namespace csivitals {

double TraceLayout::subcarrier_freq(int subcarrier) const {
  const double center = 0.5 * static_cast<double>(n_subcarriers - 1);
  return carrier_freq + (static_cast<double>(subcarrier) - center) * subcarrier_spacing;
}

std::uint64_t TraceLayout::frame_period_us() const {
  return static_cast<std::uint64_t>(std::llround(1e6 / sample_rate));
}

void TraceLayout::validate() const {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
    throw DomainError("sample rate must be positive");
  if (n_antennas < 1 || n_antennas > 255)
    throw DomainError("antenna count must be in [1, 255]");
  if (n_subcarriers < 1 || n_subcarriers > 65535)
    throw DomainError("subcarrier count must be in [1, 65535]");
  if (!(carrier_freq > 0.0) || !std::isfinite(carrier_freq))
    throw DomainError("carrier frequency must be positive");
  if (!(subcarrier_spacing >= 0.0) || !std::isfinite(subcarrier_spacing))
    throw DomainError("subcarrier spacing must be non-negative");
}

Eigen::VectorXd CsiTrace::amplitude(int antenna, int subcarrier) const {
  if (antenna < 0 || antenna >= layout.n_antennas || subcarrier < 0 ||
      subcarrier >= layout.n_subcarriers)
    throw DomainError("stream index out of range");
  return values.col(layout.column(antenna, subcarrier)).cwiseAbs().cast<double>();
}

CsiFrame CsiTrace::frame(std::size_t index) const {
  return {timestamps_us.at(index), values.row(static_cast<Eigen::Index>(index))};
}

CsiTrace CsiTrace::slice(std::size_t first, std::size_t count) const {
  if (first + count > frame_count())
    throw DomainError("slice exceeds trace length");
  CsiTrace out;
  out.layout = layout;
  out.timestamps_us.assign(timestamps_us.begin() + static_cast<std::ptrdiff_t>(first),
                           timestamps_us.begin() + static_cast<std::ptrdiff_t>(first + count));
  out.values = values.middleRows(static_cast<Eigen::Index>(first), static_cast<Eigen::Index>(count));
  return out;
}

CsiTrace CsiTrace::tail(std::size_t count) const {
  if (count > frame_count())
    throw DomainError("tail exceeds trace length");
  return slice(frame_count() - count, count);
}

void CsiTrace::validate() const {
  layout.validate();
  if (values.rows() != static_cast<Eigen::Index>(frame_count()) ||
      values.cols() != layout.stream_count())
    throw DomainError("trace value matrix does not match layout");
  const double period = 1e6 / layout.sample_rate;
  for (std::size_t i = 1; i < frame_count(); ++i) {
    if (timestamps_us[i] <= timestamps_us[i - 1])
      throw DomainError("timestamps not strictly increasing at frame " + std::to_string(i));
    const double gap = static_cast<double>(timestamps_us[i] - timestamps_us[i - 1]);
    if (std::abs(gap - period) > 0.01 * period)
      throw DomainError("frame spacing deviates from 1/sample_rate at frame " + std::to_string(i));
  }
}

bool bitwise_equal(const CsiTrace &a, const CsiTrace &b) {
  if (!(a.layout == b.layout) || a.timestamps_us != b.timestamps_us)
    return false;
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols())
    return false;
  return std::memcmp(a.values.data(), b.values.data(),
                     sizeof(CsiSample) * static_cast<std::size_t>(a.values.size())) == 0;
}

} // namespace csivitals
