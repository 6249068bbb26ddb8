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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "csivitals/dsp.hpp"
#include "csivitals/trace.hpp"

namespace csivitals {

struct StreamConfig {
  double threshold = 40.0;      // s of data before the first estimate
  double update_interval = 1.0; // s between estimates
  PipelineConfig pipeline;

  void validate(double sample_rate) const;
};

// Frame-by-frame estimator over a fixed-capacity ring of the most recent
// `threshold` seconds. Every emitted estimate is estimate_vitals() on exactly
// the buffered frames.
class StreamingEstimator {
public:
  StreamingEstimator(const TraceLayout &layout, const StreamConfig &config);

  // Buffers the frame and returns an estimate when the buffer is full and at
  // least update_interval has passed since the previous one. Throws
  // NonMonotoneTimestamp, leaving the state untouched, for late or duplicate
  // frames.
  std::optional<VitalEstimate> push_frame(const CsiFrame &frame);

  void reset();

  std::size_t capacity() const { return capacity_; }
  std::size_t buffered() const { return count_; }
  std::uint64_t samples_seen() const { return samples_seen_; }
  const std::optional<VitalEstimate> &last_estimate() const { return last_; }
  const TraceLayout &layout() const { return layout_; }
  const StreamConfig &config() const { return config_; }

  // Buffered frames in arrival order.
  CsiTrace window() const;

private:
  TraceLayout layout_;
  StreamConfig config_;
  std::size_t capacity_;
  std::uint64_t interval_us_;

  CsiMatrix ring_;
  std::vector<std::uint64_t> stamps_;
  std::size_t head_ = 0; // slot of the oldest frame
  std::size_t count_ = 0;
  std::uint64_t samples_seen_ = 0;
  std::optional<std::uint64_t> last_stamp_;
  std::optional<std::uint64_t> last_emit_;
  std::optional<VitalEstimate> last_;
};

// Number of estimates a gapless stream of `duration` seconds produces.
std::size_t expected_emissions(double duration, const StreamConfig &config);

} // namespace csivitals
