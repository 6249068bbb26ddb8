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

#include "csivitals/streaming.hpp"

#include <cmath>
#include <string>

#include "csivitals/errors.hpp"

namespace csivitals {

void StreamConfig::validate(double sample_rate) const {
  if (!(update_interval > 0.0))
    throw DomainError("update interval must be positive");
  if (!(threshold >= update_interval))
    throw DomainError("threshold must be at least the update interval");
  if (threshold + 1e-9 < pipeline.fft_window)
    throw DomainError("threshold must cover the FFT window");
  pipeline.validate(sample_rate);
}

StreamingEstimator::StreamingEstimator(const TraceLayout &layout, const StreamConfig &config)
    : layout_(layout), config_(config) {
  layout_.validate();
  config_.validate(layout_.sample_rate);
  capacity_ = static_cast<std::size_t>(std::llround(config_.threshold * layout_.sample_rate));
  interval_us_ = static_cast<std::uint64_t>(std::llround(config_.update_interval * 1e6));
  ring_.resize(static_cast<Eigen::Index>(capacity_), layout_.stream_count());
  stamps_.assign(capacity_, 0);
}

std::optional<VitalEstimate> StreamingEstimator::push_frame(const CsiFrame &frame) {
  if (frame.values.size() != layout_.stream_count())
    throw DomainError("frame has " + std::to_string(frame.values.size()) + " values, layout expects " +
                      std::to_string(layout_.stream_count()));
  if (last_stamp_ && frame.timestamp_us <= *last_stamp_)
    throw NonMonotoneTimestamp(samples_seen_, "frame " + std::to_string(samples_seen_) + " timestamp " +
                                                  std::to_string(frame.timestamp_us) +
                                                  " us does not follow " + std::to_string(*last_stamp_) + " us");

  const std::size_t slot = (head_ + count_) % capacity_;
  ring_.row(static_cast<Eigen::Index>(slot)) = frame.values;
  stamps_[slot] = frame.timestamp_us;
  if (count_ < capacity_)
    ++count_;
  else
    head_ = (head_ + 1) % capacity_;
  ++samples_seen_;
  last_stamp_ = frame.timestamp_us;

  if (count_ < capacity_)
    return std::nullopt;
  if (last_emit_ && frame.timestamp_us - *last_emit_ < interval_us_)
    return std::nullopt;

  last_emit_ = frame.timestamp_us;
  last_ = estimate_vitals(window(), config_.pipeline);
  return last_;
}

void StreamingEstimator::reset() {
  head_ = 0;
  count_ = 0;
  samples_seen_ = 0;
  last_stamp_.reset();
  last_emit_.reset();
  last_.reset();
}

CsiTrace StreamingEstimator::window() const {
  CsiTrace out;
  out.layout = layout_;
  out.timestamps_us.resize(count_);
  out.values.resize(static_cast<Eigen::Index>(count_), layout_.stream_count());
  for (std::size_t i = 0; i < count_; ++i) {
    const std::size_t slot = (head_ + i) % capacity_;
    out.timestamps_us[i] = stamps_[slot];
    out.values.row(static_cast<Eigen::Index>(i)) = ring_.row(static_cast<Eigen::Index>(slot));
  }
  return out;
}

std::size_t expected_emissions(double duration, const StreamConfig &config) {
  if (duration + 1e-9 < config.threshold)
    return 0;
  return static_cast<std::size_t>(std::floor((duration - config.threshold) / config.update_interval + 1e-9)) + 1;
}

} // namespace csivitals
