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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "csivitals/channel.hpp"
#include "csivitals/errors.hpp"
#include "csivitals/streaming.hpp"

using namespace csivitals;

namespace {

const CsiTrace &shared_trace() {
  static const CsiTrace trace = synthesize_trace(default_scene(), VitalProfile{}, 47.0, NoiseSpec{}, 21);
  return trace;
}

std::vector<std::pair<std::size_t, VitalEstimate>> run(StreamingEstimator &est, const CsiTrace &t, std::size_t frames) {
  std::vector<std::pair<std::size_t, VitalEstimate>> out;
  for (std::size_t i = 0; i < frames; ++i)
    if (auto e = est.push_frame(t.frame(i)))
      out.emplace_back(i, *e);
  return out;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_CASE("emission schedule") {
  const CsiTrace &t = shared_trace();
  StreamConfig config;

  StreamingEstimator a(t.layout, config);
  CHECK(run(a, t, 39 * 500).empty());

  StreamingEstimator b(t.layout, config);
  const auto first = run(b, t, 40 * 500);
  REQUIRE(first.size() == 1);
  CHECK(first[0].first == 40 * 500 - 1);

  StreamingEstimator c(t.layout, config);
  const auto two = run(c, t, 41 * 500);
  CHECK(two.size() == 2);
  CHECK(expected_emissions(41.0, config) == 2);
  CHECK(expected_emissions(39.0, config) == 0);
  CHECK(expected_emissions(40.0, config) == 1);
}

TEST_CASE("emission count formula") {
  const CsiTrace &t = shared_trace();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    StreamConfig config;
    config.update_interval = std::uniform_real_distribution<double>(0.25, 4.0)(rng);
    const std::size_t frames = 20000 + rng() % 3500;
    StreamingEstimator est(t.layout, config);
    const auto out = run(est, t, frames);
    CHECK(out.size() == expected_emissions(static_cast<double>(frames) / 500.0, config));
    CHECK(std::floor((frames / 500.0 - 40.0) / config.update_interval) + 1 == static_cast<double>(out.size()));
    CHECK(est.buffered() == est.capacity());
    CHECK(est.samples_seen() == frames);
  }
}

TEST_CASE("stream matches batch bit for bit") {
  const CsiTrace &t = shared_trace();
  StreamConfig config;
  config.update_interval = 2.5;
  StreamingEstimator est(t.layout, config);
  const auto out = run(est, t, t.frame_count());
  REQUIRE(!out.empty());
  for (const auto &[i, e] : out) {
    const VitalEstimate batch = estimate_vitals(t.slice(i + 1 - est.capacity(), est.capacity()), config.pipeline);
    CHECK(same_bits(e.breath_bpm, batch.breath_bpm));
    CHECK(same_bits(e.heart_bpm, batch.heart_bpm));
    CHECK(same_bits(e.breath_confidence, batch.breath_confidence));
    CHECK(e.window_end - e.window_start == doctest::Approx(config.threshold).epsilon(1.0 / 500.0 / 40.0 + 1e-12));
  }
  CHECK(est.last_estimate()->breath_bpm == out.back().second.breath_bpm);
}

TEST_CASE("reset") {
  const CsiTrace &t = shared_trace();
  StreamConfig config;
  StreamingEstimator est(t.layout, config);
  run(est, t, 40 * 500);
  est.reset();
  est.reset();
  CHECK(est.buffered() == 0);
  CHECK(est.samples_seen() == 0);
  CHECK_FALSE(est.last_estimate().has_value());
  CHECK_FALSE(est.push_frame(t.frame(0)).has_value());
  est.reset();
  // A full threshold is needed again.
  const auto again = run(est, t, 40 * 500);
  REQUIRE(again.size() == 1);
  CHECK(again[0].first == 40 * 500 - 1);
}

TEST_CASE("non-monotone frames are rejected without side effects") {
  const CsiTrace &t = shared_trace();
  StreamingEstimator est(t.layout, StreamConfig{});
  run(est, t, 100);
  const std::size_t buffered = est.buffered();
  CHECK_THROWS_AS(est.push_frame(t.frame(50)), NonMonotoneTimestamp);
  CHECK_THROWS_AS(est.push_frame(t.frame(99)), NonMonotoneTimestamp);
  CHECK(est.buffered() == buffered);
  CHECK(est.samples_seen() == 100);
  CHECK_NOTHROW(est.push_frame(t.frame(100)));
  try {
    est.push_frame(t.frame(3));
  } catch (const NonMonotoneTimestamp &e) {
    CHECK(e.frame_index() == 101);
  }
}

TEST_CASE("memory is bounded by the threshold") {
  const CsiTrace &t = shared_trace();
  StreamConfig config;
  config.threshold = config.pipeline.fft_window;
  StreamingEstimator est(t.layout, config);
  CHECK(est.capacity() == 20000);
  run(est, t, t.frame_count());
  CHECK(est.buffered() == 20000);
  CHECK(est.window().frame_count() == 20000);
}

TEST_CASE("configuration validation") {
  const TraceLayout layout;
  StreamConfig bad;
  bad.update_interval = 0.0;
  CHECK_THROWS_AS(StreamingEstimator(layout, bad), DomainError);
  bad = {};
  bad.update_interval = 50.0;
  CHECK_THROWS_AS(StreamingEstimator(layout, bad), DomainError);
  bad = {};
  bad.threshold = 10.0;
  CHECK_THROWS_AS(StreamingEstimator(layout, bad), DomainError);
}
