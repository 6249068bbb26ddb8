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

// On-disk formats.
//
// Trace file (little-endian, no padding):
//   header  "CSIT" | u16 version | f64 sample_rate | u8 n_antennas |
//           u16 n_subcarriers | f64 carrier_freq | f64 subcarrier_spacing
//   frames  u64 timestamp_us, then n_antennas * n_subcarriers pairs of
//           f32 (real, imag), antenna-major
//
// The frame count is implied by the file length.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "csivitals/dsp.hpp"
#include "csivitals/trace.hpp"

namespace csivitals {

inline constexpr char kTraceMagic[4] = {'C', 'S', 'I', 'T'};
inline constexpr std::uint16_t kTraceVersion = 1;
inline constexpr std::size_t kTraceHeaderSize = 4 + 2 + 8 + 1 + 2 + 8 + 8;

std::size_t frame_size_bytes(const TraceLayout &layout);

void write_trace_header(std::ostream &out, const TraceLayout &layout);
void write_trace_frame(std::ostream &out, const TraceLayout &layout, const CsiFrame &frame);

void write_trace(const std::filesystem::path &path, const CsiTrace &trace);
CsiTrace read_trace(const std::filesystem::path &path);
CsiTrace read_trace(std::istream &in);

// Incremental reader for files and pipes.
class TraceReader {
public:
  explicit TraceReader(std::istream &in);

  const TraceLayout &layout() const { return layout_; }
  // False at a clean end of stream; throws TruncatedFrame on a partial frame.
  bool next(CsiFrame &frame);
  std::size_t frames_read() const { return index_; }

private:
  std::istream &in_;
  TraceLayout layout_;
  std::vector<unsigned char> buffer_;
  std::size_t index_ = 0;
};

// `time_s,amplitude` rows for one stream.
void write_amplitude_csv(const std::filesystem::path &path, const CsiTrace &trace, int antenna, int subcarrier);
void write_spectrum_csv(const std::filesystem::path &path, const SpectrumEstimate &breath,
                        const SpectrumEstimate &heart);

struct TimeSeries {
  std::vector<double> time_s;
  std::vector<double> value;

  std::size_t size() const { return time_s.size(); }
  bool empty() const { return time_s.empty(); }
};

// Accelerometer breathing trace plus oximeter pulse readings.
struct GroundTruth {
  TimeSeries breath; // (time, acceleration in arbitrary units)
  TimeSeries pulse;  // (time, bpm)
};

// CSV with header `time_s,value`; times must strictly increase.
TimeSeries read_ground_truth(const std::filesystem::path &path);
TimeSeries parse_ground_truth(std::istream &in, const std::string &source = "<stream>");
void write_ground_truth(const std::filesystem::path &path, const TimeSeries &series);

struct SessionRecord {
  std::string id;
  std::string scenario;
  std::string trace_path;
  std::vector<VitalEstimate> estimates;
};

// Directory-backed append-only log: one file per session, numbered in
// insertion order.
void append_session(const std::filesystem::path &store, const SessionRecord &record);
std::vector<SessionRecord> list_sessions(const std::filesystem::path &store);

} // namespace csivitals
