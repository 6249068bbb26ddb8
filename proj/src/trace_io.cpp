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

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "csivitals/errors.hpp"
#include "csivitals/io.hpp"

namespace csivitals {

namespace {

template <typename UInt>
void put_le(std::vector<unsigned char> &buf, UInt v) {
  for (std::size_t i = 0; i < sizeof(UInt); ++i)
    buf.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFFu));
}

template <typename UInt>
UInt get_le(const unsigned char *p) {
  UInt v = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i)
    v |= static_cast<UInt>(p[i]) << (8 * i);
  return v;
}

void put_f64(std::vector<unsigned char> &buf, double v) { put_le(buf, std::bit_cast<std::uint64_t>(v)); }
void put_f32(std::vector<unsigned char> &buf, float v) { put_le(buf, std::bit_cast<std::uint32_t>(v)); }
double get_f64(const unsigned char *p) { return std::bit_cast<double>(get_le<std::uint64_t>(p)); }
float get_f32(const unsigned char *p) { return std::bit_cast<float>(get_le<std::uint32_t>(p)); }

std::ifstream open_input(const std::filesystem::path &path) {
  if (!std::filesystem::exists(path))
    throw FileNotFound("file not found: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw FormatError("cannot open " + path.string());
  return in;
}

TraceLayout parse_header(std::istream &in) {
  unsigned char raw[kTraceHeaderSize];
  in.read(reinterpret_cast<char *>(raw), static_cast<std::streamsize>(kTraceHeaderSize));
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got >= 4 && std::memcmp(raw, kTraceMagic, 4) != 0)
    throw BadMagic("bad magic '" + std::string(reinterpret_cast<const char *>(raw), 4) + "', expected 'CSIT'");
  if (got < kTraceHeaderSize)
    throw TruncatedHeader("trace header truncated: " + std::to_string(got) + " of " +
                          std::to_string(kTraceHeaderSize) + " bytes");

  const auto version = get_le<std::uint16_t>(raw + 4);
  if (version != kTraceVersion)
    throw VersionMismatch("unsupported trace format version " + std::to_string(version) + ", expected " +
                          std::to_string(kTraceVersion));
  TraceLayout layout;
  layout.sample_rate = get_f64(raw + 6);
  layout.n_antennas = raw[14];
  layout.n_subcarriers = get_le<std::uint16_t>(raw + 15);
  layout.carrier_freq = get_f64(raw + 17);
  layout.subcarrier_spacing = get_f64(raw + 25);
  try {
    layout.validate();
  } catch (const DomainError &e) {
    throw FormatError(std::string("invalid trace header: ") + e.what());
  }
  return layout;
}

} // namespace

std::size_t frame_size_bytes(const TraceLayout &layout) {
  return 8 + 8 * static_cast<std::size_t>(layout.stream_count());
}

void write_trace_header(std::ostream &out, const TraceLayout &layout) {
  layout.validate();
  std::vector<unsigned char> buf;
  buf.insert(buf.end(), kTraceMagic, kTraceMagic + 4);
  put_le(buf, kTraceVersion);
  put_f64(buf, layout.sample_rate);
  buf.push_back(static_cast<unsigned char>(layout.n_antennas));
  put_le(buf, static_cast<std::uint16_t>(layout.n_subcarriers));
  put_f64(buf, layout.carrier_freq);
  put_f64(buf, layout.subcarrier_spacing);
  out.write(reinterpret_cast<const char *>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

void write_trace_frame(std::ostream &out, const TraceLayout &layout, const CsiFrame &frame) {
  if (frame.values.size() != layout.stream_count())
    throw DomainError("frame width does not match layout");
  std::vector<unsigned char> buf;
  buf.reserve(frame_size_bytes(layout));
  put_le(buf, frame.timestamp_us);
  for (Eigen::Index c = 0; c < frame.values.size(); ++c) {
    put_f32(buf, frame.values[c].real());
    put_f32(buf, frame.values[c].imag());
  }
  out.write(reinterpret_cast<const char *>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

void write_trace(const std::filesystem::path &path, const CsiTrace &trace) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw FormatError("cannot open " + path.string() + " for writing");
  write_trace_header(out, trace.layout);
  for (std::size_t i = 0; i < trace.frame_count(); ++i)
    write_trace_frame(out, trace.layout, trace.frame(i));
  out.flush();
  if (!out)
    throw FormatError("write to " + path.string() + " failed");
}

TraceReader::TraceReader(std::istream &in) : in_(in), layout_(parse_header(in)) {
  buffer_.resize(frame_size_bytes(layout_));
}

bool TraceReader::next(CsiFrame &frame) {
  in_.read(reinterpret_cast<char *>(buffer_.data()), static_cast<std::streamsize>(buffer_.size()));
  const auto got = static_cast<std::size_t>(in_.gcount());
  if (got == 0)
    return false;
  if (got < buffer_.size())
    throw TruncatedFrame(index_, "frame " + std::to_string(index_) + " truncated: " + std::to_string(got) +
                                     " of " + std::to_string(buffer_.size()) + " bytes");
  frame.timestamp_us = get_le<std::uint64_t>(buffer_.data());
  frame.values.resize(layout_.stream_count());
  const unsigned char *p = buffer_.data() + 8;
  for (Eigen::Index c = 0; c < frame.values.size(); ++c, p += 8)
    frame.values[c] = CsiSample(get_f32(p), get_f32(p + 4));
  ++index_;
  return true;
}

CsiTrace read_trace(std::istream &in) {
  TraceReader reader(in);
  CsiTrace trace;
  trace.layout = reader.layout();
  std::vector<CsiRow> rows;
  CsiFrame frame;
  while (reader.next(frame)) {
    trace.timestamps_us.push_back(frame.timestamp_us);
    rows.push_back(frame.values);
  }
  trace.values.resize(static_cast<Eigen::Index>(rows.size()), trace.layout.stream_count());
  for (std::size_t i = 0; i < rows.size(); ++i)
    trace.values.row(static_cast<Eigen::Index>(i)) = rows[i];
  return trace;
}

CsiTrace read_trace(const std::filesystem::path &path) {
  std::ifstream in = open_input(path);
  const auto file_size = std::filesystem::file_size(path);
  TraceReader reader(in);
  const std::size_t frame_bytes = frame_size_bytes(reader.layout());
  const std::size_t payload = file_size - kTraceHeaderSize;
  if (payload % frame_bytes != 0)
    throw TruncatedFrame(payload / frame_bytes, "file length " + std::to_string(file_size) +
                                                    " disagrees with frame size " + std::to_string(frame_bytes) +
                                                    ": frame " + std::to_string(payload / frame_bytes) +
                                                    " is truncated");

  CsiTrace trace;
  trace.layout = reader.layout();
  const std::size_t frames = payload / frame_bytes;
  trace.timestamps_us.resize(frames);
  trace.values.resize(static_cast<Eigen::Index>(frames), trace.layout.stream_count());
  CsiFrame frame;
  for (std::size_t i = 0; i < frames; ++i) {
    if (!reader.next(frame))
      throw TruncatedFrame(i, "unexpected end of file at frame " + std::to_string(i));
    trace.timestamps_us[i] = frame.timestamp_us;
    trace.values.row(static_cast<Eigen::Index>(i)) = frame.values;
  }
  return trace;
}

void write_amplitude_csv(const std::filesystem::path &path, const CsiTrace &trace, int antenna, int subcarrier) {
  const Eigen::VectorXd amp = trace.amplitude(antenna, subcarrier);
  std::ofstream out(path);
  if (!out)
    throw FormatError("cannot open " + path.string() + " for writing");
  out << "time_s,amplitude\n" << std::setprecision(9);
  for (std::size_t i = 0; i < trace.frame_count(); ++i)
    out << trace.time_s(i) << ',' << amp[static_cast<Eigen::Index>(i)] << '\n';
}

void write_spectrum_csv(const std::filesystem::path &path, const SpectrumEstimate &breath,
                        const SpectrumEstimate &heart) {
  std::ofstream out(path);
  if (!out)
    throw FormatError("cannot open " + path.string() + " for writing");
  out << "band,freq_hz,bpm,magnitude\n" << std::setprecision(9);
  auto dump = [&](const char *name, const SpectrumEstimate &s) {
    for (Eigen::Index i = 0; i < s.frequencies.size(); ++i)
      out << name << ',' << s.frequencies[i] << ',' << 60.0 * s.frequencies[i] << ',' << s.magnitudes[i] << '\n';
  };
  dump("breath", breath);
  dump("heart", heart);
}

} // namespace csivitals
