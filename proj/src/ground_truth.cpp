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

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "csivitals/errors.hpp"
#include "csivitals/io.hpp"

namespace csivitals {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string &text, const std::string &where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception &) {
    throw ParseError(where + ": '" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(v))
    throw ParseError(where + ": '" + text + "' is not a finite number");
  return v;
}

} // namespace

TimeSeries parse_ground_truth(std::istream &in, const std::string &source) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "time_s,value")
    throw ParseError(source + ": expected header 'time_s,value'");

  TimeSeries series;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = trim(line);
    if (row.empty())
      continue;
    const std::string where = source + ":" + std::to_string(line_no);
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos)
      throw ParseError(where + ": expected two comma-separated fields");
    const double t = parse_number(trim(row.substr(0, comma)), where);
    const double v = parse_number(trim(row.substr(comma + 1)), where);
    if (!series.empty() && !(t > series.time_s.back()))
      throw ParseError(where + ": time " + std::to_string(t) + " does not increase");
    series.time_s.push_back(t);
    series.value.push_back(v);
  }
  return series;
}

TimeSeries read_ground_truth(const std::filesystem::path &path) {
  if (!std::filesystem::exists(path))
    throw FileNotFound("file not found: " + path.string());
  std::ifstream in(path);
  if (!in)
    throw FormatError("cannot open " + path.string());
  return parse_ground_truth(in, path.string());
}

void write_ground_truth(const std::filesystem::path &path, const TimeSeries &series) {
  std::ofstream out(path);
  if (!out)
    throw FormatError("cannot open " + path.string() + " for writing");
  out << "time_s,value\n" << std::setprecision(12);
  for (std::size_t i = 0; i < series.size(); ++i)
    out << series.time_s[i] << ',' << series.value[i] << '\n';
}

} // namespace csivitals
