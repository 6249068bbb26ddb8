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

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "csivitals/errors.hpp"
#include "csivitals/io.hpp"

namespace csivitals {

namespace {

using nlohmann::json;

constexpr const char *kSessionSuffix = ".session.json";

json to_json(const VitalEstimate &e) {
  return {{"breath_bpm", e.breath_bpm},
          {"heart_bpm", e.heart_bpm},
          {"breath_confidence", e.breath_confidence},
          {"heart_confidence", e.heart_confidence},
          {"breath_confident", e.breath_confident},
          {"heart_confident", e.heart_confident},
          {"window_start", e.window_start},
          {"window_end", e.window_end},
          {"antenna", e.antenna},
          {"subcarrier", e.subcarrier}};
}

VitalEstimate estimate_from_json(const json &j) {
  VitalEstimate e;
  e.breath_bpm = j.at("breath_bpm").get<double>();
  e.heart_bpm = j.at("heart_bpm").get<double>();
  e.breath_confidence = j.at("breath_confidence").get<double>();
  e.heart_confidence = j.at("heart_confidence").get<double>();
  e.breath_confident = j.at("breath_confident").get<bool>();
  e.heart_confident = j.at("heart_confident").get<bool>();
  e.window_start = j.at("window_start").get<double>();
  e.window_end = j.at("window_end").get<double>();
  e.antenna = j.at("antenna").get<int>();
  e.subcarrier = j.at("subcarrier").get<int>();
  return e;
}

bool valid_id(const std::string &id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
  });
}

// Session files sorted by their sequence prefix.
std::vector<std::filesystem::path> session_files(const std::filesystem::path &store) {
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::exists(store))
    return files;
  for (const auto &entry : std::filesystem::directory_iterator(store)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > std::string(kSessionSuffix).size() &&
        name.ends_with(kSessionSuffix))
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

SessionRecord load(const std::filesystem::path &file) {
  std::ifstream in(file);
  json j;
  try {
    in >> j;
    SessionRecord r;
    r.id = j.at("id").get<std::string>();
    r.scenario = j.at("scenario").get<std::string>();
    r.trace_path = j.at("trace").get<std::string>();
    for (const auto &e : j.at("estimates"))
      r.estimates.push_back(estimate_from_json(e));
    return r;
  } catch (const json::exception &e) {
    throw FormatError("corrupt session file " + file.string() + ": " + e.what());
  }
}

} // namespace

void append_session(const std::filesystem::path &store, const SessionRecord &record) {
  if (!valid_id(record.id))
    throw DomainError("session id '" + record.id + "' must be non-empty and use [A-Za-z0-9._-]");
  std::filesystem::create_directories(store);

  const auto files = session_files(store);
  for (const auto &file : files)
    if (load(file).id == record.id)
      throw DuplicateSession("session '" + record.id + "' already exists in " + store.string());

  json j = {{"id", record.id}, {"scenario", record.scenario}, {"trace", record.trace_path}};
  j["estimates"] = json::array();
  for (const auto &e : record.estimates)
    j["estimates"].push_back(to_json(e));

  std::ostringstream name;
  name << std::setw(8) << std::setfill('0') << files.size() << '-' << record.id << kSessionSuffix;
  const std::filesystem::path target = store / name.str();
  const std::filesystem::path staging = store / (name.str() + ".tmp");
  {
    std::ofstream out(staging, std::ios::trunc);
    out << j.dump(2) << '\n';
    out.flush();
    if (!out)
      throw FormatError("cannot write " + staging.string());
  }
  std::filesystem::rename(staging, target);
}

std::vector<SessionRecord> list_sessions(const std::filesystem::path &store) {
  std::vector<SessionRecord> out;
  for (const auto &file : session_files(store))
    out.push_back(load(file));
  return out;
}

} // namespace csivitals
