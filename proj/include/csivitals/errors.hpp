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
#include <stdexcept>
#include <string>

namespace csivitals {

// Invalid argument outside an operation's domain (bad geometry, bad band, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Not enough samples to resolve the requested band.
class InsufficientData : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Any failure decoding an on-disk or piped format.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class BadMagic : public FormatError {
public:
  using FormatError::FormatError;
};

class VersionMismatch : public FormatError {
public:
  using FormatError::FormatError;
};

class TruncatedHeader : public FormatError {
public:
  using FormatError::FormatError;
};

class TruncatedFrame : public FormatError {
public:
  TruncatedFrame(std::size_t frame_index, const std::string &what)
      : FormatError(what), frame_index_(frame_index) {}

  std::size_t frame_index() const noexcept { return frame_index_; }

private:
  std::size_t frame_index_;
};

class ParseError : public FormatError {
public:
  using FormatError::FormatError;
};

class NonMonotoneTimestamp : public std::runtime_error {
public:
  NonMonotoneTimestamp(std::size_t frame_index, const std::string &what)
      : std::runtime_error(what), frame_index_(frame_index) {}

  std::size_t frame_index() const noexcept { return frame_index_; }

private:
  std::size_t frame_index_;
};

class FileNotFound : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class AlignmentError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DuplicateSession : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace csivitals
