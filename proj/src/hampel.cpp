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
#include <cmath>
#include <string>
#include <vector>

#include "csivitals/dsp.hpp"
#include "csivitals/errors.hpp"

namespace csivitals {

namespace {

constexpr double kMadScale = 1.4826;
constexpr int kMaxPasses = 64;

double sorted_median(const std::vector<double> &sorted) {
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

// k-th smallest (0-based) of |sorted[j] - median|. Deviations below the split
// point p and above it are each already ordered, so this is a selection over
// two sorted sequences.
double kth_deviation(const std::vector<double> &sorted, double median, std::size_t k) {
  const std::size_t n = sorted.size();
  const std::size_t p = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), median) - sorted.begin());
  auto a = [&](std::size_t i) { return median - sorted[p - 1 - i]; }; // size p
  auto b = [&](std::size_t j) { return sorted[p + j] - median; };     // size n - p
  const std::size_t na = p, nb = n - p, take = k + 1;
  std::size_t lo = take > nb ? take - nb : 0;
  std::size_t hi = std::min(take, na);
  while (true) {
    const std::size_t i = lo + (hi - lo) / 2;
    const std::size_t j = take - i;
    if (i < na && j > 0 && b(j - 1) > a(i))
      lo = i + 1;
    else if (i > 0 && j < nb && a(i - 1) > b(j))
      hi = i - 1;
    else if (i == 0)
      return b(j - 1);
    else if (j == 0)
      return a(i - 1);
    else
      return std::max(a(i - 1), b(j - 1));
  }
}

} // namespace

void AmplitudeSeries::validate() const {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
    throw DomainError("sample rate must be positive");
  if (!samples.allFinite())
    throw DomainError("amplitude series contains non-finite samples");
}

Eigen::VectorXd hampel_pass(const Eigen::VectorXd &x, int window, double nsigma) {
  if (window < 3 || window % 2 == 0)
    throw DomainError("Hampel window must be odd and at least 3, got " + std::to_string(window));
  if (!(nsigma >= 0.0))
    throw DomainError("Hampel threshold must be non-negative");

  const Eigen::Index n = x.size();
  const Eigen::Index half = window / 2;
  Eigen::VectorXd y = x;
  if (n == 0)
    return y;

  // Sorted contents of the (edge-truncated) window centred on i.
  std::vector<double> sorted;
  sorted.reserve(static_cast<std::size_t>(window));

  Eigen::Index lo = 0, hi = -1; // current window [lo, hi]
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index want_lo = std::max<Eigen::Index>(0, i - half);
    const Eigen::Index want_hi = std::min<Eigen::Index>(n - 1, i + half);
    while (hi < want_hi) {
      ++hi;
      sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), x[hi]), x[hi]);
    }
    while (lo < want_lo) {
      sorted.erase(std::lower_bound(sorted.begin(), sorted.end(), x[lo]));
      ++lo;
    }

    const double median = sorted_median(sorted);
    const std::size_t m = sorted.size();
    double mad = kth_deviation(sorted, median, m / 2);
    if (m % 2 == 0)
      mad = 0.5 * (mad + kth_deviation(sorted, median, m / 2 - 1));

    if (std::abs(x[i] - median) > nsigma * kMadScale * mad)
      y[i] = median;
  }
  return y;
}

AmplitudeSeries hampel_filter(const AmplitudeSeries &series, int window, double nsigma) {
  series.validate();
  AmplitudeSeries out{series.sample_rate, hampel_pass(series.samples, window, nsigma)};
  for (int pass = 1; pass < kMaxPasses; ++pass) {
    Eigen::VectorXd next = hampel_pass(out.samples, window, nsigma);
    if (next == out.samples)
      break;
    out.samples = std::move(next);
  }
  return out;
}

} // namespace csivitals
