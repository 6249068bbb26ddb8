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

// Fresnel-zone geometry for a single transmit/receive antenna pair.
//
// All functions are templated on the scalar type and accept Eigen 3-vectors,
// so they compose with Eigen expressions. The double-precision aliases at the
// bottom are what the rest of the library uses.

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "csivitals/errors.hpp"

namespace csivitals {

template <typename Scalar>
using Point3 = Eigen::Matrix<Scalar, 3, 1>;

inline constexpr double kSpeedOfLight = 299792458.0;

// 5.32 GHz carrier (channel 64)
inline constexpr double kDefaultCarrierHz = 5.32e9;
inline constexpr double kDefaultWavelength = 0.05635;

template <typename Scalar>
struct AntennaPair {
  Point3<Scalar> tx;
  Point3<Scalar> rx;
  Scalar wavelength;

  Scalar los_length() const { return (rx - tx).norm(); }
};

template <typename Scalar>
struct MotionVector {
  Point3<Scalar> direction; // unit length
  Scalar amplitude;         // meters
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived> &v) {
  return v.array().isFinite().all();
}

template <typename Scalar>
AntennaPair<Scalar> make_antenna_pair(const Point3<Scalar> &tx, const Point3<Scalar> &rx,
                                      Scalar wavelength) {
  if (!all_finite(tx) || !all_finite(rx))
    throw DomainError("antenna coordinates must be finite");
  if (!(wavelength > Scalar(0)) || !std::isfinite(wavelength))
    throw DomainError("wavelength must be positive");
  if (!((rx - tx).norm() > Scalar(0)))
    throw DomainError("tx and rx must not coincide");
  return {tx, rx, wavelength};
}

template <typename Scalar>
MotionVector<Scalar> make_motion(const Point3<Scalar> &direction, Scalar amplitude) {
  if (!all_finite(direction) || std::abs(direction.norm() - Scalar(1)) > Scalar(1e-9))
    throw DomainError("motion direction must be a unit vector");
  if (!(amplitude >= Scalar(0)))
    throw DomainError("motion amplitude must be non-negative");
  return {direction, amplitude};
}

// |TxQ| + |QRx| - |TxRx|, evaluated as 2(|u||v| - u.v) / (|u| + |v| + |u+v|)
// with u = Q - Tx, v = Rx - Q so that small excess lengths keep full precision.
template <typename Scalar>
Scalar path_delta(const AntennaPair<Scalar> &pair, const Point3<Scalar> &q) {
  const Point3<Scalar> u = q - pair.tx;
  const Point3<Scalar> v = pair.rx - q;
  const Scalar a = u.norm();
  const Scalar b = v.norm();
  const Scalar c = (u + v).norm();
  const Scalar denom = a + b + c;
  if (denom == Scalar(0))
    return Scalar(0);
  const Scalar num = Scalar(2) * (a * b - u.dot(v));
  return num > Scalar(0) ? num / denom : Scalar(0);
}

// Continuous zone coordinate: boundary of zone n sits at exactly n.
template <typename Scalar>
Scalar zone_index(const AntennaPair<Scalar> &pair, const Point3<Scalar> &q) {
  return Scalar(2) * path_delta(pair, q) / pair.wavelength;
}

// 1-based Fresnel zone containing q.
template <typename Scalar>
int fresnel_zone(const AntennaPair<Scalar> &pair, const Point3<Scalar> &q) {
  return static_cast<int>(std::floor(zone_index(pair, q))) + 1;
}

// Perpendicular offset from the LOS at fraction s where the first-zone
// boundary lies. Bisection down to `tolerance` meters.
template <typename Scalar>
Scalar first_zone_radius_at(const AntennaPair<Scalar> &pair, Scalar s,
                            Scalar tolerance = Scalar(1e-13)) {
  if (!(s > Scalar(0) && s < Scalar(1)))
    throw DomainError("fraction along LOS must lie in (0, 1)");

  const Point3<Scalar> axis = pair.rx - pair.tx;
  const Point3<Scalar> foot = pair.tx + s * axis;
  const Point3<Scalar> normal = axis.unitOrthogonal();
  auto excess = [&](Scalar r) { return zone_index(pair, Point3<Scalar>(foot + r * normal)) - Scalar(1); };

  Scalar lo = Scalar(0);
  Scalar hi = pair.wavelength;
  while (excess(hi) < Scalar(0))
    hi *= Scalar(2);
  while (hi - lo > tolerance) {
    const Scalar mid = lo + (hi - lo) / Scalar(2);
    if (mid <= lo || mid >= hi)
      break;
    (excess(mid) < Scalar(0) ? lo : hi) = mid;
  }
  return lo + (hi - lo) / Scalar(2);
}

// Gradient of path_delta with respect to q: the sum of the unit vectors
// pointing away from each antenna. Normal to the Fresnel ellipsoid through q.
template <typename Scalar>
Point3<Scalar> path_gradient(const AntennaPair<Scalar> &pair, const Point3<Scalar> &q) {
  const Point3<Scalar> from_tx = q - pair.tx;
  const Point3<Scalar> from_rx = q - pair.rx;
  const Scalar a = from_tx.norm();
  const Scalar b = from_rx.norm();
  if (!(a > Scalar(0)) || !(b > Scalar(0)))
    throw DomainError("reflection point coincides with an antenna");
  return from_tx / a + from_rx / b;
}

// Signed path-length change per unit motion along `direction`.
template <typename Scalar>
Scalar motion_coupling(const AntennaPair<Scalar> &pair, const Point3<Scalar> &q,
                       const Point3<Scalar> &direction) {
  return path_gradient(pair, q).dot(direction);
}

template <typename Scalar>
Scalar effective_displacement(const AntennaPair<Scalar> &pair, const Point3<Scalar> &q,
                              const MotionVector<Scalar> &motion) {
  return std::abs(motion_coupling(pair, q, motion.direction)) * motion.amplitude;
}

// 1 at zone centers, 0 on every zone boundary.
template <typename Scalar>
Scalar parity_factor(Scalar zone) {
  const Scalar c = std::cos(Scalar(std::numbers::pi) * (zone - Scalar(0.5)));
  return c * c;
}

// Detectability of `motion` at `body_point`: effective displacement in
// wavelengths, weighted by how close the point sits to a zone center.
template <typename Scalar>
Scalar placement_score(const AntennaPair<Scalar> &pair, const Point3<Scalar> &body_point,
                       const MotionVector<Scalar> &motion) {
  const Scalar eff = effective_displacement(pair, body_point, motion);
  return eff / pair.wavelength * parity_factor(zone_index(pair, body_point));
}

using Point3d = Point3<double>;
using AntennaPaird = AntennaPair<double>;
using MotionVectord = MotionVector<double>;

} // namespace csivitals
