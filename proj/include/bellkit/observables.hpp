// Copyright 2026 The bellkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Spin observables on the Bloch sphere and the two-qubit correlation P(a, b)
// computed two independent ways: a dense 4x4 expectation value and a closed
// form in the canonical-state coefficients. Their agreement is a library
// invariant, exercised by the test suite; neither route is an optimization of
// the other.

#pragma once

#include <cmath>
#include <numbers>

#include "bellkit/common.hpp"
#include "bellkit/tensor.hpp"

namespace bellkit {

/// Unit direction on the Bloch sphere. Operations that require unitality
/// validate it against Tolerances::unit_vector at their boundary.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;
};

/// Polar angle theta in [0, pi], azimuth phi in [0, 2*pi).
struct SphericalAngles {
  double theta = 0.0;
  double phi = 0.0;
};

inline double dot(const BlochVector& a, const BlochVector& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

namespace detail {

inline void require_unit(const BlochVector& n, const Tolerances& tol) {
  if (std::abs(dot(n, n) - 1.0) > tol.unit_vector)
    throw RangeError("direction is not a unit vector");
}

inline void require_coefficients(double c1, double c2, const Tolerances& tol) {
  if (std::abs(c1 * c1 + c2 * c2 - 1.0) > tol.normalization)
    throw NormalizationError("coefficients must satisfy c1^2 + c2^2 = 1");
}

}  // namespace detail

inline BlochVector bloch_from_angles(const SphericalAngles& ang) {
  if (!(ang.theta >= 0.0 && ang.theta <= std::numbers::pi))
    throw RangeError("polar angle outside [0, pi]");
  if (!(ang.phi >= 0.0 && ang.phi < 2.0 * std::numbers::pi))
    throw RangeError("azimuth outside [0, 2*pi)");
  const double st = std::sin(ang.theta);
  return {st * std::cos(ang.phi), st * std::sin(ang.phi), std::cos(ang.theta)};
}

inline DenseMatrix pauli_x() {
  DenseMatrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline DenseMatrix pauli_y() {
  DenseMatrix m(2, 2);
  m(0, 1) = Complex{0.0, -1.0};
  m(1, 0) = Complex{0.0, 1.0};
  return m;
}

inline DenseMatrix pauli_z() {
  DenseMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

/// (I + n.sigma)/2: rank-1 projector onto the +1 eigenstate of n.sigma.
inline DenseMatrix projector(const BlochVector& n,
                             const Tolerances& tol = kDefaultTol) {
  detail::require_unit(n, tol);
  DenseMatrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + n.z);
  m(0, 1) = 0.5 * Complex{n.x, -n.y};
  m(1, 0) = 0.5 * Complex{n.x, n.y};
  m(1, 1) = 0.5 * (1.0 - n.z);
  return m;
}

/// n.sigma: Hermitian, traceless, spectrum {+1, -1}.
inline DenseMatrix dichotomic(const BlochVector& n,
                              const Tolerances& tol = kDefaultTol) {
  detail::require_unit(n, tol);
  DenseMatrix m(2, 2);
  m(0, 0) = n.z;
  m(0, 1) = Complex{n.x, -n.y};
  m(1, 0) = Complex{n.x, n.y};
  m(1, 1) = -n.z;
  return m;
}

/// Real part of <v| (a.sigma) x (b.sigma) |v> on a two-qubit vector. The
/// imaginary part must vanish (the operator is Hermitian); a residue above
/// Tolerances::hermitian_imag raises NumericalError.
inline double correlation_dense(const StateVector& v, const BlochVector& a,
                                const BlochVector& b,
                                const Tolerances& tol = kDefaultTol) {
  if (v.size() != 4) throw DimensionError("correlation_dense needs a 4-dim vector");
  const Complex e = expectation(kron(dichotomic(a, tol), dichotomic(b, tol)), v);
  if (std::abs(e.imag()) > tol.hermitian_imag)
    throw NumericalError("correlation has a non-negligible imaginary part");
  return e.real();
}

/// P(a, b) for the canonical state c1|+-> + c2|-+>:
/// 2 c1 c2 (ax bx + ay by) - az bz.
inline double correlation_closed(double c1, double c2, const BlochVector& a,
                                 const BlochVector& b,
                                 const Tolerances& tol = kDefaultTol) {
  detail::require_coefficients(c1, c2, tol);
  return 2.0 * c1 * c2 * (a.x * b.x + a.y * b.y) - a.z * b.z;
}

/// correlation_closed with both directions given in spherical angles.
inline double correlation_spherical(double c1, double c2, const SphericalAngles& ang_a,
                                    const SphericalAngles& ang_b,
                                    const Tolerances& tol = kDefaultTol) {
  return correlation_closed(c1, c2, bloch_from_angles(ang_a), bloch_from_angles(ang_b), tol);
}

}  // namespace bellkit
