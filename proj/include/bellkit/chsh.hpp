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

// The CHSH functional S = |P(a,b) - P(a,b')| + P(a',b) + P(a',b') and Gisin's
// explicit violating construction for the canonical state c1|+-> + c2|-+>.
//
// The construction restricts to the x-z plane: a at the pole, a' equatorial
// with its sign tied to sgn(c1 c2), and b, b' at cos beta = -cos beta' = x*
// with both sines positive. On that family S(x) = 2x + 4|c1 c2| sqrt(1 - x^2),
// whose stationary point x* = (1 + 4 c1^2 c2^2)^{-1/2} attains
// S = 2 sqrt(1 + 4 c1^2 c2^2) > 2 for every entangled coefficient pair.

#pragma once

#include <cmath>
#include <numbers>

#include "bellkit/common.hpp"
#include "bellkit/observables.hpp"
#include "bellkit/states.hpp"

namespace bellkit {

/// The measurement quadruple entering the CHSH functional.
struct MeasurementSettings {
  BlochVector a;
  BlochVector a_prime;
  BlochVector b;
  BlochVector b_prime;
};

/// Polar angles of the construction; all azimuths are zero.
struct GisinAngles {
  double alpha = 0.0;
  double alpha_prime = 0.0;
  double beta = 0.0;
  double beta_prime = 0.0;
};

struct ChshReport {
  double p_ab = 0.0;
  double p_abp = 0.0;
  double p_apb = 0.0;
  double p_apbp = 0.0;
  double s_value = 0.0;
  bool violated = false;
  double margin = 0.0;  ///< s_value - 2
};

/// Evaluates the four closed-form correlations and assembles S.
inline ChshReport chsh_value(double c1, double c2, const MeasurementSettings& s,
                             const Tolerances& tol = kDefaultTol) {
  ChshReport r;
  r.p_ab = correlation_closed(c1, c2, s.a, s.b, tol);
  r.p_abp = correlation_closed(c1, c2, s.a, s.b_prime, tol);
  r.p_apb = correlation_closed(c1, c2, s.a_prime, s.b, tol);
  r.p_apbp = correlation_closed(c1, c2, s.a_prime, s.b_prime, tol);
  r.s_value = std::abs(r.p_ab - r.p_abp) + r.p_apb + r.p_apbp;
  r.margin = r.s_value - 2.0;
  r.violated = r.s_value > 2.0 + tol.verdict;
  return r;
}

/// Builds the quadruple from four (theta, phi) pairs.
inline MeasurementSettings settings_from_angles(const SphericalAngles& a,
                                                const SphericalAngles& a_prime,
                                                const SphericalAngles& b,
                                                const SphericalAngles& b_prime) {
  return {bloch_from_angles(a), bloch_from_angles(a_prime), bloch_from_angles(b),
          bloch_from_angles(b_prime)};
}

/// cos beta at the stationary point of the restricted family.
inline double gisin_x_star(double c1, double c2) {
  return 1.0 / std::sqrt(1.0 + 4.0 * c1 * c1 * c2 * c2);
}

/// The restricted family member at cos beta = x: a polar, a' equatorial with
/// the sign of c1 c2, b = (sin beta, 0, x), b' = (sin beta, 0, -x). Requires
/// x in [-1, 1] and c1 c2 != 0.
inline MeasurementSettings gisin_settings_at(double c1, double c2, double x) {
  if (c1 * c2 == 0.0) throw NotEntangledError("construction needs c1*c2 != 0");
  if (!(x >= -1.0 && x <= 1.0)) throw RangeError("cos beta outside [-1, 1]");
  const double sign = c1 * c2 > 0.0 ? 1.0 : -1.0;
  const double sin_beta = std::sqrt(1.0 - x * x);
  MeasurementSettings s;
  s.a = {0.0, 0.0, 1.0};
  s.a_prime = {sign, 0.0, 0.0};
  s.b = {sin_beta, 0.0, x};
  s.b_prime = {sin_beta, 0.0, -x};
  return s;
}

/// The violating quadruple: the family member at x*.
inline MeasurementSettings gisin_settings(double c1, double c2) {
  return gisin_settings_at(c1, c2, gisin_x_star(c1, c2));
}

/// Polar angles of gisin_settings: alpha = 0, alpha' = +-pi/2 with the sign
/// of c1 c2, beta = arccos(x*), beta' = pi - beta.
inline GisinAngles gisin_angles(double c1, double c2) {
  if (c1 * c2 == 0.0) throw NotEntangledError("construction needs c1*c2 != 0");
  GisinAngles ang;
  ang.alpha = 0.0;
  ang.alpha_prime = (c1 * c2 > 0.0 ? 1.0 : -1.0) * std::numbers::pi / 2.0;
  ang.beta = std::acos(gisin_x_star(c1, c2));
  ang.beta_prime = std::numbers::pi - ang.beta;
  return ang;
}

/// 2 sqrt(1 + 4 c1^2 c2^2): the value chsh_value attains at gisin_settings.
inline double gisin_predicted_value(double c1, double c2) {
  return 2.0 * std::sqrt(1.0 + 4.0 * c1 * c1 * c2 * c2);
}

/// Largest |dense - closed| over the four correlations; the dense route
/// evaluates 4x4 operator expectations on the canonical vector.
inline double max_dense_closed_discrepancy(double c1, double c2,
                                           const MeasurementSettings& s,
                                           const Tolerances& tol = kDefaultTol) {
  const StateVector v = make_canonical_vector(c1, c2, tol);
  double worst = 0.0;
  const BlochVector* left[2] = {&s.a, &s.a_prime};
  const BlochVector* right[2] = {&s.b, &s.b_prime};
  for (const BlochVector* a : left)
    for (const BlochVector* b : right) {
      const double dense = correlation_dense(v, *a, *b, tol);
      const double closed = correlation_closed(c1, c2, *a, *b, tol);
      worst = std::max(worst, std::abs(dense - closed));
    }
  return worst;
}

}  // namespace bellkit
