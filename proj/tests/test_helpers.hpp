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

// Shared generators for the test suites. Everything is driven by SplitMix64
// so that any failure reproduces from the seed printed in the test name.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "bellkit/common.hpp"
#include "bellkit/observables.hpp"
#include "bellkit/tensor.hpp"

namespace bellkit::testing {

/// Standard normal via Box-Muller.
inline double gaussian(SplitMix64& rng) {
  const double u = rng.next_double_open();
  const double v = rng.next_double();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

inline Complex gaussian_complex(SplitMix64& rng) {
  return {gaussian(rng), gaussian(rng)};
}

inline DenseMatrix random_matrix(std::size_t rows, std::size_t cols, SplitMix64& rng) {
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = gaussian_complex(rng);
  return m;
}

inline StateVector random_state(std::size_t dim, SplitMix64& rng) {
  std::vector<Complex> amps(dim);
  for (auto& a : amps) a = gaussian_complex(rng);
  StateVector v(std::move(amps));
  const double n = norm(v);
  for (std::size_t i = 0; i < dim; ++i) v[i] /= n;
  return v;
}

inline BlochVector random_bloch(SplitMix64& rng) {
  double x = gaussian(rng), y = gaussian(rng), z = gaussian(rng);
  double n = std::sqrt(x * x + y * y + z * z);
  while (n < 1e-6) {  // essentially never
    x = gaussian(rng);
    y = gaussian(rng);
    z = gaussian(rng);
    n = std::sqrt(x * x + y * y + z * z);
  }
  return {x / n, y / n, z / n};
}

/// Random (c1, c2) with c1^2 + c2^2 = 1; c2 may be negative.
inline std::pair<double, double> random_coefficients(SplitMix64& rng) {
  const double t = rng.next_double() * 2.0 * std::numbers::pi;
  return {std::cos(t), std::sin(t)};
}

/// Haar-ish random unitary built from complex Givens rotations and phases.
/// Unitary to machine precision by construction.
inline DenseMatrix random_unitary(std::size_t n, SplitMix64& rng) {
  DenseMatrix u = DenseMatrix::identity(n);
  const Complex imag_unit{0.0, 1.0};
  for (std::size_t round = 0; round < 4 * n; ++round) {
    const std::size_t p = rng.next() % n;
    std::size_t q = rng.next() % n;
    if (p == q) q = (q + 1) % n;
    if (n == 1) break;
    const double theta = rng.next_double() * 2.0 * std::numbers::pi;
    const double phase = rng.next_double() * 2.0 * std::numbers::pi;
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex w = std::exp(imag_unit * phase);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex up = u(i, p), uq = u(i, q);
      u(i, p) = c * up - s * w * uq;
      u(i, q) = s * std::conj(w) * up + c * uq;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const Complex w = std::exp(imag_unit * (rng.next_double() * 2.0 * std::numbers::pi));
    for (std::size_t i = 0; i < n; ++i) u(i, j) *= w;
  }
  return u;
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

}  // namespace bellkit::testing
