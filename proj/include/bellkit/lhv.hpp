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

// Classical-side oracles: the exhaustive deterministic local-strategy bound
// on the CHSH functional, Born-rule outcome distributions, and seeded Monte
// Carlo estimation of S with standard errors.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "bellkit/chsh.hpp"
#include "bellkit/common.hpp"
#include "bellkit/observables.hpp"
#include "bellkit/states.hpp"

namespace bellkit {

/// Pre-assigned outcomes for the four settings; each entry is exactly +1 or
/// -1.
struct DeterministicStrategy {
  int a = 1;
  int a_prime = 1;
  int b = 1;
  int b_prime = 1;
};

/// |A B - A B'| + A' B + A' B', in exact integer arithmetic.
inline int strategy_value(const DeterministicStrategy& s) {
  return std::abs(s.a * s.b - s.a * s.b_prime) + s.a_prime * s.b + s.a_prime * s.b_prime;
}

/// All 16 strategies; index bit 3 drives a, bit 2 a', bit 1 b, bit 0 b', with
/// a set bit meaning -1.
inline std::array<DeterministicStrategy, 16> enumerate_lhv_strategies() {
  std::array<DeterministicStrategy, 16> out;
  for (int k = 0; k < 16; ++k) {
    out[k].a = (k & 8) ? -1 : 1;
    out[k].a_prime = (k & 4) ? -1 : 1;
    out[k].b = (k & 2) ? -1 : 1;
    out[k].b_prime = (k & 1) ? -1 : 1;
  }
  return out;
}

/// The classical ceiling: 2, by brute force over all 16 strategies.
inline int lhv_max_chsh() {
  int best = std::numeric_limits<int>::min();
  for (const DeterministicStrategy& s : enumerate_lhv_strategies())
    best = std::max(best, strategy_value(s));
  return best;
}

/// Joint Born probabilities for outcomes (s, t) in the order (++, +-, -+, --)
/// where + means the projector along the direction fired. Entries a hair
/// below zero (rounding residue, floor -1e-12) are clamped to zero; a larger
/// deficit, a sum away from 1, or an imaginary residue raises NumericalError.
inline std::array<double, 4> outcome_distribution(const StateVector& v,
                                                  const BlochVector& a,
                                                  const BlochVector& b,
                                                  const Tolerances& tol = kDefaultTol) {
  if (v.size() != 4) throw DimensionError("outcome_distribution needs a 4-dim vector");
  const DenseMatrix plus_a = projector(a, tol);
  const DenseMatrix plus_b = projector(b, tol);
  const DenseMatrix minus_a = DenseMatrix::identity(2) - plus_a;
  const DenseMatrix minus_b = DenseMatrix::identity(2) - plus_b;

  std::array<double, 4> p{};
  const DenseMatrix* left[2] = {&plus_a, &minus_a};
  const DenseMatrix* right[2] = {&plus_b, &minus_b};
  double sum = 0.0;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) {
      const Complex e = expectation(kron(*left[s], *right[t]), v);
      if (std::abs(e.imag()) > tol.hermitian_imag)
        throw NumericalError("joint probability has an imaginary residue");
      if (e.real() < -1e-12) throw NumericalError("joint probability is negative");
      p[2 * s + t] = std::max(0.0, e.real());
      sum += p[2 * s + t];
    }
  if (std::abs(sum - 1.0) > 1e-12)
    throw NumericalError("joint probabilities do not sum to 1");
  return p;
}

/// Outcome-combination counts for the four setting pairs, in pair order
/// (a,b), (a,b'), (a',b), (a',b') and combination order (++, +-, -+, --).
struct TrialBatch {
  std::array<std::array<long long, 4>, 4> counts{};
  long long n_per_pair = 0;
  std::uint64_t seed = 0;
};

/// Estimated correlations (same pair order as TrialBatch), their standard
/// errors, and the assembled S estimate. The absolute value's sign is locked
/// at the point estimate for error propagation; sign_tie flags the measure-
/// zero case where the two first-row correlations coincide exactly and the
/// locked sign is arbitrary.
struct EmpiricalChsh {
  TrialBatch batch;
  std::array<double, 4> correlations{};
  std::array<double, 4> std_errors{};
  double s_value = 0.0;
  double s_std_error = 0.0;
  double sigma_margin = 0.0;  ///< (s_value - 2) / s_std_error
  bool sign_tie = false;
};

/// Draws n_per_pair outcomes per setting pair from the Born distribution of
/// the canonical state. Each pair samples from its own stream derived from
/// the master seed, so pair results are order-independent and the whole run
/// reproduces bit for bit from (seed, n_per_pair).
inline EmpiricalChsh sample_chsh(double c1, double c2, const MeasurementSettings& s,
                                 long long n_per_pair, std::uint64_t seed,
                                 const Tolerances& tol = kDefaultTol) {
  if (n_per_pair < 1) throw ConfigError("n_per_pair must be at least 1");
  const StateVector v = make_canonical_vector(c1, c2, tol);

  EmpiricalChsh e;
  e.batch.n_per_pair = n_per_pair;
  e.batch.seed = seed;

  const BlochVector* left[4] = {&s.a, &s.a, &s.a_prime, &s.a_prime};
  const BlochVector* right[4] = {&s.b, &s.b_prime, &s.b, &s.b_prime};
  for (int pair = 0; pair < 4; ++pair) {
    const std::array<double, 4> p = outcome_distribution(v, *left[pair], *right[pair], tol);
    SplitMix64 rng(derive_stream_seed(seed, static_cast<std::uint64_t>(pair)));
    auto& counts = e.batch.counts[pair];
    for (long long trial = 0; trial < n_per_pair; ++trial) {
      const double u = rng.next_double();
      int outcome = 3;  // final bucket absorbs the cumulative rounding slack
      double cum = 0.0;
      for (int k = 0; k < 3; ++k) {
        cum += p[k];
        if (u < cum) {
          outcome = k;
          break;
        }
      }
      ++counts[outcome];
    }
    const double n = static_cast<double>(n_per_pair);
    const double r =
        static_cast<double>(counts[0] + counts[3] - counts[1] - counts[2]) / n;
    e.correlations[pair] = r;
    e.std_errors[pair] = std::sqrt(std::max(0.0, 1.0 - r * r) / n);
  }

  e.s_value = std::abs(e.correlations[0] - e.correlations[1]) + e.correlations[2] +
              e.correlations[3];
  double var = 0.0;
  for (const double se : e.std_errors) var += se * se;
  e.s_std_error = std::sqrt(var);
  e.sign_tie = e.correlations[0] == e.correlations[1];
  if (e.s_std_error > 0.0) {
    e.sigma_margin = (e.s_value - 2.0) / e.s_std_error;
  } else {
    // all four correlations came out exactly +-1; the margin degenerates
    e.sigma_margin = e.s_value > 2.0
                         ? std::numeric_limits<double>::infinity()
                         : (e.s_value < 2.0 ? -std::numeric_limits<double>::infinity() : 0.0);
  }
  return e;
}

}  // namespace bellkit
