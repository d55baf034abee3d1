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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "bellkit/lhv.hpp"
#include "test_helpers.hpp"

using namespace bellkit;
using bellkit::testing::random_bloch;
using bellkit::testing::random_coefficients;
using bellkit::testing::random_state;
using Catch::Approx;

TEST_CASE("deterministic strategy enumeration", "[lhv]") {
  const auto strategies = enumerate_lhv_strategies();
  REQUIRE(strategies.size() == 16);
  SECTION("entries are exactly plus or minus one") {
    for (const DeterministicStrategy& s : strategies) {
      for (int v : {s.a, s.a_prime, s.b, s.b_prime}) REQUIRE(std::abs(v) == 1);
    }
  }
  SECTION("all sign patterns appear once") {
    std::map<std::array<int, 4>, int> seen;
    for (const DeterministicStrategy& s : strategies)
      ++seen[{s.a, s.a_prime, s.b, s.b_prime}];
    REQUIRE(seen.size() == 16);
  }
  SECTION("value multiset is twelve +2 and four -2") {
    int plus = 0, minus = 0;
    for (const DeterministicStrategy& s : strategies) {
      const int v = strategy_value(s);
      REQUIRE((v == 2 || v == -2));
      (v == 2 ? plus : minus) += 1;
    }
    REQUIRE(plus == 12);
    REQUIRE(minus == 4);
  }
  SECTION("reference strategies") {
    REQUIRE(strategy_value({1, 1, 1, 1}) == 2);
    REQUIRE(strategy_value({1, 1, 1, -1}) == 2);
  }
}

TEST_CASE("classical ceiling is exactly two", "[lhv]") { REQUIRE(lhv_max_chsh() == 2); }

TEST_CASE("born distribution on reference states", "[lhv]") {
  const BlochVector z{0.0, 0.0, 1.0};
  SECTION("basis state concentrates on one outcome") {
    const auto p = outcome_distribution(StateVector({0.0, 1.0, 0.0, 0.0}), z, z);
    REQUIRE(p[0] == 0.0);
    REQUIRE(p[1] == 1.0);
    REQUIRE(p[2] == 0.0);
    REQUIRE(p[3] == 0.0);
  }
  SECTION("symmetric state splits between the mixed outcomes") {
    const double r = std::sqrt(0.5);
    const auto p = outcome_distribution(StateVector({0.0, r, r, 0.0}), z, z);
    REQUIRE(p[0] == Approx(0.0).margin(1e-15));
    REQUIRE(p[1] == Approx(0.5).margin(1e-15));
    REQUIRE(p[2] == Approx(0.5).margin(1e-15));
    REQUIRE(p[3] == Approx(0.0).margin(1e-15));
  }
  SECTION("wrong dimension is refused") {
    REQUIRE_THROWS_AS(outcome_distribution(StateVector({1.0, 0.0}), z, z), DimensionError);
  }
}

TEST_CASE("born distribution properties", "[lhv][oracle]") {
  SplitMix64 rng(503);
  for (int rep = 0; rep < 1000; ++rep) {
    const StateVector v = random_state(4, rng);
    const BlochVector a = random_bloch(rng);
    const BlochVector b = random_bloch(rng);
    const auto p = outcome_distribution(v, a, b);
    double sum = 0.0;
    for (double x : p) {
      REQUIRE(x >= 0.0);
      sum += x;
    }
    REQUIRE(sum == Approx(1.0).margin(1e-12));
    const double corr = p[0] + p[3] - p[1] - p[2];
    REQUIRE(corr == Approx(correlation_dense(v, a, b)).margin(1e-12));
  }
}

TEST_CASE("born marginals ignore the far side", "[lhv]") {
  SplitMix64 rng(509);
  for (int rep = 0; rep < 100; ++rep) {
    const StateVector v = random_state(4, rng);
    const BlochVector a = random_bloch(rng);
    const BlochVector b = random_bloch(rng);
    const auto p = outcome_distribution(v, a, b);
    const double marg_plus =
        expectation(kron(projector(a), DenseMatrix::identity(2)), v).real();
    REQUIRE(p[0] + p[1] == Approx(marg_plus).margin(1e-12));
  }
}

TEST_CASE("monte carlo estimate tracks the exact value", "[lhv][sampling]") {
  const double c1 = std::sqrt(0.5);
  const double c2 = std::sqrt(0.5);
  const MeasurementSettings s = gisin_settings(c1, c2);
  const double exact = chsh_value(c1, c2, s).s_value;
  const EmpiricalChsh e = sample_chsh(c1, c2, s, 1000000, 42);
  REQUIRE(std::abs(e.s_value - exact) <= 4.0 * e.s_std_error);
  REQUIRE(e.s_std_error == Approx(std::sqrt(2.0e-6)).epsilon(0.01));
  REQUIRE(e.sigma_margin > 100.0);
  REQUIRE_FALSE(e.sign_tie);
  for (int pair = 0; pair < 4; ++pair) {
    long long total = 0;
    for (int k = 0; k < 4; ++k) total += e.batch.counts[pair][k];
    REQUIRE(total == 1000000);
    REQUIRE(std::abs(e.correlations[pair]) <= 1.0);
    REQUIRE(e.std_errors[pair] >= 0.0);
  }
}

TEST_CASE("monte carlo on product coefficients stays classical", "[lhv][sampling]") {
  const MeasurementSettings s{{0.0, 0.0, 1.0},
                              {1.0, 0.0, 0.0},
                              {std::sqrt(0.5), 0.0, std::sqrt(0.5)},
                              {std::sqrt(0.5), 0.0, -std::sqrt(0.5)}};
  const double exact = chsh_value(1.0, 0.0, s).s_value;
  REQUIRE(exact <= 2.0);
  const EmpiricalChsh e = sample_chsh(1.0, 0.0, s, 1000000, 7);
  REQUIRE(std::abs(e.s_value - exact) <= 4.0 * e.s_std_error);
  REQUIRE(e.sigma_margin <= 3.0);
}

TEST_CASE("single-trial correlations are degenerate", "[lhv][sampling]") {
  const EmpiricalChsh e =
      sample_chsh(std::sqrt(0.5), std::sqrt(0.5), gisin_settings(std::sqrt(0.5), std::sqrt(0.5)),
                  1, 99);
  for (const double r : e.correlations) REQUIRE((r == 1.0 || r == -1.0));
}

TEST_CASE("identical seeds reproduce identical counts", "[lhv][sampling]") {
  const MeasurementSettings s = gisin_settings(0.8, 0.6);
  const EmpiricalChsh a = sample_chsh(0.8, 0.6, s, 20000, 1234);
  const EmpiricalChsh b = sample_chsh(0.8, 0.6, s, 20000, 1234);
  for (int pair = 0; pair < 4; ++pair)
    for (int k = 0; k < 4; ++k)
      REQUIRE(a.batch.counts[pair][k] == b.batch.counts[pair][k]);
  REQUIRE(a.s_value == b.s_value);
  const EmpiricalChsh c = sample_chsh(0.8, 0.6, s, 20000, 1235);
  bool any_different = false;
  for (int pair = 0; pair < 4; ++pair)
    for (int k = 0; k < 4; ++k)
      any_different = any_different || a.batch.counts[pair][k] != c.batch.counts[pair][k];
  REQUIRE(any_different);
}

TEST_CASE("deterministic distribution flags the sign tie", "[lhv][sampling]") {
  // all mass on one outcome for every pair, so both first-row correlations
  // are exactly -1
  const MeasurementSettings s{{0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0},
                              {0.0, 0.0, 1.0}};
  const EmpiricalChsh e = sample_chsh(1.0, 0.0, s, 1000, 5);
  REQUIRE(e.sign_tie);
  REQUIRE(e.correlations[0] == -1.0);
  REQUIRE(e.correlations[1] == -1.0);
  REQUIRE(e.s_std_error == 0.0);
  REQUIRE(e.sigma_margin == -std::numeric_limits<double>::infinity());
}

TEST_CASE("sampling parameter validation", "[lhv][sampling]") {
  REQUIRE_THROWS_AS(sample_chsh(0.8, 0.6, gisin_settings(0.8, 0.6), 0, 1), ConfigError);
}
