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

// Numerical search over measurement settings: a multi-start Nelder-Mead
// maximizer of the CHSH functional over all eight angles, and fixed-plane
// parameter sweeps of the S landscape on dense angle lattices.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "bellkit/chsh.hpp"
#include "bellkit/common.hpp"

namespace bellkit {

/// Eight raw angles, (theta, phi) for a, a', b, b' in that order. Raw values
/// may leave the canonical chart during optimization; wrap_angles folds them
/// back without changing the directions they describe.
struct AngleConfiguration {
  std::array<double, 8> angles{};
};

struct OptimizerConfig {
  int restarts = 16;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int max_iter = 2000;
};

struct OptimizationResult {
  double best_s = 0.0;
  MeasurementSettings best_settings;
  AngleConfiguration best_angles;  ///< canonical chart
  int restarts_used = 0;
  long long evaluations = 0;
  bool converged = false;  ///< the winning restart met the spread tolerance
};

/// Folds each pair into theta in [0, pi], phi in [0, 2*pi): theta is reduced
/// mod 2*pi and reflected at pi (which advances phi by pi), then phi is
/// reduced mod 2*pi. The described direction is unchanged.
inline AngleConfiguration wrap_angles(AngleConfiguration cfg) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int k = 0; k < 4; ++k) {
    double th = std::fmod(cfg.angles[2 * k], two_pi);
    if (th < 0.0) th += two_pi;
    double ph = cfg.angles[2 * k + 1];
    if (th > std::numbers::pi) {
      th = two_pi - th;
      ph += std::numbers::pi;
    }
    ph = std::fmod(ph, two_pi);
    if (ph < 0.0) ph += two_pi;
    if (ph >= two_pi) ph = 0.0;  // rounding can land exactly on the seam
    cfg.angles[2 * k] = th;
    cfg.angles[2 * k + 1] = ph;
  }
  return cfg;
}

namespace detail {

inline BlochVector direction_from_raw(double theta, double phi) {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

inline MeasurementSettings settings_from_raw(const std::array<double, 8>& x) {
  return {direction_from_raw(x[0], x[1]), direction_from_raw(x[2], x[3]),
          direction_from_raw(x[4], x[5]), direction_from_raw(x[6], x[7])};
}

struct NelderMeadOutcome {
  std::array<double, 8> x{};
  double value = 0.0;
  bool converged = false;
};

/// Maximizes the objective from one start with the standard reflection /
/// expansion / contraction / shrink moves. Converged when the simplex's value
/// spread drops below tol.
template <typename F>
NelderMeadOutcome nelder_mead_max(F&& objective, const std::array<double, 8>& start,
                                  double tol, int max_iter, long long& evaluations) {
  constexpr int n = 8;
  constexpr double step = 0.3;
  std::array<std::array<double, n>, n + 1> xs;
  std::array<double, n + 1> fs;
  xs[0] = start;
  for (int i = 1; i <= n; ++i) {
    xs[i] = start;
    xs[i][i - 1] += step;
  }
  for (int i = 0; i <= n; ++i) {
    fs[i] = objective(xs[i]);
    ++evaluations;
  }

  auto order = [&] {
    // descending by value; stable so ties keep insertion order
    std::array<int, n + 1> idx;
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] > fs[b]; });
    std::array<std::array<double, n>, n + 1> nxs;
    std::array<double, n + 1> nfs;
    for (int i = 0; i <= n; ++i) {
      nxs[i] = xs[idx[i]];
      nfs[i] = fs[idx[i]];
    }
    xs = nxs;
    fs = nfs;
  };

  bool converged = false;
  for (int iter = 0; iter < max_iter; ++iter) {
    order();
    if (fs[0] - fs[n] < tol) {
      converged = true;
      break;
    }
    std::array<double, n> centroid{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) centroid[j] += xs[i][j] / n;

    auto along = [&](double t) {
      std::array<double, n> p;
      for (int j = 0; j < n; ++j) p[j] = centroid[j] + t * (xs[n][j] - centroid[j]);
      return p;
    };
    const std::array<double, n> xr = along(-1.0);
    const double fr = objective(xr);
    ++evaluations;

    if (fr > fs[0]) {
      const std::array<double, n> xe = along(-2.0);
      const double fe = objective(xe);
      ++evaluations;
      if (fe > fr) {
        xs[n] = xe;
        fs[n] = fe;
      } else {
        xs[n] = xr;
        fs[n] = fr;
      }
    } else if (fr > fs[n - 1]) {
      xs[n] = xr;
      fs[n] = fr;
    } else {
      const bool outside = fr > fs[n];
      const std::array<double, n> xc = along(outside ? -0.5 : 0.5);
      const double fc = objective(xc);
      ++evaluations;
      if (fc > (outside ? fr : fs[n])) {
        xs[n] = xc;
        fs[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          for (int j = 0; j < n; ++j) xs[i][j] = xs[0][j] + 0.5 * (xs[i][j] - xs[0][j]);
          fs[i] = objective(xs[i]);
          ++evaluations;
        }
      }
    }
  }
  order();
  return {xs[0], fs[0], converged};
}

}  // namespace detail

/// Maximizes S over all eight angles. Restart 0 seeds from the explicit
/// violating construction (or a fixed reference quadruple when c1 c2 = 0);
/// later restarts draw each angle from an 8-point lattice using streams
/// derived from the seed, so results are reproducible bit for bit. Restarts
/// are independent and reduced in index order.
inline OptimizationResult maximize_chsh(double c1, double c2,
                                        const OptimizerConfig& config = {},
                                        const Tolerances& tol = kDefaultTol) {
  if (std::abs(c1 * c1 + c2 * c2 - 1.0) > tol.normalization)
    throw NormalizationError("coefficients must satisfy c1^2 + c2^2 = 1");
  if (config.restarts < 1) throw ConfigError("restarts must be at least 1");
  if (config.max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (!(config.tol > 0.0)) throw ConfigError("tol must be positive");

  long long evaluations = 0;
  auto objective = [&](const std::array<double, 8>& x) {
    return chsh_value(c1, c2, detail::settings_from_raw(x), tol).s_value;
  };

  std::array<double, 8> start0;
  if (c1 * c2 != 0.0) {
    const GisinAngles g = gisin_angles(c1, c2);
    start0 = {g.alpha, 0.0, g.alpha_prime, 0.0, g.beta, 0.0, g.beta_prime, 0.0};
  } else {
    start0 = {0.0, 0.0, std::numbers::pi / 2.0, 0.0, std::numbers::pi / 4.0, 0.0,
              3.0 * std::numbers::pi / 4.0, 0.0};
  }

  detail::NelderMeadOutcome best;
  bool have_best = false;
  for (int r = 0; r < config.restarts; ++r) {
    std::array<double, 8> start;
    if (r == 0) {
      start = start0;
    } else {
      SplitMix64 rng(derive_stream_seed(config.seed, static_cast<std::uint64_t>(r)));
      for (int k = 0; k < 4; ++k) {
        start[2 * k] = static_cast<double>(rng.next() % 8) * std::numbers::pi / 7.0;
        start[2 * k + 1] = static_cast<double>(rng.next() % 8) * std::numbers::pi / 4.0;
      }
    }
    const detail::NelderMeadOutcome out =
        detail::nelder_mead_max(objective, start, config.tol, config.max_iter, evaluations);
    if (!have_best || out.value > best.value) {
      best = out;
      have_best = true;
    }
  }

  OptimizationResult result;
  result.best_angles = wrap_angles(AngleConfiguration{best.x});
  const auto& w = result.best_angles.angles;
  result.best_settings = settings_from_angles({w[0], w[1]}, {w[2], w[3]}, {w[4], w[5]},
                                              {w[6], w[7]});
  // Defined as the re-evaluation at the reported settings, so the result is
  // reproducible from its own fields with no residue.
  result.best_s = chsh_value(c1, c2, result.best_settings, tol).s_value;
  result.restarts_used = config.restarts;
  result.evaluations = evaluations;
  result.converged = best.converged;
  return result;
}

enum class SweepSlice {
  gisin_phi0,              ///< b, b' polar angles in the x-z plane
  meridian_phi_half_pi,    ///< b, b' polar angles in the y-z plane
  equatorial_theta_half_pi,///< b, b' azimuths on the equator
  full,                    ///< planar rotation angles for all four vectors
};

inline SweepSlice slice_from_name(const std::string& name) {
  if (name == "gisin_phi0") return SweepSlice::gisin_phi0;
  if (name == "meridian") return SweepSlice::meridian_phi_half_pi;
  if (name == "equatorial") return SweepSlice::equatorial_theta_half_pi;
  if (name == "full") return SweepSlice::full;
  throw ConfigError("unknown sweep slice: " + name);
}

inline std::string slice_name(SweepSlice slice) {
  switch (slice) {
    case SweepSlice::gisin_phi0: return "gisin_phi0";
    case SweepSlice::meridian_phi_half_pi: return "meridian_phi_half_pi";
    case SweepSlice::equatorial_theta_half_pi: return "equatorial_theta_half_pi";
    case SweepSlice::full: return "full";
  }
  throw ConfigError("unknown sweep slice value");
}

inline std::size_t slice_axis_count(SweepSlice slice) {
  return slice == SweepSlice::full ? 4 : 2;
}

struct SweepGridSpec {
  SweepSlice slice = SweepSlice::gisin_phi0;
  std::size_t resolution = 64;  ///< lattice points per axis
};

/// Lattice evaluation of S on one slice. Cells are flattened
/// lexicographically, axis 0 slowest. coefficient_sign records sgn(c1 c2)
/// (+1 at zero) baked into the slice's fixed settings.
struct SweepGrid {
  SweepSlice slice = SweepSlice::gisin_phi0;
  std::size_t resolution = 0;
  double coefficient_sign = 1.0;
  std::vector<std::vector<double>> axis_angles;
  std::vector<double> s_values;
  std::vector<std::uint8_t> violated;

  std::size_t axes() const { return axis_angles.size(); }
  std::size_t cells() const { return s_values.size(); }
};

/// Rebuilds the measurement quadruple for one cell from its angle
/// coordinates. The polar slices fix a at the pole and a' on the matching
/// equatorial axis with the given sign; the equatorial slice fixes a = x,
/// a' = y; the full slice rotates all four vectors in the x-z plane.
inline MeasurementSettings sweep_cell_settings(SweepSlice slice, double sign,
                                               std::span<const double> angles) {
  if (angles.size() != slice_axis_count(slice))
    throw DimensionError("angle count does not match the slice");
  switch (slice) {
    case SweepSlice::gisin_phi0:
      return {{0.0, 0.0, 1.0},
              {sign, 0.0, 0.0},
              {std::sin(angles[0]), 0.0, std::cos(angles[0])},
              {std::sin(angles[1]), 0.0, std::cos(angles[1])}};
    case SweepSlice::meridian_phi_half_pi:
      return {{0.0, 0.0, 1.0},
              {0.0, sign, 0.0},
              {0.0, std::sin(angles[0]), std::cos(angles[0])},
              {0.0, std::sin(angles[1]), std::cos(angles[1])}};
    case SweepSlice::equatorial_theta_half_pi:
      return {{1.0, 0.0, 0.0},
              {0.0, 1.0, 0.0},
              {std::cos(angles[0]), std::sin(angles[0]), 0.0},
              {std::cos(angles[1]), std::sin(angles[1]), 0.0}};
    case SweepSlice::full:
      return {{std::sin(angles[0]), 0.0, std::cos(angles[0])},
              {std::sin(angles[1]), 0.0, std::cos(angles[1])},
              {std::sin(angles[2]), 0.0, std::cos(angles[2])},
              {std::sin(angles[3]), 0.0, std::cos(angles[3])}};
  }
  throw ConfigError("unknown sweep slice value");
}

inline SweepGrid sweep_slice(double c1, double c2, const SweepGridSpec& spec,
                             const Tolerances& tol = kDefaultTol) {
  if (spec.resolution < 2) throw ConfigError("sweep resolution must be at least 2");
  if (std::abs(c1 * c1 + c2 * c2 - 1.0) > tol.normalization)
    throw NormalizationError("coefficients must satisfy c1^2 + c2^2 = 1");

  SweepGrid grid;
  grid.slice = spec.slice;
  grid.resolution = spec.resolution;
  grid.coefficient_sign = c1 * c2 < 0.0 ? -1.0 : 1.0;

  const std::size_t n = spec.resolution;
  const std::size_t axes = slice_axis_count(spec.slice);
  // Polar lattices include both endpoints; azimuthal and full-circle lattices
  // stop one step short of the seam.
  std::vector<double> lattice(n);
  const bool polar = spec.slice == SweepSlice::gisin_phi0 ||
                     spec.slice == SweepSlice::meridian_phi_half_pi;
  const double span = polar ? std::numbers::pi : 2.0 * std::numbers::pi;
  const double step = polar ? span / static_cast<double>(n - 1)
                            : span / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) lattice[i] = static_cast<double>(i) * step;
  grid.axis_angles.assign(axes, lattice);

  std::size_t cells = 1;
  for (std::size_t a = 0; a < axes; ++a) cells *= n;
  grid.s_values.resize(cells);
  grid.violated.resize(cells);

  std::array<double, 4> angles{};
  for (std::size_t flat = 0; flat < cells; ++flat) {
    std::size_t rem = flat;
    for (std::size_t a = axes; a-- > 0;) {
      angles[a] = lattice[rem % n];
      rem /= n;
    }
    const ChshReport r = chsh_value(
        c1, c2,
        sweep_cell_settings(spec.slice, grid.coefficient_sign,
                            std::span<const double>(angles.data(), axes)),
        tol);
    grid.s_values[flat] = r.s_value;
    grid.violated[flat] = r.violated ? 1 : 0;
  }
  return grid;
}

/// True iff the S landscape on the y-z polar slice matches the x-z polar
/// slice pointwise within 1e-12 at the given resolution.
inline bool meridian_equivalence_check(double c1, double c2, std::size_t resolution,
                                       const Tolerances& tol = kDefaultTol) {
  const SweepGrid a = sweep_slice(c1, c2, {SweepSlice::gisin_phi0, resolution}, tol);
  const SweepGrid b =
      sweep_slice(c1, c2, {SweepSlice::meridian_phi_half_pi, resolution}, tol);
  for (std::size_t i = 0; i < a.s_values.size(); ++i)
    if (std::abs(a.s_values[i] - b.s_values[i]) > 1e-12) return false;
  return true;
}

}  // namespace bellkit
