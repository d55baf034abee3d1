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

// Bipartite pure states: Schmidt decomposition, product-state classification,
// and reduction to the canonical two-qubit form c1|+-> + c2|-+> living in the
// two dominant Schmidt modes.

#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "bellkit/common.hpp"
#include "bellkit/tensor.hpp"

namespace bellkit {

/// Pure state on an n1 x n2 product basis; amplitudes(i, j) multiplies the
/// basis vector (left i) x (right j).
struct BipartiteState {
  DenseMatrix amplitudes;

  std::size_t dim1() const { return amplitudes.rows(); }
  std::size_t dim2() const { return amplitudes.cols(); }
};

/// Builds a state from a row-major flat amplitude list.
inline BipartiteState bipartite_from_flat(std::size_t dim1, std::size_t dim2,
                                          const std::vector<Complex>& flat) {
  if (flat.size() != dim1 * dim2)
    throw DimensionError("amplitude count does not match dims");
  DenseMatrix m(dim1, dim2);
  for (std::size_t i = 0; i < dim1; ++i)
    for (std::size_t j = 0; j < dim2; ++j) m(i, j) = flat[i * dim2 + j];
  return BipartiteState{std::move(m)};
}

/// Coefficients descending; columns k of left_basis/right_basis are the local
/// mode pairs, orthonormal on each side. rank counts coefficients above the
/// tolerance used at decomposition time.
struct SchmidtDecomposition {
  std::vector<double> coefficients;
  DenseMatrix left_basis;
  DenseMatrix right_basis;
  std::size_t rank = 0;
};

/// The two dominant Schmidt modes, renormalized: c1 >= c2 > 0, c1^2 + c2^2 = 1.
/// vector is (0, c1, c2, 0) on the (++, +-, -+, --) basis. retained_weight is
/// the probability weight of the kept two-mode subspace in the input state;
/// left_modes/right_modes record the kept local frame columns.
struct CanonicalTwoQubitState {
  double c1 = 0.0;
  double c2 = 0.0;
  double retained_weight = 0.0;
  StateVector vector;
  DenseMatrix left_modes;
  DenseMatrix right_modes;
};

inline double state_norm(const BipartiteState& state) {
  return frobenius_norm(state.amplitudes);
}

/// Factors the amplitude matrix: amplitudes = sum_k c_k (left col k)(right
/// col k)^T with no conjugation on the right factor. Coefficients come out
/// real and non-negative; equal values keep their pre-sort order.
inline SchmidtDecomposition schmidt_decompose(const BipartiteState& state,
                                              double rank_tolerance = kDefaultTol.rank,
                                              const Tolerances& tol = kDefaultTol) {
  if (!(rank_tolerance > 0.0 && rank_tolerance < 1.0))
    throw RangeError("rank tolerance must lie in (0, 1)");
  const double n = state_norm(state);
  if (std::abs(n * n - 1.0) > tol.normalization)
    throw NormalizationError("state is not normalized");

  SvdResult f = svd(state.amplitudes);
  SchmidtDecomposition d;
  d.coefficients = std::move(f.s);
  d.left_basis = std::move(f.u);
  // Right modes are the unconjugated rows of the V^H factor, as columns.
  d.right_basis = transpose(f.vh);
  for (double c : d.coefficients)
    if (c > rank_tolerance) ++d.rank;
  return d;
}

/// A state is product iff it has a single significant Schmidt coefficient.
inline bool is_product(const BipartiteState& state,
                       double rank_tolerance = kDefaultTol.rank,
                       const Tolerances& tol = kDefaultTol) {
  const SchmidtDecomposition d = schmidt_decompose(state, rank_tolerance, tol);
  return d.coefficients.size() < 2 || d.coefficients[1] <= rank_tolerance;
}

/// (0, c1, c2, 0): the canonical vector for given coefficients; c2 may carry
/// a sign.
inline StateVector make_canonical_vector(double c1, double c2,
                                         const Tolerances& tol = kDefaultTol) {
  if (std::abs(c1 * c1 + c2 * c2 - 1.0) > tol.normalization)
    throw NormalizationError("coefficients must satisfy c1^2 + c2^2 = 1");
  return StateVector({Complex{0.0, 0.0}, Complex{c1, 0.0}, Complex{c2, 0.0}, Complex{0.0, 0.0}});
}

/// Keeps the two largest Schmidt modes and renormalizes. Throws
/// NotEntangledError when there is no second significant mode. Ties among
/// trailing coefficients resolve by original mode index (stable sort).
inline CanonicalTwoQubitState to_canonical(const BipartiteState& state,
                                           double rank_tolerance = kDefaultTol.rank,
                                           const Tolerances& tol = kDefaultTol) {
  const SchmidtDecomposition d = schmidt_decompose(state, rank_tolerance, tol);
  if (d.coefficients.size() < 2 || d.coefficients[1] <= rank_tolerance)
    throw NotEntangledError("state is a product state");

  CanonicalTwoQubitState c;
  const double raw1 = d.coefficients[0];
  const double raw2 = d.coefficients[1];
  c.retained_weight = raw1 * raw1 + raw2 * raw2;
  const double scale = std::sqrt(c.retained_weight);
  c.c1 = raw1 / scale;
  c.c2 = raw2 / scale;
  c.vector = make_canonical_vector(c.c1, c.c2, tol);
  c.left_modes = DenseMatrix(d.left_basis.rows(), 2);
  c.right_modes = DenseMatrix(d.right_basis.rows(), 2);
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < d.left_basis.rows(); ++i)
      c.left_modes(i, k) = d.left_basis(i, k);
    for (std::size_t i = 0; i < d.right_basis.rows(); ++i)
      c.right_modes(i, k) = d.right_basis(i, k);
  }
  return c;
}

}  // namespace bellkit
