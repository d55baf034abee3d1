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

// Dense complex linear algebra kernels: matrices, state vectors, Kronecker
// products, expectation values, and a self-contained singular value
// decomposition. Everything is templated on the real scalar type; the
// double-precision aliases at the bottom are what the rest of the library
// uses.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "bellkit/common.hpp"

namespace bellkit {

template <typename RealT>
class BasicMatrix {
 public:
  using real_type = RealT;
  using value_type = std::complex<RealT>;

  BasicMatrix() = default;

  /// Zero-filled rows x cols matrix.
  BasicMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = value_type{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

template <typename RealT>
class BasicVector {
 public:
  using real_type = RealT;
  using value_type = std::complex<RealT>;

  BasicVector() = default;

  /// Zero-filled vector of the given dimension.
  explicit BasicVector(std::size_t dim) : amps_(dim) {}

  BasicVector(std::vector<value_type> amps) : amps_(std::move(amps)) {}

  std::size_t size() const { return amps_.size(); }

  value_type& operator[](std::size_t i) { return amps_[i]; }
  const value_type& operator[](std::size_t i) const { return amps_[i]; }

  auto begin() const { return amps_.begin(); }
  auto end() const { return amps_.end(); }

 private:
  std::vector<value_type> amps_;
};

namespace detail {

template <typename RealT>
void require_same_shape(const BasicMatrix<RealT>& a, const BasicMatrix<RealT>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix shapes do not match");
}

}  // namespace detail

template <typename RealT>
BasicMatrix<RealT> operator+(const BasicMatrix<RealT>& a, const BasicMatrix<RealT>& b) {
  detail::require_same_shape(a, b);
  BasicMatrix<RealT> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

template <typename RealT>
BasicMatrix<RealT> operator-(const BasicMatrix<RealT>& a, const BasicMatrix<RealT>& b) {
  detail::require_same_shape(a, b);
  BasicMatrix<RealT> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

template <typename RealT>
BasicMatrix<RealT> operator*(const BasicMatrix<RealT>& a, const BasicMatrix<RealT>& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product inner dimensions differ");
  BasicMatrix<RealT> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto aik = a(i, k);
      if (aik == typename BasicMatrix<RealT>::value_type{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <typename RealT>
BasicMatrix<RealT> operator*(std::complex<RealT> scalar, const BasicMatrix<RealT>& m) {
  BasicMatrix<RealT> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = scalar * m(i, j);
  return out;
}

template <typename RealT>
BasicMatrix<RealT> operator*(RealT scalar, const BasicMatrix<RealT>& m) {
  return std::complex<RealT>{scalar} * m;
}

template <typename RealT>
BasicMatrix<RealT> adjoint(const BasicMatrix<RealT>& m) {
  BasicMatrix<RealT> out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

template <typename RealT>
BasicMatrix<RealT> transpose(const BasicMatrix<RealT>& m) {
  BasicMatrix<RealT> out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

template <typename RealT>
RealT frobenius_norm(const BasicMatrix<RealT>& m) {
  RealT sum{};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) sum += std::norm(m(i, j));
  return std::sqrt(sum);
}

/// Kronecker product; entry (i*rowsB + p, j*colsB + q) = a(i, j) * b(p, q).
template <typename RealT>
BasicMatrix<RealT> kron(const BasicMatrix<RealT>& a, const BasicMatrix<RealT>& b) {
  BasicMatrix<RealT> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto aij = a(i, j);
      if (aij == typename BasicMatrix<RealT>::value_type{}) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          out(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return out;
}

template <typename RealT>
BasicVector<RealT> apply(const BasicMatrix<RealT>& m, const BasicVector<RealT>& v) {
  if (m.cols() != v.size()) throw DimensionError("matrix and vector dimensions differ");
  BasicVector<RealT> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    typename BasicVector<RealT>::value_type acc{};
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

/// Conjugate-linear in the first argument.
template <typename RealT>
std::complex<RealT> inner(const BasicVector<RealT>& a, const BasicVector<RealT>& b) {
  if (a.size() != b.size()) throw DimensionError("vector dimensions differ");
  std::complex<RealT> acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

template <typename RealT>
RealT norm(const BasicVector<RealT>& v) {
  RealT sum{};
  for (std::size_t i = 0; i < v.size(); ++i) sum += std::norm(v[i]);
  return std::sqrt(sum);
}

/// <v| m |v>. Throws DimensionError unless m is square with side v.size().
template <typename RealT>
std::complex<RealT> expectation(const BasicMatrix<RealT>& m, const BasicVector<RealT>& v) {
  if (m.rows() != m.cols()) throw DimensionError("expectation needs a square matrix");
  return inner(v, apply(m, v));
}

template <typename RealT>
struct BasicSvdResult {
  BasicMatrix<RealT> u;   ///< rows x k, orthonormal columns
  std::vector<RealT> s;   ///< k singular values, descending, nonnegative
  BasicMatrix<RealT> vh;  ///< k x cols, orthonormal rows
};

namespace detail {

/// One-sided Jacobi on a matrix with rows >= cols. Right-multiplies 2x2
/// unitaries until all column pairs are orthogonal; the column norms are then
/// the singular values. Each step first phases column q so the Gram
/// off-diagonal becomes real, then applies the classic symmetric Jacobi
/// rotation (t is the smaller root of t^2 + 2*tau*t - 1 = 0).
template <typename RealT>
BasicSvdResult<RealT> svd_tall(const BasicMatrix<RealT>& m) {
  using C = std::complex<RealT>;
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  BasicMatrix<RealT> a = m;
  BasicMatrix<RealT> v = BasicMatrix<RealT>::identity(n);

  const RealT eps = std::numeric_limits<RealT>::epsilon();
  const int max_sweeps = 60;
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        RealT app{}, aqq{};
        C apq{};
        for (std::size_t i = 0; i < rows; ++i) {
          app += std::norm(a(i, p));
          aqq += std::norm(a(i, q));
          apq += std::conj(a(i, p)) * a(i, q);
        }
        const RealT g = std::abs(apq);
        if (g <= RealT{16} * eps * std::sqrt(app * aqq)) continue;
        converged = false;

        const C phase = std::conj(apq) / g;  // e^{-i arg(apq)}
        const RealT tau = (aqq - app) / (RealT{2} * g);
        const RealT t = (tau >= RealT{0} ? RealT{1} : RealT{-1}) /
                        (std::abs(tau) + std::sqrt(RealT{1} + tau * tau));
        const RealT c = RealT{1} / std::sqrt(RealT{1} + t * t);
        const RealT s = t * c;

        for (std::size_t i = 0; i < rows; ++i) {
          const C ap = a(i, p);
          const C aq = a(i, q) * phase;
          a(i, p) = c * ap - s * aq;
          a(i, q) = s * ap + c * aq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const C vp = v(i, p);
          const C vq = v(i, q) * phase;
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
  }
  if (!converged) throw NumericalError("singular value decomposition did not converge");

  std::vector<RealT> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    RealT sum{};
    for (std::size_t i = 0; i < rows; ++i) sum += std::norm(a(i, j));
    norms[j] = std::sqrt(sum);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  BasicSvdResult<RealT> out;
  out.u = BasicMatrix<RealT>(rows, n);
  out.s.resize(n);
  out.vh = BasicMatrix<RealT>(n, n);
  std::vector<std::size_t> null_columns;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = order[j];
    out.s[j] = norms[k];
    if (norms[k] > RealT{0}) {
      for (std::size_t i = 0; i < rows; ++i) out.u(i, j) = a(i, k) / norms[k];
    } else {
      null_columns.push_back(j);
    }
    for (std::size_t i = 0; i < n; ++i) out.vh(j, i) = std::conj(v(i, k));
  }

  // Columns with exactly zero norm carry no direction of their own; complete
  // the frame from standard basis vectors, always picking the candidate with
  // the largest component outside the span built so far.
  for (std::size_t j : null_columns) {
    std::size_t best = 0;
    RealT best_residual = RealT{-1};
    for (std::size_t i = 0; i < rows; ++i) {
      RealT captured{};
      for (std::size_t l = 0; l < n; ++l)
        if (l != j && !(out.s[l] == RealT{0} && l > j)) captured += std::norm(out.u(i, l));
      const RealT residual = RealT{1} - captured;
      if (residual > best_residual) {
        best_residual = residual;
        best = i;
      }
    }
    std::vector<C> col(rows);
    col[best] = C{1};
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t l = 0; l < n; ++l) {
        if (l == j || (out.s[l] == RealT{0} && l > j)) continue;
        C proj{};
        for (std::size_t i = 0; i < rows; ++i) proj += std::conj(out.u(i, l)) * col[i];
        for (std::size_t i = 0; i < rows; ++i) col[i] -= proj * out.u(i, l);
      }
    }
    RealT nrm{};
    for (const C& x : col) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < rows; ++i) out.u(i, j) = col[i] / nrm;
  }
  return out;
}

}  // namespace detail

/// Economy singular value decomposition, m = u * diag(s) * vh, with
/// k = min(rows, cols) factors. Throws DimensionError on an empty matrix and
/// NumericalError if the iteration fails to settle.
template <typename RealT>
BasicSvdResult<RealT> svd(const BasicMatrix<RealT>& m) {
  if (m.rows() == 0 || m.cols() == 0) throw DimensionError("svd of an empty matrix");
  if (m.rows() >= m.cols()) return detail::svd_tall(m);
  // m = (m^dag)^dag: decompose the adjoint and swap the factor roles.
  BasicSvdResult<RealT> t = detail::svd_tall(adjoint(m));
  return {adjoint(t.vh), std::move(t.s), adjoint(t.u)};
}

using Real = double;
using Complex = std::complex<double>;
using DenseMatrix = BasicMatrix<double>;
using StateVector = BasicVector<double>;
using SvdResult = BasicSvdResult<double>;

}  // namespace bellkit
