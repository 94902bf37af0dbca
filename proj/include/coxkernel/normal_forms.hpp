// Integer normal forms written against Eigen dense types.
//
// The kernels below are templates on the scalar so they run on any exact
// integral type with truncating `/` and `%` (the library instantiates them on
// `coxkernel::Integer`; tests also run them on 64-bit integers as a cross-check).
#pragma once

#include "coxkernel/integer.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace coxkernel {

namespace detail {

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

template <typename Scalar>
Scalar floor_quotient(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  Scalar r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace detail

/// Smith normal form U * A * V = D with U, V unimodular and d_1 | d_2 | ... .
template <typename Scalar>
struct SmithForm {
  Matrix<Scalar> U;
  Matrix<Scalar> D;
  Matrix<Scalar> V;
  Eigen::Index rank = 0;

  std::vector<Scalar> invariant_factors() const {
    std::vector<Scalar> out;
    for (Eigen::Index i = 0; i < rank; ++i) out.push_back(D(i, i));
    return out;
  }
};

/// Pivot rule: smallest nonzero absolute value in the trailing submatrix, ties
/// broken by lowest (row, col). Row operations accumulate into U, column
/// operations into V.
template <typename Derived>
SmithForm<typename Derived::Scalar> smith_normal_form(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> a = input;
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  Matrix<Scalar> u = Matrix<Scalar>::Identity(m, m);
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);

  for (Eigen::Index t = 0; t < std::min(m, n); ++t) {
    bool exhausted = false;
    while (true) {
      Eigen::Index pi = -1, pj = -1;
      Scalar best = 0;
      for (Eigen::Index i = t; i < m; ++i)
        for (Eigen::Index j = t; j < n; ++j) {
          if (a(i, j) == 0) continue;
          const Scalar mag = detail::abs_value(a(i, j));
          if (pi < 0 || mag < best) {
            pi = i;
            pj = j;
            best = mag;
          }
        }
      if (pi < 0) {
        exhausted = true;
        break;
      }
      if (pi != t) {
        a.row(t).swap(a.row(pi));
        u.row(t).swap(u.row(pi));
      }
      if (pj != t) {
        a.col(t).swap(a.col(pj));
        v.col(t).swap(v.col(pj));
      }

      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        const Scalar q = a(i, t) / a(t, t);
        a.row(i) -= q * a.row(t);
        u.row(i) -= q * u.row(t);
        if (a(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        const Scalar q = a(t, j) / a(t, t);
        a.col(j) -= q * a.col(t);
        v.col(j) -= q * v.col(t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      a.row(t) += a.row(bad);
      u.row(t) += u.row(bad);
    }
    if (exhausted) break;
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      u.row(t) = -u.row(t);
    }
  }

  SmithForm<Scalar> out{std::move(u), std::move(a), std::move(v), 0};
  for (Eigen::Index i = 0; i < std::min(m, n); ++i)
    if (out.D(i, i) != 0) out.rank = i + 1;
  return out;
}

/// Row-style Hermite normal form: the nonzero rows of an echelon basis of the
/// row lattice, pivots positive, entries above each pivot reduced into [0, pivot).
template <typename Derived>
Matrix<typename Derived::Scalar> hermite_rows(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> a = input;
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    while (true) {
      Eigen::Index pi = -1;
      for (Eigen::Index i = r; i < m; ++i) {
        if (a(i, c) == 0) continue;
        if (pi < 0 || detail::abs_value(a(i, c)) < detail::abs_value(a(pi, c))) pi = i;
      }
      if (pi < 0) break;
      if (pi != r) a.row(r).swap(a.row(pi));
      bool done = true;
      for (Eigen::Index i = r + 1; i < m; ++i) {
        if (a(i, c) == 0) continue;
        const Scalar q = a(i, c) / a(r, c);
        a.row(i) -= q * a.row(r);
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) a.row(r) = -a.row(r);
    for (Eigen::Index i = 0; i < r; ++i) {
      const Scalar q = detail::floor_quotient(a(i, c), a(r, c));
      if (q != 0) a.row(i) -= q * a.row(r);
    }
    ++r;
  }
  return a.topRows(r);
}

/// Rank via fraction-free (Bareiss) elimination.
template <typename Derived>
Eigen::Index matrix_rank(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> a = input;
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  Eigen::Index r = 0;
  Scalar prev = 1;
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    Eigen::Index pi = -1;
    for (Eigen::Index i = r; i < m; ++i)
      if (a(i, c) != 0) {
        pi = i;
        break;
      }
    if (pi < 0) continue;
    if (pi != r) a.row(r).swap(a.row(pi));
    for (Eigen::Index i = r + 1; i < m; ++i) {
      for (Eigen::Index j = c + 1; j < n; ++j) a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

/// Determinant of a square matrix via Bareiss elimination.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> a = input;
  const Eigen::Index n = a.rows();
  if (n == 0) return Scalar(1);
  Scalar sign = 1;
  Scalar prev = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index swap_row = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return Scalar(0);
      a.row(k).swap(a.row(swap_row));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Particular solution of A x = b over the rationals (free variables set to 0).
std::optional<RatVector> rational_solve(const RatMatrix& a, const RatVector& b);

}  // namespace coxkernel
