#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "conedual/errors.hpp"
#include "conedual/scalar.hpp"

namespace conedual {

template <class S>
using VecT = std::vector<S>;

/// Dense row-list matrix.  Rows may be appended freely; consumers treat the
/// row count as the constraint count and the column count as the ambient
/// dimension.
template <class S>
struct MatT {
  std::size_t cols = 0;
  std::vector<VecT<S>> rows;

  MatT() = default;
  explicit MatT(std::size_t cols_) : cols(cols_) {}

  std::size_t row_count() const { return rows.size(); }

  void add_row(VecT<S> r) {
    if (r.size() != cols) throw DimensionError("row length does not match column count");
    rows.push_back(std::move(r));
  }
};

template <class S>
inline void check_same_dim(const VecT<S>& a, const VecT<S>& b) {
  if (a.size() != b.size()) {
    throw DimensionError("vectors of dimension " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " cannot be combined");
  }
}

template <class S>
inline S dot(const VecT<S>& a, const VecT<S>& b) {
  check_same_dim(a, b);
  S acc = scalar_traits<S>::zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class S>
inline VecT<S> vec_add(const VecT<S>& a, const VecT<S>& b) {
  check_same_dim(a, b);
  VecT<S> r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

template <class S>
inline VecT<S> vec_sub(const VecT<S>& a, const VecT<S>& b) {
  check_same_dim(a, b);
  VecT<S> r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

template <class S>
inline VecT<S> vec_scale(const VecT<S>& a, const S& s) {
  VecT<S> r(a);
  for (auto& v : r) v *= s;
  return r;
}

template <class S>
inline VecT<S> vec_neg(const VecT<S>& a) {
  return vec_scale(a, S(-scalar_traits<S>::one()));
}

template <class S>
inline bool is_zero_vec(const VecT<S>& a) {
  for (const auto& v : a) {
    if (scalar_traits<S>::sign(v) != 0) return false;
  }
  return true;
}

template <class S>
inline VecT<S> zero_vec(std::size_t n) {
  return VecT<S>(n, scalar_traits<S>::zero());
}

template <class S>
inline VecT<S> unit_vec(std::size_t n, std::size_t i) {
  VecT<S> e = zero_vec<S>(n);
  e[i] = scalar_traits<S>::one();
  return e;
}

template <class S>
inline double norm2_double(const VecT<S>& a) {
  double acc = 0.0;
  for (const auto& v : a) {
    const double d = scalar_traits<S>::to_double(v);
    acc += d * d;
  }
  return std::sqrt(acc);
}

/// Strict lexicographic order; used only to make outputs deterministic.
template <class S>
inline bool lex_less(const VecT<S>& a, const VecT<S>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

/// Rescales a rational vector by a positive factor so entries are coprime
/// integers.  Direction is preserved; the zero vector is returned unchanged.
inline VecT<Rational> normalize_ray(const VecT<Rational>& v) {
  BigInt den_lcm = 1;
  for (const auto& x : v) den_lcm = lcm(den_lcm, denominator(x));
  BigInt num_gcd = 0;
  for (const auto& x : v) num_gcd = gcd(num_gcd, numerator(x) * (den_lcm / denominator(x)));
  if (num_gcd == 0) return v;
  VecT<Rational> r(v.size());
  const Rational f{den_lcm, num_gcd};
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * f;
  return r;
}

/// Unit-norm rescale for float vectors; zero stays zero.
inline VecT<double> normalize_ray(const VecT<double>& v) {
  const double n = norm2_double(v);
  if (n == 0.0) return v;
  VecT<double> r(v);
  for (auto& x : r) x /= n;
  return r;
}

namespace detail {

/// Reduced row echelon form in place.  Exact scalars pivot on the first
/// nonzero entry; floats pivot on the largest magnitude and treat entries
/// below `pivot_eps` as zero.  Returns the pivot column list.
template <class S>
inline std::vector<std::size_t> rref_in_place(std::vector<VecT<S>>& rows, std::size_t cols,
                                              double pivot_eps = 0.0) {
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t best = rows.size();
    if constexpr (scalar_traits<S>::is_exact) {
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (scalar_traits<S>::sign(rows[i][c]) != 0) {
          best = i;
          break;
        }
      }
    } else {
      double best_mag = pivot_eps;
      for (std::size_t i = r; i < rows.size(); ++i) {
        const double mag = std::abs(scalar_traits<S>::to_double(rows[i][c]));
        if (mag > best_mag) {
          best_mag = mag;
          best = i;
        }
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[r], rows[best]);
    const S piv = rows[r][c];
    for (std::size_t j = 0; j < cols; ++j) rows[r][j] /= piv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const S f = rows[i][c];
      if (scalar_traits<S>::sign(f) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  rows.resize(pivot_cols.size(), zero_vec<S>(cols));
  return pivot_cols;
}

}  // namespace detail

/// Basis of the row space.  Exact for rationals; float uses threshold pivots
/// scaled by the largest row entry.
template <class S>
inline std::vector<VecT<S>> row_space_basis(std::vector<VecT<S>> rows, std::size_t cols,
                                            const ScalarPolicy& policy = ScalarPolicy::exact()) {
  double eps = 0.0;
  if constexpr (!scalar_traits<S>::is_exact) {
    double scale = 0.0;
    for (const auto& row : rows) {
      for (const auto& v : row) scale = std::max(scale, std::abs(v));
    }
    eps = policy.band(scale);
  }
  (void)policy;
  detail::rref_in_place(rows, cols, eps);
  return rows;
}

template <class S>
inline std::size_t rank_of(const std::vector<VecT<S>>& rows, std::size_t cols,
                           const ScalarPolicy& policy = ScalarPolicy::exact()) {
  return row_space_basis(std::vector<VecT<S>>(rows), cols, policy).size();
}

/// Basis of {x : Ax = 0}.
template <class S>
inline std::vector<VecT<S>> kernel_basis(std::vector<VecT<S>> rows, std::size_t cols,
                                         const ScalarPolicy& policy = ScalarPolicy::exact()) {
  double eps = 0.0;
  if constexpr (!scalar_traits<S>::is_exact) {
    double scale = 0.0;
    for (const auto& row : rows) {
      for (const auto& v : row) scale = std::max(scale, std::abs(v));
    }
    eps = policy.band(scale);
  }
  (void)policy;
  const auto pivots = detail::rref_in_place(rows, cols, eps);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<VecT<S>> basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    VecT<S> v = zero_vec<S>(cols);
    v[c] = scalar_traits<S>::one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves Ax = b for one solution; std::nullopt when inconsistent.
/// Intended for small exact systems.
template <class S>
inline std::optional<VecT<S>> solve_linear(const std::vector<VecT<S>>& a_rows,
                                           const VecT<S>& b, std::size_t cols) {
  std::vector<VecT<S>> aug;
  aug.reserve(a_rows.size());
  for (std::size_t i = 0; i < a_rows.size(); ++i) {
    VecT<S> row = a_rows[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  const auto pivots = detail::rref_in_place(aug, cols + 1, 0.0);
  VecT<S> x = zero_vec<S>(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == cols) return std::nullopt;  // row (0 ... 0 | 1): inconsistent
    x[pivots[i]] = aug[i][cols];
  }
  return x;
}

/// Least-squares-free exact projection helper: Gram-matrix solve of
/// B Bᵀ c = B x.  The basis rows need not be orthogonal.
template <class S>
inline VecT<S> project_onto_rows(const VecT<S>& x, const std::vector<VecT<S>>& basis) {
  if (basis.empty()) return zero_vec<S>(x.size());
  const std::size_t k = basis.size();
  std::vector<VecT<S>> gram(k, zero_vec<S>(k));
  VecT<S> rhs = zero_vec<S>(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], x);
  }
  const auto c = solve_linear(gram, rhs, k);
  if (!c) throw InternalInvariantViolation("projection Gram system is singular");
  VecT<S> p = zero_vec<S>(x.size());
  for (std::size_t i = 0; i < k; ++i) p = vec_add(p, vec_scale(basis[i], (*c)[i]));
  return p;
}

/// Minimum eigenvalue of a dense symmetric matrix (float path only).
inline double eigmin_symmetric(const std::vector<VecT<double>>& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd em(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) em(i, j) = m[i][j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(em, Eigen::EigenvaluesOnly);
  return n == 0 ? 0.0 : es.eigenvalues().minCoeff();
}

/// Orthonormal basis of the span of `rows`, rank decided by singular values
/// against rel_tol * sigma_max (float path).
inline std::vector<VecT<double>> orthonormal_row_basis(const std::vector<VecT<double>>& rows,
                                                       std::size_t cols,
                                                       const ScalarPolicy& policy) {
  if (rows.empty()) return {};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() == 0 ? 0.0 : std::max(policy.abs_tol, policy.rel_tol * sv(0));
  std::vector<VecT<double>> basis;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= cutoff) break;
    VecT<double> v(cols);
    for (std::size_t j = 0; j < cols; ++j) v[j] = svd.matrixV()(static_cast<Eigen::Index>(j), i);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace conedual
