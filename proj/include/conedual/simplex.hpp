#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conedual/linalg.hpp"

namespace conedual {

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class S>
struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  S value = scalar_traits<S>::zero();
  VecT<S> x;    // optimal point (Optimal) or feasible start of the ray (Unbounded)
  VecT<S> ray;  // improving ray (Unbounded only)
};

namespace detail {

/// Dense two-phase primal simplex for max cᵀx s.t. Ax = b, x >= 0, with
/// Bland's rule throughout.  Exact scalars only; this is the workhorse behind
/// every rational feasibility and margin query.
template <class S>
class StandardSimplex {
  static_assert(scalar_traits<S>::is_exact, "simplex requires an exact scalar");

 public:
  StandardSimplex(std::vector<VecT<S>> a, VecT<S> b, VecT<S> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), n_(c_.size()) {
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (scalar_traits<S>::sign(b_[i]) < 0) {
        a_[i] = vec_neg(a_[i]);
        b_[i] = -b_[i];
      }
    }
  }

  LpOutcome<S> solve() {
    LpOutcome<S> out;
    if (!phase_one()) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    return phase_two();
  }

 private:
  // Tableau state: rows a_ hold B^{-1}A, b_ holds B^{-1}b, z_ the reduced
  // costs of the active objective, z0_ its current value.
  std::vector<VecT<S>> a_;
  VecT<S> b_;
  VecT<S> c_;
  std::size_t n_;
  std::vector<std::size_t> basis_;
  VecT<S> z_;
  S z0_ = scalar_traits<S>::zero();
  std::size_t ncols_ = 0;

  void pivot(std::size_t row, std::size_t col) {
    const S piv = a_[row][col];
    for (std::size_t j = 0; j < ncols_; ++j) a_[row][j] /= piv;
    b_[row] /= piv;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == row) continue;
      const S f = a_[i][col];
      if (scalar_traits<S>::sign(f) == 0) continue;
      for (std::size_t j = 0; j < ncols_; ++j) a_[i][j] -= f * a_[row][j];
      b_[i] -= f * b_[row];
    }
    const S fz = z_[col];
    if (scalar_traits<S>::sign(fz) != 0) {
      for (std::size_t j = 0; j < ncols_; ++j) z_[j] -= fz * a_[row][j];
      z0_ += fz * b_[row];
    }
    basis_[row] = col;
  }

  /// Bland: smallest improving column, then smallest basic index on ties.
  /// Returns false on optimality, sets `unbounded_col` when no ratio exists.
  bool iterate(std::optional<std::size_t>& unbounded_col) {
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (scalar_traits<S>::sign(z_[j]) <= 0) continue;
      std::size_t row = a_.size();
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (scalar_traits<S>::sign(a_[i][j]) <= 0) continue;
        if (row == a_.size()) {
          row = i;
          continue;
        }
        const S lhs = b_[i] * a_[row][j];
        const S rhs = b_[row] * a_[i][j];
        if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[row])) row = i;
      }
      if (row == a_.size()) {
        unbounded_col = j;
        return false;
      }
      pivot(row, j);
      return true;
    }
    return false;
  }

  bool phase_one() {
    const std::size_t m = a_.size();
    ncols_ = n_ + m;
    basis_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      a_[i].resize(ncols_, scalar_traits<S>::zero());
      a_[i][n_ + i] = scalar_traits<S>::one();
      basis_[i] = n_ + i;
    }
    z_ = zero_vec<S>(ncols_);
    z0_ = scalar_traits<S>::zero();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n_; ++j) z_[j] += a_[i][j];
      z0_ -= b_[i];
    }
    std::optional<std::size_t> unbounded;
    while (iterate(unbounded)) {
    }
    if (scalar_traits<S>::sign(z0_) < 0) return false;
    // Remove leftover artificial basics (always at value zero here).
    for (std::size_t i = 0; i < a_.size();) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (scalar_traits<S>::sign(a_[i][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col < n_) {
        pivot(i, col);
        ++i;
      } else {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
        b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    ncols_ = n_;
    for (auto& row : a_) row.resize(n_);
    return true;
  }

  LpOutcome<S> phase_two() {
    z_ = c_;
    z0_ = scalar_traits<S>::zero();
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const S f = c_[basis_[i]];
      if (scalar_traits<S>::sign(f) == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) z_[j] -= f * a_[i][j];
      z0_ += f * b_[i];
    }
    std::optional<std::size_t> unbounded;
    while (iterate(unbounded)) {
    }
    LpOutcome<S> out;
    out.x = zero_vec<S>(n_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.x[basis_[i]] = b_[i];
    if (unbounded) {
      out.status = LpStatus::Unbounded;
      out.ray = zero_vec<S>(n_);
      out.ray[*unbounded] = scalar_traits<S>::one();
      for (std::size_t i = 0; i < a_.size(); ++i) out.ray[basis_[i]] = -a_[i][*unbounded];
      return out;
    }
    out.status = LpStatus::Optimal;
    out.value = z0_;
    return out;
  }
};

}  // namespace detail

enum class LpRel { Le, Ge, Eq };

/// Small modeling layer over the standard-form simplex: free or nonnegative
/// variables, two-sided relations, maximize or minimize.
template <class S>
class LpProblem {
  static_assert(scalar_traits<S>::is_exact, "LpProblem requires an exact scalar");

 public:
  std::size_t add_var(bool nonneg) {
    vars_.push_back(nonneg);
    return vars_.size() - 1;
  }

  void add_constraint(const VecT<S>& coeffs, LpRel rel, const S& rhs) {
    if (coeffs.size() != vars_.size()) throw DimensionError("constraint arity mismatch");
    rows_.push_back(coeffs);
    rels_.push_back(rel);
    rhs_.push_back(rhs);
  }

  void set_objective(const VecT<S>& c, bool maximize) {
    if (c.size() != vars_.size()) throw DimensionError("objective arity mismatch");
    obj_ = c;
    maximize_ = maximize;
  }

  LpOutcome<S> solve() const {
    // Column layout: for each var one column (nonneg) or two (free split),
    // then one slack/surplus column per inequality.
    std::vector<std::size_t> col_of(vars_.size());
    std::size_t ncols = 0;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      col_of[v] = ncols;
      ncols += vars_[v] ? 1 : 2;
    }
    std::size_t nslack = 0;
    for (auto rel : rels_) {
      if (rel != LpRel::Eq) ++nslack;
    }
    const std::size_t total = ncols + nslack;
    std::vector<VecT<S>> a;
    VecT<S> b;
    std::size_t slack = ncols;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      VecT<S> row = zero_vec<S>(total);
      for (std::size_t v = 0; v < vars_.size(); ++v) {
        const S& coeff = rows_[i][v];
        if (scalar_traits<S>::sign(coeff) == 0) continue;
        row[col_of[v]] = coeff;
        if (!vars_[v]) row[col_of[v] + 1] = -coeff;
      }
      if (rels_[i] == LpRel::Le) {
        row[slack++] = scalar_traits<S>::one();
      } else if (rels_[i] == LpRel::Ge) {
        row[slack++] = -scalar_traits<S>::one();
      }
      a.push_back(std::move(row));
      b.push_back(rhs_[i]);
    }
    VecT<S> c = zero_vec<S>(total);
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      const S coeff = maximize_ ? obj_[v] : -obj_[v];
      c[col_of[v]] = coeff;
      if (!vars_[v]) c[col_of[v] + 1] = -coeff;
    }
    detail::StandardSimplex<S> core(std::move(a), std::move(b), std::move(c));
    LpOutcome<S> raw = core.solve();
    LpOutcome<S> out;
    out.status = raw.status;
    if (raw.status == LpStatus::Infeasible) return out;
    out.value = maximize_ ? raw.value : -raw.value;
    out.x = fold(raw.x, col_of);
    if (raw.status == LpStatus::Unbounded) out.ray = fold(raw.ray, col_of);
    return out;
  }

 private:
  VecT<S> fold(const VecT<S>& cols, const std::vector<std::size_t>& col_of) const {
    VecT<S> x = zero_vec<S>(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      x[v] = cols[col_of[v]];
      if (!vars_[v]) x[v] -= cols[col_of[v] + 1];
    }
    return x;
  }

  std::vector<bool> vars_;
  std::vector<VecT<S>> rows_;
  std::vector<LpRel> rels_;
  VecT<S> rhs_;
  VecT<S> obj_;
  bool maximize_ = true;
};

/// Feasibility of {x >= 0 : Ax = b}; returns a point when feasible.
template <class S>
inline std::optional<VecT<S>> nonnegative_solve(const std::vector<VecT<S>>& a, const VecT<S>& b,
                                                std::size_t ncols) {
  LpProblem<S> lp;
  for (std::size_t j = 0; j < ncols; ++j) lp.add_var(true);
  for (std::size_t i = 0; i < a.size(); ++i) lp.add_constraint(a[i], LpRel::Eq, b[i]);
  lp.set_objective(zero_vec<S>(ncols), true);
  const auto res = lp.solve();
  if (res.status == LpStatus::Infeasible) return std::nullopt;
  return res.x;
}

}  // namespace conedual
