#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "conedual/linalg.hpp"

namespace conedual {

/// Linear subspace given by a spanning row basis.  `basis` is kept linearly
/// independent; the zero subspace has an empty basis.
template <class S>
struct Subspace {
  std::size_t ambient_dim = 0;
  std::vector<VecT<S>> basis;

  std::size_t dim() const { return basis.size(); }
  bool is_full() const { return basis.size() == ambient_dim; }
};

template <class S>
inline Subspace<S> full_subspace(std::size_t ambient_dim) {
  Subspace<S> s;
  s.ambient_dim = ambient_dim;
  for (std::size_t i = 0; i < ambient_dim; ++i) s.basis.push_back(unit_vec<S>(ambient_dim, i));
  return s;
}

template <class S>
inline S inner_product(const VecT<S>& a, const VecT<S>& b) {
  return dot(a, b);
}

/// Span of a set of vectors, reduced to an independent basis.
template <class S>
inline Subspace<S> span_of(const std::vector<VecT<S>>& vectors, std::size_t ambient_dim,
                           const ScalarPolicy& policy = ScalarPolicy::exact()) {
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) throw DimensionError("span_of: vector dimension mismatch");
  }
  Subspace<S> s;
  s.ambient_dim = ambient_dim;
  if constexpr (scalar_traits<S>::is_exact) {
    s.basis = row_space_basis(vectors, ambient_dim, policy);
  } else {
    s.basis = orthonormal_row_basis(vectors, ambient_dim, policy);
  }
  return s;
}

/// Orthogonal projection onto the subspace.
template <class S>
inline VecT<S> project_onto(const VecT<S>& x, const Subspace<S>& subspace) {
  if (x.size() != subspace.ambient_dim) throw DimensionError("project_onto: dimension mismatch");
  return project_onto_rows(x, subspace.basis);
}

/// Basis of the orthogonal complement.
template <class S>
inline Subspace<S> orthogonal_complement(const Subspace<S>& subspace,
                                         const ScalarPolicy& policy = ScalarPolicy::exact()) {
  Subspace<S> c;
  c.ambient_dim = subspace.ambient_dim;
  if (subspace.basis.empty()) {
    for (std::size_t i = 0; i < subspace.ambient_dim; ++i) {
      c.basis.push_back(unit_vec<S>(subspace.ambient_dim, i));
    }
    return c;
  }
  c.basis = kernel_basis(subspace.basis, subspace.ambient_dim, policy);
  return c;
}

template <class S>
inline bool subspace_contains(const Subspace<S>& subspace, const VecT<S>& x,
                              const ScalarPolicy& policy) {
  const VecT<S> r = vec_sub(x, project_onto(x, subspace));
  if constexpr (scalar_traits<S>::is_exact) {
    (void)policy;
    return is_zero_vec(r);
  } else {
    return norm2_double(r) <= policy.band(norm2_double(x));
  }
}

// --- Symmetric-matrix embedding --------------------------------------------
//
// An order-m symmetric matrix is stored as a vector of length m(m+1)/2 with
// off-diagonal entries scaled by sqrt(2), so the trace inner product of
// matrices equals the plain dot product of their embeddings.  Entries are
// ordered (0,0), (0,1), ..., (0,m-1), (1,1), (1,2), ...

inline std::size_t svec_dim(std::size_t order) { return order * (order + 1) / 2; }

/// Smallest m with m(m+1)/2 = n, or 0 if n is not triangular.
inline std::size_t svec_order(std::size_t n) {
  std::size_t m = 0;
  while (svec_dim(m) < n) ++m;
  return svec_dim(m) == n ? m : 0;
}

inline VecT<double> svec(const std::vector<VecT<double>>& m) {
  const std::size_t order = m.size();
  static const double kRoot2 = std::sqrt(2.0);
  VecT<double> out;
  out.reserve(svec_dim(order));
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i; j < order; ++j) {
      out.push_back(i == j ? m[i][j] : kRoot2 * m[i][j]);
    }
  }
  return out;
}

inline std::vector<VecT<double>> smat(const VecT<double>& v) {
  const std::size_t order = svec_order(v.size());
  if (order == 0 && !v.empty()) {
    throw DimensionError("smat: length is not a triangular number");
  }
  static const double kRoot2 = std::sqrt(2.0);
  std::vector<VecT<double>> m(order, VecT<double>(order, 0.0));
  std::size_t k = 0;
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i; j < order; ++j, ++k) {
      m[i][j] = i == j ? v[k] : v[k] / kRoot2;
      m[j][i] = m[i][j];
    }
  }
  return m;
}

}  // namespace conedual
