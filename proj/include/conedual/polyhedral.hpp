#pragma once

#include <algorithm>
#include <bitset>
#include <cstddef>
#include <vector>

#include "conedual/geometry.hpp"
#include "conedual/linalg.hpp"

namespace conedual {

/// Companion V- and H-descriptions of one polyhedral cone:
///   cone = { x : <a, x> >= 0 for all a in halfspaces } = cone(gens).
/// Lines appear in `gens` as +/- ray pairs.  Both lists are normalized
/// (coprime integer entries), deduplicated, and lexicographically sorted, so
/// equal cones produced along different routes compare equal.
template <class S>
struct PolyPair {
  std::size_t dim = 0;
  std::vector<VecT<S>> gens;
  std::vector<VecT<S>> halfspaces;
};

namespace detail {

constexpr std::size_t kDdBits = 192;
using TightSet = std::bitset<kDdBits>;

template <class S>
inline std::vector<VecT<S>> normalize_dedup_sort(std::vector<VecT<S>> rows) {
  for (auto& r : rows) r = normalize_ray(r);
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const VecT<S>& r) { return is_zero_vec(r); }),
             rows.end());
  std::sort(rows.begin(), rows.end(), lex_less<S>);
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

/// Rows of `rows` forming a basis of the row space, in encounter order.
template <class S>
inline std::vector<std::size_t> independent_row_indices(const std::vector<VecT<S>>& rows,
                                                        std::size_t cols) {
  std::vector<std::size_t> picked;
  std::vector<VecT<S>> acc;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    acc.push_back(rows[i]);
    if (row_space_basis(acc, cols).size() == acc.size()) {
      picked.push_back(i);
    } else {
      acc.pop_back();
    }
  }
  return picked;
}

/// Exact inverse of a square matrix given as rows.
template <class S>
inline std::vector<VecT<S>> invert_square(const std::vector<VecT<S>>& rows) {
  const std::size_t k = rows.size();
  std::vector<VecT<S>> aug(k);
  for (std::size_t i = 0; i < k; ++i) {
    aug[i] = rows[i];
    aug[i].resize(2 * k, scalar_traits<S>::zero());
    aug[i][k + i] = scalar_traits<S>::one();
  }
  const auto pivots = rref_in_place(aug, 2 * k, 0.0);
  if (pivots.size() != k || (k > 0 && pivots.back() != k - 1)) {
    throw InternalInvariantViolation("invert_square: matrix is singular");
  }
  std::vector<VecT<S>> inv(k, zero_vec<S>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) inv[i][j] = aug[i][k + j];
  }
  return inv;
}

/// Double description for a *pointed* cone {z : <row, z> >= 0} of full rank.
/// Initializes from a simplicial subcone and adds the remaining halfspaces
/// incrementally, keeping only adjacent-pair combinations.
template <class S>
inline std::vector<VecT<S>> pointed_extreme_rays(const std::vector<VecT<S>>& rows,
                                                 std::size_t k) {
  if (k == 0) return {};
  if (rows.size() + k > kDdBits) {
    throw PolicyError("double description: constraint count beyond supported envelope");
  }
  const auto base_idx = independent_row_indices(rows, k);
  if (base_idx.size() != k) {
    throw InternalInvariantViolation("pointed cone constraints do not have full rank");
  }
  std::vector<VecT<S>> base(k);
  for (std::size_t i = 0; i < k; ++i) base[i] = rows[base_idx[i]];
  const auto inv = invert_square(base);

  struct Ray {
    VecT<S> v;
    TightSet tight;
  };
  std::vector<Ray> rays;
  for (std::size_t i = 0; i < k; ++i) {
    Ray r;
    r.v = zero_vec<S>(k);
    for (std::size_t j = 0; j < k; ++j) r.v[j] = inv[j][i];  // column i of inv
    r.v = normalize_ray(r.v);
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i) r.tight.set(j);
    }
    rays.push_back(std::move(r));
  }

  std::size_t next_bit = k;
  std::vector<bool> in_base(rows.size(), false);
  for (auto i : base_idx) in_base[i] = true;
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    if (in_base[ri]) continue;
    const VecT<S>& a = rows[ri];
    const std::size_t bit = next_bit++;
    std::vector<int> side(rays.size());
    VecT<S> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      side[i] = scalar_traits<S>::sign(val[i]);
    }
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (side[i] < 0) continue;
      Ray r = rays[i];
      if (side[i] == 0) r.tight.set(bit);
      next.push_back(std::move(r));
    }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (side[p] <= 0) continue;
      for (std::size_t m = 0; m < rays.size(); ++m) {
        if (side[m] >= 0) continue;
        const TightSet common = rays[p].tight & rays[m].tight;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size(); ++t) {
          if (t == p || t == m) continue;
          if ((common & ~rays[t].tight).none()) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        Ray w;
        w.v = normalize_ray(vec_sub(vec_scale(rays[m].v, val[p]), vec_scale(rays[p].v, val[m])));
        if (is_zero_vec(w.v)) continue;
        w.tight = common;
        w.tight.set(bit);
        next.push_back(std::move(w));
      }
    }
    rays = std::move(next);
  }

  std::vector<VecT<S>> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  return normalize_dedup_sort(std::move(out));
}

}  // namespace detail

/// Extreme generators of {x : <a, x> >= 0 for a in halfspaces}, lines
/// returned as +/- pairs.  Exact scalars only.
template <class S>
inline std::vector<VecT<S>> extreme_rays_of_hrep(std::size_t dim,
                                                 const std::vector<VecT<S>>& halfspaces_in) {
  static_assert(scalar_traits<S>::is_exact,
                "double description runs on the exact scalar only");
  auto halfspaces = detail::normalize_dedup_sort(std::vector<VecT<S>>(halfspaces_in));
  for (const auto& a : halfspaces) {
    if (a.size() != dim) throw DimensionError("halfspace dimension mismatch");
  }
  std::vector<VecT<S>> out;
  const auto lineality = kernel_basis(halfspaces, dim);
  // Complement the lineality space and restrict: the remaining cone is pointed.
  const auto complement = lineality.empty()
                              ? [&] {
                                  std::vector<VecT<S>> full;
                                  for (std::size_t i = 0; i < dim; ++i) {
                                    full.push_back(unit_vec<S>(dim, i));
                                  }
                                  return full;
                                }()
                              : kernel_basis(lineality, dim);
  const std::size_t k = complement.size();
  if (k > 0) {
    std::vector<VecT<S>> restricted;
    for (const auto& a : halfspaces) {
      VecT<S> row(k);
      for (std::size_t t = 0; t < k; ++t) row[t] = dot(a, complement[t]);
      if (!is_zero_vec(row)) restricted.push_back(normalize_ray(row));
    }
    restricted = detail::normalize_dedup_sort(std::move(restricted));
    for (const auto& z : detail::pointed_extreme_rays(restricted, k)) {
      VecT<S> x = zero_vec<S>(dim);
      for (std::size_t t = 0; t < k; ++t) x = vec_add(x, vec_scale(complement[t], z[t]));
      out.push_back(std::move(x));
    }
  }
  for (const auto& l : lineality) {
    out.push_back(l);
    out.push_back(vec_neg(l));
  }
  return detail::normalize_dedup_sort(std::move(out));
}

/// Completes an H-description into a companion pair.
template <class S>
inline PolyPair<S> pair_from_hrep(std::size_t dim, const std::vector<VecT<S>>& halfspaces) {
  PolyPair<S> p;
  p.dim = dim;
  p.halfspaces = detail::normalize_dedup_sort(std::vector<VecT<S>>(halfspaces));
  p.gens = extreme_rays_of_hrep(dim, p.halfspaces);
  return p;
}

/// Completes a V-description into a companion pair.  The halfspaces of
/// cone(gens) are the extreme rays of its dual {y : <g, y> >= 0}.
template <class S>
inline PolyPair<S> pair_from_vrep(std::size_t dim, const std::vector<VecT<S>>& gens) {
  PolyPair<S> p;
  p.dim = dim;
  p.gens = detail::normalize_dedup_sort(std::vector<VecT<S>>(gens));
  p.halfspaces = extreme_rays_of_hrep(dim, p.gens);
  // Re-derive the generator list so both sides are minimal and canonical.
  p.gens = extreme_rays_of_hrep(dim, p.halfspaces);
  return p;
}

/// Swapping the two descriptions dualizes the cone exactly.
template <class S>
inline PolyPair<S> dual_pair(const PolyPair<S>& p) {
  PolyPair<S> d;
  d.dim = p.dim;
  d.gens = p.halfspaces;
  d.halfspaces = p.gens;
  return d;
}

}  // namespace conedual
