#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "conedual/errors.hpp"
#include "conedual/geometry.hpp"
#include "conedual/line_search.hpp"
#include "conedual/linalg.hpp"
#include "conedual/polyhedral.hpp"
#include "conedual/scalar.hpp"
#include "conedual/simplex.hpp"

namespace conedual {

enum class Verdict { Inside, Boundary, Outside };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Inside: return "inside";
    case Verdict::Boundary: return "boundary";
    default: return "outside";
  }
}

/// Closedness knowledge about a represented set.  `ProvenNonclosed` is only
/// ever attached externally (by a certificate), never inferred here.
enum class Closedness { Unknown, ProvenClosed, ProvenNonclosed };

inline const char* to_string(Closedness c) {
  switch (c) {
    case Closedness::ProvenClosed: return "closed";
    case Closedness::ProvenNonclosed: return "nonclosed";
    default: return "unknown";
  }
}

template <class S>
struct MembershipCertificate {
  Verdict verdict = Verdict::Outside;
  /// Separating vector w with <w, x> < 0 and <w, .> >= 0 on the cone, when
  /// one is available for an Outside verdict.
  std::optional<VecT<S>> witness;
  /// For sum-of-duals cones: per-part summands adding to the queried point.
  std::vector<VecT<S>> decomposition;
  /// True when an Outside/undecided verdict rests on an exhausted numeric
  /// search rather than a closed-form test.
  bool search_exhausted = false;
  std::string note;
};

template <class S>
class ConeRep;

template <class S>
struct HRepCone {
  std::vector<VecT<S>> normals;  // cone = {x : <a, x> >= 0 for each a}
};

template <class S>
struct VRepCone {
  std::vector<VecT<S>> generators;  // cone = nonnegative combinations
};

struct OrthantCone {};

/// {x : x_n >= |(x_1..x_{n-1})|_2} in ambient dimension n.
struct SocCone {};

/// Symmetric positive semidefinite matrices of a given order, embedded by
/// the isometric vectorization (ambient dimension order*(order+1)/2).
struct PsdCone {
  std::size_t order = 0;
};

template <class S>
struct SubspaceCone {
  std::vector<VecT<S>> basis;  // row basis; empty basis = the zero cone
};

template <class S>
struct ProductCone {
  std::vector<ConeRep<S>> parts;  // ambient = sum of part ambients
};

template <class S>
struct IntersectionCone {
  std::vector<ConeRep<S>> parts;  // all parts share the ambient space
};

/// The set sum(dual(part) for part in parts); with `denotes_closure` set it
/// stands for the closure of that sum, which equals the dual of the
/// intersection of the parts.  The two differ exactly when the sum fails to
/// be closed.
template <class S>
struct DualSumCone {
  std::vector<ConeRep<S>> parts;
  Closedness closed = Closedness::Unknown;
  bool denotes_closure = false;
};

namespace detail {

template <class S>
struct PairCacheSlot {
  std::mutex m;
  std::optional<PolyPair<S>> pair;
};

}  // namespace detail

template <class S>
class ConeRep {
 public:
  using Variant = std::variant<HRepCone<S>, VRepCone<S>, OrthantCone, SocCone, PsdCone,
                               SubspaceCone<S>, ProductCone<S>, IntersectionCone<S>,
                               DualSumCone<S>>;

  ConeRep(std::size_t ambient_dim, Variant v)
      : ambient_(ambient_dim),
        v_(std::move(v)),
        cache_(std::make_shared<detail::PairCacheSlot<S>>()) {
    validate();
  }

  std::size_t ambient_dim() const { return ambient_; }
  const Variant& rep() const { return v_; }

  /// Canonical generator/halfspace pair; exact scalars and structurally
  /// polyhedral representations only.  Computed once and shared by copies.
  const PolyPair<S>& poly_pair() const;

 private:
  void validate() const;

  std::size_t ambient_ = 0;
  Variant v_;
  std::shared_ptr<detail::PairCacheSlot<S>> cache_;
};

// ---------------------------------------------------------------------------
// Factories.

template <class S>
inline ConeRep<S> make_hrep(std::size_t dim, std::vector<VecT<S>> normals) {
  return ConeRep<S>(dim, HRepCone<S>{std::move(normals)});
}

template <class S>
inline ConeRep<S> make_vrep(std::size_t dim, std::vector<VecT<S>> generators) {
  return ConeRep<S>(dim, VRepCone<S>{std::move(generators)});
}

template <class S>
inline ConeRep<S> make_orthant(std::size_t dim) {
  return ConeRep<S>(dim, OrthantCone{});
}

template <class S>
inline ConeRep<S> make_soc(std::size_t dim) {
  return ConeRep<S>(dim, SocCone{});
}

template <class S>
inline ConeRep<S> make_psd(std::size_t order) {
  return ConeRep<S>(svec_dim(order), PsdCone{order});
}

template <class S>
inline ConeRep<S> make_subspace(std::size_t dim, std::vector<VecT<S>> basis) {
  return ConeRep<S>(dim, SubspaceCone<S>{std::move(basis)});
}

template <class S>
inline ConeRep<S> make_zero_cone(std::size_t dim) {
  return make_subspace<S>(dim, {});
}

template <class S>
inline ConeRep<S> make_full_space(std::size_t dim) {
  std::vector<VecT<S>> basis;
  for (std::size_t i = 0; i < dim; ++i) basis.push_back(unit_vec<S>(dim, i));
  return make_subspace<S>(dim, std::move(basis));
}

template <class S>
inline ConeRep<S> make_product(std::vector<ConeRep<S>> parts) {
  std::size_t dim = 0;
  for (const auto& p : parts) dim += p.ambient_dim();
  return ConeRep<S>(dim, ProductCone<S>{std::move(parts)});
}

template <class S>
inline ConeRep<S> make_intersection(std::vector<ConeRep<S>> parts) {
  if (parts.empty()) throw InvalidInstance("intersection needs at least one part");
  const std::size_t dim = parts.front().ambient_dim();
  return ConeRep<S>(dim, IntersectionCone<S>{std::move(parts)});
}

template <class S>
inline ConeRep<S> make_dual_sum(std::vector<ConeRep<S>> parts,
                                Closedness closed = Closedness::Unknown,
                                bool denotes_closure = false) {
  if (parts.empty()) throw InvalidInstance("dual sum needs at least one part");
  const std::size_t dim = parts.front().ambient_dim();
  return ConeRep<S>(dim, DualSumCone<S>{std::move(parts), closed, denotes_closure});
}

// ---------------------------------------------------------------------------
// Structural queries.

template <class S>
inline bool is_structurally_polyhedral(const ConeRep<S>& c) {
  return std::visit(
      [&](const auto& rep) -> bool {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, HRepCone<S>> || std::is_same_v<T, VRepCone<S>> ||
                      std::is_same_v<T, OrthantCone> || std::is_same_v<T, SubspaceCone<S>>) {
          return true;
        } else if constexpr (std::is_same_v<T, SocCone>) {
          return c.ambient_dim() <= 2;  // half-line / absolute-value cone
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          return rep.order <= 1;
        } else if constexpr (std::is_same_v<T, ProductCone<S>> ||
                             std::is_same_v<T, IntersectionCone<S>> ||
                             std::is_same_v<T, DualSumCone<S>>) {
          for (const auto& p : rep.parts) {
            if (!is_structurally_polyhedral(p)) return false;
          }
          return true;
        }
      },
      c.rep());
}

template <class S>
inline void ConeRep<S>::validate() const {
  if (ambient_ == 0) throw InvalidInstance("cone ambient dimension must be positive");
  std::visit(
      [&](const auto& rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, HRepCone<S>>) {
          for (const auto& a : rep.normals) {
            if (a.size() != ambient_) throw DimensionError("halfspace normal dimension mismatch");
          }
        } else if constexpr (std::is_same_v<T, VRepCone<S>>) {
          for (const auto& g : rep.generators) {
            if (g.size() != ambient_) throw DimensionError("generator dimension mismatch");
          }
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          if (svec_dim(rep.order) != ambient_) {
            throw DimensionError("matrix-cone ambient dimension must be order*(order+1)/2");
          }
        } else if constexpr (std::is_same_v<T, SubspaceCone<S>>) {
          for (const auto& b : rep.basis) {
            if (b.size() != ambient_) throw DimensionError("subspace basis dimension mismatch");
          }
        } else if constexpr (std::is_same_v<T, ProductCone<S>>) {
          std::size_t total = 0;
          for (const auto& p : rep.parts) total += p.ambient_dim();
          if (total != ambient_) throw DimensionError("product ambient dimension mismatch");
        } else if constexpr (std::is_same_v<T, IntersectionCone<S>> ||
                             std::is_same_v<T, DualSumCone<S>>) {
          for (const auto& p : rep.parts) {
            if (p.ambient_dim() != ambient_) {
              throw DimensionError("combined cone parts must share the ambient space");
            }
          }
        }
      },
      v_);
}

// ---------------------------------------------------------------------------
// Canonical polyhedral pair.

namespace detail {

template <class S>
inline PolyPair<S> unit_pair(std::size_t dim) {
  PolyPair<S> p;
  p.dim = dim;
  // Lexicographic order, matching the canonical form of computed pairs.
  for (std::size_t i = dim; i-- > 0;) {
    p.gens.push_back(unit_vec<S>(dim, i));
    p.halfspaces.push_back(unit_vec<S>(dim, i));
  }
  return p;
}

template <class S>
inline std::vector<VecT<S>> padded(const std::vector<VecT<S>>& vs, std::size_t offset,
                                   std::size_t dim) {
  std::vector<VecT<S>> out;
  out.reserve(vs.size());
  for (const auto& v : vs) {
    VecT<S> w = zero_vec<S>(dim);
    for (std::size_t i = 0; i < v.size(); ++i) w[offset + i] = v[i];
    out.push_back(std::move(w));
  }
  return out;
}

template <class S>
inline PolyPair<S> compute_poly_pair_impl(const ConeRep<S>& c) {
  const std::size_t dim = c.ambient_dim();
  return std::visit(
      [&](const auto& rep) -> PolyPair<S> {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, HRepCone<S>>) {
          return pair_from_hrep(dim, rep.normals);
        } else if constexpr (std::is_same_v<T, VRepCone<S>>) {
          return pair_from_vrep(dim, rep.generators);
        } else if constexpr (std::is_same_v<T, OrthantCone>) {
          return unit_pair<S>(dim);
        } else if constexpr (std::is_same_v<T, SocCone>) {
          if (dim == 1) return unit_pair<S>(1);
          if (dim == 2) {
            std::vector<VecT<S>> rows = {
                {scalar_traits<S>::one(), scalar_traits<S>::one()},
                {-scalar_traits<S>::one(), scalar_traits<S>::one()}};
            PolyPair<S> p;
            p.dim = 2;
            p.gens = rows;
            p.halfspaces = rows;  // self-dual and symmetric in dimension two
            p.gens = normalize_dedup_sort(std::move(p.gens));
            p.halfspaces = normalize_dedup_sort(std::move(p.halfspaces));
            return p;
          }
          throw PolicyError("quadratic cone above dimension two is not polyhedral");
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          if (rep.order <= 1) return unit_pair<S>(dim);
          throw PolicyError("matrix cone above order one is not polyhedral");
        } else if constexpr (std::is_same_v<T, SubspaceCone<S>>) {
          PolyPair<S> p;
          p.dim = dim;
          ScalarPolicy exact = ScalarPolicy::exact();
          Subspace<S> sub = span_of(rep.basis, dim, exact);
          Subspace<S> comp = orthogonal_complement(sub, exact);
          for (const auto& b : sub.basis) {
            p.gens.push_back(b);
            p.gens.push_back(vec_neg(b));
          }
          for (const auto& cr : comp.basis) {
            p.halfspaces.push_back(cr);
            p.halfspaces.push_back(vec_neg(cr));
          }
          p.gens = normalize_dedup_sort(std::move(p.gens));
          p.halfspaces = normalize_dedup_sort(std::move(p.halfspaces));
          return p;
        } else if constexpr (std::is_same_v<T, ProductCone<S>>) {
          PolyPair<S> p;
          p.dim = dim;
          std::size_t off = 0;
          for (const auto& part : rep.parts) {
            const PolyPair<S>& pp = part.poly_pair();
            for (auto& g : padded(pp.gens, off, dim)) p.gens.push_back(std::move(g));
            for (auto& h : padded(pp.halfspaces, off, dim)) p.halfspaces.push_back(std::move(h));
            off += part.ambient_dim();
          }
          p.gens = normalize_dedup_sort(std::move(p.gens));
          p.halfspaces = normalize_dedup_sort(std::move(p.halfspaces));
          return p;
        } else if constexpr (std::is_same_v<T, IntersectionCone<S>>) {
          std::vector<VecT<S>> rows;
          for (const auto& part : rep.parts) {
            const PolyPair<S>& pp = part.poly_pair();
            rows.insert(rows.end(), pp.halfspaces.begin(), pp.halfspaces.end());
          }
          return pair_from_hrep(dim, rows);
        } else if constexpr (std::is_same_v<T, DualSumCone<S>>) {
          // Dual generators of each part are its halfspace normals.
          std::vector<VecT<S>> gens;
          for (const auto& part : rep.parts) {
            const PolyPair<S>& pp = part.poly_pair();
            gens.insert(gens.end(), pp.halfspaces.begin(), pp.halfspaces.end());
          }
          return pair_from_vrep(dim, gens);
        }
      },
      c.rep());
}

}  // namespace detail

template <class S>
inline const PolyPair<S>& ConeRep<S>::poly_pair() const {
  if constexpr (!scalar_traits<S>::is_exact) {
    throw PolicyError("canonical polyhedral pairs require the exact scalar");
  } else {
    std::lock_guard<std::mutex> lock(cache_->m);
    if (!cache_->pair) {
      cache_->pair = detail::compute_poly_pair_impl(*this);
    }
    return *cache_->pair;
  }
}

// ---------------------------------------------------------------------------
// Scalar conversion.

inline VecT<double> to_double_vec(const VecT<Rational>& v) {
  VecT<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = scalar_traits<Rational>::to_double(v[i]);
  return out;
}

inline std::vector<VecT<double>> to_double_vecs(const std::vector<VecT<Rational>>& vs) {
  std::vector<VecT<double>> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(to_double_vec(v));
  return out;
}

inline ConeRep<double> to_double_cone(const ConeRep<Rational>& c) {
  const std::size_t dim = c.ambient_dim();
  return std::visit(
      [&](const auto& rep) -> ConeRep<double> {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, HRepCone<Rational>>) {
          return make_hrep<double>(dim, to_double_vecs(rep.normals));
        } else if constexpr (std::is_same_v<T, VRepCone<Rational>>) {
          return make_vrep<double>(dim, to_double_vecs(rep.generators));
        } else if constexpr (std::is_same_v<T, OrthantCone>) {
          return make_orthant<double>(dim);
        } else if constexpr (std::is_same_v<T, SocCone>) {
          return make_soc<double>(dim);
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          return make_psd<double>(rep.order);
        } else if constexpr (std::is_same_v<T, SubspaceCone<Rational>>) {
          return make_subspace<double>(dim, to_double_vecs(rep.basis));
        } else {
          std::vector<ConeRep<double>> parts;
          for (const auto& p : rep.parts) parts.push_back(to_double_cone(p));
          if constexpr (std::is_same_v<T, ProductCone<Rational>>) {
            return make_product<double>(std::move(parts));
          } else if constexpr (std::is_same_v<T, IntersectionCone<Rational>>) {
            return make_intersection<double>(std::move(parts));
          } else {
            return make_dual_sum<double>(std::move(parts), rep.closed, rep.denotes_closure);
          }
        }
      },
      c.rep());
}

// ---------------------------------------------------------------------------
// Membership.

namespace detail {

template <class S>
inline void check_policy(const ScalarPolicy& policy) {
  if (scalar_traits<S>::is_exact != policy.is_exact()) {
    throw PolicyError("scalar type and scalar policy disagree");
  }
}

/// Stabilized margin of x against the quadratic cone; exact sign under the
/// exact scalar via x_n and x_n^2 - |xbar|^2.
inline double soc_margin(const VecT<double>& x) {
  SocLine l = make_soc_line(x, zero_vec<double>(x.size()));
  return l.margin(0.0);
}

enum class ExactPsdClass { Negative, SingularPsd, PositiveDefinite };

/// Element a + b*sqrt(2) of the quadratic field Q(sqrt 2); exact matrix-cone
/// tests need it because the isometric vectorization scales off-diagonal
/// entries by sqrt 2.
struct QRoot2 {
  Rational a = 0, b = 0;

  QRoot2 operator-(const QRoot2& o) const { return {a - o.a, b - o.b}; }
  QRoot2 operator*(const QRoot2& o) const { return {a * o.a + 2 * b * o.b, a * o.b + b * o.a}; }
  QRoot2 operator/(const QRoot2& o) const {
    const Rational den = o.a * o.a - 2 * o.b * o.b;  // nonzero whenever o != 0
    return {(a * o.a - 2 * b * o.b) / den, (b * o.a - a * o.b) / den};
  }
  int sign() const {
    const int sa = scalar_traits<Rational>::sign(a);
    const int sb = scalar_traits<Rational>::sign(b);
    if (sa == 0) return sb;
    if (sb == 0 || sa == sb) return sa;
    // Mixed signs: compare a^2 with 2 b^2 (never equal for nonzero rationals).
    const int d = scalar_traits<Rational>::sign(a * a - 2 * b * b);
    return sa > 0 ? d : -d;
  }
};

/// Diagonal pivot test on a symmetric matrix over an exact field: a negative
/// pivot disproves semidefiniteness, and a zero pivot is admissible only when
/// its entire Schur-complement row vanishes.
template <class F>
inline ExactPsdClass field_psd_class(std::vector<std::vector<F>> m) {
  const std::size_t n = m.size();
  bool singular = false;
  for (std::size_t k = 0; k < n; ++k) {
    const int pk = m[k][k].sign();
    if (pk < 0) return ExactPsdClass::Negative;
    if (pk == 0) {
      for (std::size_t j = k + 1; j < n; ++j) {
        if (m[k][j].sign() != 0) return ExactPsdClass::Negative;
      }
      singular = true;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k].sign() == 0) continue;
      const F f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] = m[i][j] - f * m[k][j];
    }
  }
  return singular ? ExactPsdClass::SingularPsd : ExactPsdClass::PositiveDefinite;
}

/// Symmetric Q(sqrt 2) matrix from an exact vectorized query point.
inline std::vector<std::vector<QRoot2>> qroot2_matrix(const VecT<Rational>& v, std::size_t order) {
  std::vector<std::vector<QRoot2>> m(order, std::vector<QRoot2>(order));
  std::size_t k = 0;
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i; j < order; ++j, ++k) {
      if (i == j) {
        m[i][j] = QRoot2{v[k], 0};
      } else {
        m[i][j] = m[j][i] = QRoot2{0, v[k] / 2};  // v_k / sqrt(2) = (v_k / 2) * sqrt(2)
      }
    }
  }
  return m;
}

template <class S>
inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Outside || b == Verdict::Outside) return Verdict::Outside;
  if (a == Verdict::Boundary || b == Verdict::Boundary) return Verdict::Boundary;
  return Verdict::Inside;
}

/// Hyperplane-side verdict from a list of exact or banded margins.
template <class S>
inline Verdict margins_verdict(const std::vector<S>& margins, const ScalarPolicy& policy,
                               double scale, std::size_t* violated) {
  Verdict v = Verdict::Inside;
  for (std::size_t j = 0; j < margins.size(); ++j) {
    const int s = sign_within_band(margins[j], policy, scale);
    if (s < 0) {
      if (violated) *violated = j;
      return Verdict::Outside;
    }
    if (s == 0) v = Verdict::Boundary;
  }
  return v;
}

}  // namespace detail

template <class S>
MembershipCertificate<S> member(const ConeRep<S>& c, const VecT<S>& x, const ScalarPolicy& policy);

namespace detail {

/// Parameters of a one-dimensional search y - lambda*d against the dual of a
/// sum part.  `d` may be zero (no subspace part).
template <class S>
struct SumLineProblem {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  const ConeRep<S>* base = nullptr;  // part whose dual is the non-flat summand
  VecT<S> d;                         // direction spanning the other summand
  std::size_t base_index = npos;
  std::size_t dir_index = npos;
};

/// Split a dual-sum cone into (base part, one-dimensional direction) when the
/// floating search supports it.
template <class S>
inline SumLineProblem<S> split_dual_sum(const DualSumCone<S>& rep, std::size_t dim,
                                        const ScalarPolicy& policy) {
  SumLineProblem<S> out;
  out.d = zero_vec<S>(dim);
  for (std::size_t p = 0; p < rep.parts.size(); ++p) {
    const auto& part = rep.parts[p];
    if (const auto* sub = std::get_if<SubspaceCone<S>>(&part.rep())) {
      Subspace<S> s = span_of(sub->basis, dim, policy);
      Subspace<S> comp = orthogonal_complement(s, policy);
      if (comp.dim() == 0) continue;  // dual summand {0}
      if (comp.dim() == 1 && out.dir_index == SumLineProblem<S>::npos) {
        out.d = normalize_ray(comp.basis.front());
        out.dir_index = p;
        continue;
      }
      throw PolicyError(
          "sum-of-duals search supports at most one subspace part of codimension one");
    }
    if (out.base != nullptr) {
      throw PolicyError("sum-of-duals search supports one non-flat part");
    }
    out.base = &part;
    out.base_index = p;
  }
  return out;
}

/// Decomposition aligned with the parts order: the base part receives
/// x - lambda*d, the subspace part lambda*d.
inline std::vector<VecT<double>> aligned_decomposition(const SumLineProblem<double>& prob,
                                                       std::size_t nparts, const VecT<double>& x,
                                                       double lambda) {
  std::vector<VecT<double>> out(nparts, zero_vec<double>(x.size()));
  const VecT<double> flat = vec_scale(prob.d, lambda);
  const VecT<double> rest = vec_sub(x, flat);
  if (prob.base_index != SumLineProblem<double>::npos) out[prob.base_index] = rest;
  if (prob.dir_index != SumLineProblem<double>::npos) out[prob.dir_index] = flat;
  return out;
}

/// Margin-family interval for y - t*d constrained to lie in dual(base).
template <class S>
inline LineInterval<double> dual_base_line_interval(const ConeRep<S>* base,
                                                    const VecT<double>& y, const VecT<double>& d,
                                                    const ScalarPolicy& policy) {
  if (base == nullptr) {
    // Dual of nothing: the summand is {0}; treat as the full-space dual of
    // the full space, i.e. membership reduces to y - t*d == 0.
    std::vector<double> alpha, beta;
    for (std::size_t i = 0; i < y.size(); ++i) {
      alpha.push_back(y[i]);
      beta.push_back(d[i]);
      alpha.push_back(-y[i]);
      beta.push_back(-d[i]);
    }
    return affine_line_interval(alpha, beta, policy);
  }
  return std::visit(
      [&](const auto& rep) -> LineInterval<double> {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, VRepCone<double>>) {
          // dual = {z : <g, z> >= 0 for each generator}
          std::vector<double> alpha, beta;
          for (const auto& g : rep.generators) {
            alpha.push_back(dot(g, y));
            beta.push_back(dot(g, d));
          }
          return affine_line_interval(alpha, beta, policy);
        } else if constexpr (std::is_same_v<T, OrthantCone>) {
          std::vector<double> alpha(y.begin(), y.end()), beta(d.begin(), d.end());
          return affine_line_interval(alpha, beta, policy);
        } else if constexpr (std::is_same_v<T, SocCone>) {
          return soc_line_interval(y, d, policy);
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          return psd_line_interval(y, d, policy);
        } else if constexpr (std::is_same_v<T, SubspaceCone<double>>) {
          // dual = orthogonal complement: <b, z> == 0 for basis rows b.
          std::vector<double> alpha, beta;
          for (const auto& b : rep.basis) {
            alpha.push_back(dot(b, y));
            beta.push_back(dot(b, d));
            alpha.push_back(-dot(b, y));
            beta.push_back(-dot(b, d));
          }
          return affine_line_interval(alpha, beta, policy);
        } else {
          throw PolicyError(
              "sum-of-duals search supports generator cones, orthants, quadratic cones, "
              "matrix cones and subspaces as the non-flat part");
        }
      },
      base->rep());
}

MembershipCertificate<double> member_dual_sum_float(const ConeRep<double>& c,
                                                    const DualSumCone<double>& rep,
                                                    const VecT<double>& x,
                                                    const ScalarPolicy& policy);

template <class S>
MembershipCertificate<S> member_dual_sum_exact(const ConeRep<S>& c, const DualSumCone<S>& rep,
                                               const VecT<S>& x, const ScalarPolicy& policy);

}  // namespace detail

template <class S>
inline MembershipCertificate<S> member(const ConeRep<S>& c, const VecT<S>& x,
                                       const ScalarPolicy& policy) {
  detail::check_policy<S>(policy);
  if (x.size() != c.ambient_dim()) throw DimensionError("membership query dimension mismatch");
  const double scale = scalar_traits<S>::is_exact ? 0.0 : norm2_double(x);
  MembershipCertificate<S> out;
  std::visit(
      [&](const auto& rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, HRepCone<S>>) {
          std::vector<S> margins;
          for (const auto& a : rep.normals) margins.push_back(dot(a, x));
          std::size_t bad = 0;
          out.verdict = detail::margins_verdict(margins, policy, scale, &bad);
          if (out.verdict == Verdict::Outside) out.witness = rep.normals[bad];
        } else if constexpr (std::is_same_v<T, VRepCone<S>>) {
          if constexpr (scalar_traits<S>::is_exact) {
            std::vector<S> margins;
            const auto& hs = c.poly_pair().halfspaces;
            for (const auto& a : hs) margins.push_back(dot(a, x));
            std::size_t bad = 0;
            out.verdict = detail::margins_verdict(margins, policy, scale, &bad);
            if (out.verdict == Verdict::Outside) out.witness = hs[bad];
          } else {
            throw PolicyError(
                "membership for generator representations requires the exact policy");
          }
        } else if constexpr (std::is_same_v<T, OrthantCone>) {
          std::size_t bad = 0;
          out.verdict = detail::margins_verdict(x, policy, scale, &bad);
          if (out.verdict == Verdict::Outside) out.witness = unit_vec<S>(x.size(), bad);
        } else if constexpr (std::is_same_v<T, SocCone>) {
          const std::size_t n = x.size();
          if constexpr (scalar_traits<S>::is_exact) {
            // x_n >= |xbar| iff x_n >= 0 and x_n^2 - |xbar|^2 >= 0; both
            // signs are exact in rationals even though |xbar| is not.
            S q = x[n - 1] * x[n - 1];
            for (std::size_t i = 0; i + 1 < n; ++i) q -= x[i] * x[i];
            const int sq = scalar_traits<S>::sign(q);
            const int sa = scalar_traits<S>::sign(x[n - 1]);
            if (sa < 0 || sq < 0) {
              out.verdict = Verdict::Outside;
              if (sa < 0) out.witness = unit_vec<S>(n, n - 1);
            } else {
              out.verdict = (sq > 0 && sa > 0) ? Verdict::Inside : Verdict::Boundary;
            }
          } else {
            const double m = detail::soc_margin(x);
            const double band = policy.band(scale);
            out.verdict = m > band    ? Verdict::Inside
                          : m < -band ? Verdict::Outside
                                      : Verdict::Boundary;
            if (out.verdict == Verdict::Outside) {
              // (-xbar, |xbar|) lies on the cone boundary and scores
              // |xbar| * margin(x) < 0 against x.
              VecT<S> w = zero_vec<S>(n);
              double nb = 0.0;
              for (std::size_t i = 0; i + 1 < n; ++i) {
                w[i] = -x[i];
                nb += x[i] * x[i];
              }
              w[n - 1] = nb > 0.0 ? std::sqrt(nb) : 1.0;
              out.witness = w;
            }
          }
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          if constexpr (scalar_traits<S>::is_exact) {
            switch (detail::field_psd_class(detail::qroot2_matrix(x, rep.order))) {
              case detail::ExactPsdClass::Negative: out.verdict = Verdict::Outside; break;
              case detail::ExactPsdClass::SingularPsd: out.verdict = Verdict::Boundary; break;
              case detail::ExactPsdClass::PositiveDefinite: out.verdict = Verdict::Inside; break;
            }
          } else {
            const auto m = smat(x);
            const double ev = eigmin_symmetric(m);
            const double band = policy.band(scale);
            out.verdict = ev > band    ? Verdict::Inside
                          : ev < -band ? Verdict::Outside
                                       : Verdict::Boundary;
            if (out.verdict == Verdict::Outside) {
              // Rank-one certificate from the most negative eigenvector.
              const auto n = static_cast<Eigen::Index>(m.size());
              Eigen::MatrixXd em(n, n);
              for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = 0; j < n; ++j) {
                  em(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                }
              }
              Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(em);
              const auto v = es.eigenvectors().col(0);
              std::vector<VecT<double>> vv(m.size(), VecT<double>(m.size()));
              for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = 0; j < n; ++j) {
                  vv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v(i) * v(j);
                }
              }
              out.witness = svec(vv);
            }
          }
        } else if constexpr (std::is_same_v<T, SubspaceCone<S>>) {
          Subspace<S> sub = span_of(rep.basis, c.ambient_dim(), policy);
          if (subspace_contains(sub, x, policy)) {
            out.verdict = sub.is_full() ? Verdict::Inside : Verdict::Boundary;
          } else {
            out.verdict = Verdict::Outside;
            VecT<S> w = vec_sub(x, project_onto(x, sub));
            out.witness = vec_neg(w);  // <w_out, x> < 0 and == 0 on the subspace
          }
        } else if constexpr (std::is_same_v<T, ProductCone<S>>) {
          out.verdict = Verdict::Inside;
          std::size_t off = 0;
          for (const auto& part : rep.parts) {
            VecT<S> slice(x.begin() + static_cast<std::ptrdiff_t>(off),
                          x.begin() + static_cast<std::ptrdiff_t>(off + part.ambient_dim()));
            auto sub = member(part, slice, policy);
            if (sub.verdict == Verdict::Outside && sub.witness) {
              VecT<S> w = zero_vec<S>(c.ambient_dim());
              for (std::size_t i = 0; i < sub.witness->size(); ++i) w[off + i] = (*sub.witness)[i];
              out.witness = std::move(w);
            }
            out.search_exhausted = out.search_exhausted || sub.search_exhausted;
            out.verdict = detail::combine<S>(out.verdict, sub.verdict);
            off += part.ambient_dim();
          }
        } else if constexpr (std::is_same_v<T, IntersectionCone<S>>) {
          out.verdict = Verdict::Inside;
          for (const auto& part : rep.parts) {
            auto sub = member(part, x, policy);
            if (sub.verdict == Verdict::Outside && sub.witness) out.witness = sub.witness;
            out.search_exhausted = out.search_exhausted || sub.search_exhausted;
            out.verdict = detail::combine<S>(out.verdict, sub.verdict);
          }
        } else if constexpr (std::is_same_v<T, DualSumCone<S>>) {
          if constexpr (scalar_traits<S>::is_exact) {
            out = detail::member_dual_sum_exact(c, rep, x, policy);
          } else {
            out = detail::member_dual_sum_float(c, rep, x, policy);
          }
        }
      },
      c.rep());
  return out;
}

namespace detail {

template <class S>
inline MembershipCertificate<S> member_dual_sum_exact(const ConeRep<S>& c,
                                                      const DualSumCone<S>& rep,
                                                      const VecT<S>& x,
                                                      const ScalarPolicy& policy) {
  if (!is_structurally_polyhedral(c)) {
    throw PolicyError("exact sum-of-duals membership requires polyhedral parts");
  }
  MembershipCertificate<S> out;
  const auto& pair = c.poly_pair();
  std::vector<S> margins;
  for (const auto& a : pair.halfspaces) margins.push_back(dot(a, x));
  std::size_t bad = 0;
  out.verdict = margins_verdict(margins, policy, 0.0, &bad);
  if (out.verdict == Verdict::Outside) {
    out.witness = pair.halfspaces[bad];
    return out;
  }
  // Recover a per-part decomposition by exact feasibility over the stacked
  // dual generators of the parts.
  std::vector<std::vector<S>> cols;
  std::vector<std::size_t> owner;
  for (std::size_t p = 0; p < rep.parts.size(); ++p) {
    const auto& hs = rep.parts[p].poly_pair().halfspaces;
    for (const auto& g : hs) {
      cols.push_back(g);
      owner.push_back(p);
    }
  }
  const std::size_t dim = c.ambient_dim();
  std::vector<VecT<S>> a(dim, VecT<S>(cols.size(), scalar_traits<S>::zero()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) a[i][j] = cols[j][i];
  }
  auto combo = nonnegative_solve(a, x, cols.size());
  if (!combo) {
    throw InternalInvariantViolation("halfspace test and generator test disagree on a sum");
  }
  out.decomposition.assign(rep.parts.size(), zero_vec<S>(dim));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      out.decomposition[owner[j]][i] += (*combo)[j] * cols[j][i];
    }
  }
  return out;
}

inline MembershipCertificate<double> member_dual_sum_float(const ConeRep<double>& c,
                                                           const DualSumCone<double>& rep,
                                                           const VecT<double>& x,
                                                           const ScalarPolicy& policy) {
  MembershipCertificate<double> out;
  auto prob = split_dual_sum(rep, c.ambient_dim(), policy);
  const LineInterval<double> li = dual_base_line_interval(prob.base, x, prob.d, policy);
  const double band = policy.band(std::max(1.0, norm2_double(x)));
  const double sup_total = std::max({li.sup_margin, li.limit_neg, li.limit_pos});

  if (rep.denotes_closure) {
    if (sup_total > band) {
      out.verdict = Verdict::Inside;
    } else if (sup_total >= -band && !li.undecided) {
      out.verdict = Verdict::Boundary;
    } else if (li.undecided) {
      out.verdict = Verdict::Outside;
      out.search_exhausted = true;
      out.note = "closure verdict rests on an exhausted numeric search";
    } else {
      out.verdict = Verdict::Outside;
    }
    if (out.verdict != Verdict::Outside && li.feasible) {
      out.decomposition = detail::aligned_decomposition(prob, rep.parts.size(), x, li.witness_t);
    }
    if (out.verdict != Verdict::Outside && !li.feasible) {
      out.note = "membership holds only in the limit; no finite decomposition exists";
    }
  } else {
    if (li.feasible) {
      out.verdict = li.sup_margin > band ? Verdict::Inside : Verdict::Boundary;
      out.decomposition = detail::aligned_decomposition(prob, rep.parts.size(), x, li.witness_t);
    } else {
      out.verdict = Verdict::Outside;
      out.search_exhausted = li.undecided;
      if (std::max(li.limit_neg, li.limit_pos) >= -band) {
        out.note = "point lies in the closure of the sum but admits no finite decomposition";
      }
    }
  }

  // Certified separator when the direction is tangent to a quadratic base:
  // the closure is the halfspace of the reflected boundary ray.
  if (out.verdict == Verdict::Outside && prob.base != nullptr &&
      std::holds_alternative<SocCone>(prob.base->rep()) && !is_zero_vec(prob.d)) {
    const std::size_t n = c.ambient_dim();
    VecT<double> dir = prob.d;
    const double m_pos = soc_margin(dir);
    VecT<double> neg = vec_neg(dir);
    const double m_neg = soc_margin(neg);
    const double dband = policy.band(norm2_double(dir));
    const VecT<double>* bd = nullptr;
    if (std::abs(m_pos) <= dband) bd = &dir;
    if (std::abs(m_neg) <= dband) bd = &neg;
    if (bd != nullptr) {
      VecT<double> w(n);
      for (std::size_t i = 0; i + 1 < n; ++i) w[i] = -(*bd)[i];
      w[n - 1] = (*bd)[n - 1];
      if (dot(w, x) < -policy.band(norm2_double(w) * norm2_double(x))) out.witness = w;
    }
  }
  return out;
}

}  // namespace detail

template <class S>
inline bool interior_member(const ConeRep<S>& c, const VecT<S>& x, const ScalarPolicy& policy) {
  return member(c, x, policy).verdict == Verdict::Inside;
}

// ---------------------------------------------------------------------------
// Duality (representation level; exact for every family).

template <class S>
inline ConeRep<S> dual(const ConeRep<S>& c, const ScalarPolicy& policy) {
  detail::check_policy<S>(policy);
  const std::size_t dim = c.ambient_dim();
  return std::visit(
      [&](const auto& rep) -> ConeRep<S> {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, HRepCone<S>>) {
          return make_vrep<S>(dim, rep.normals);
        } else if constexpr (std::is_same_v<T, VRepCone<S>>) {
          return make_hrep<S>(dim, rep.generators);
        } else if constexpr (std::is_same_v<T, OrthantCone> || std::is_same_v<T, SocCone> ||
                             std::is_same_v<T, PsdCone>) {
          return c;  // self-dual families
        } else if constexpr (std::is_same_v<T, SubspaceCone<S>>) {
          Subspace<S> s = span_of(rep.basis, dim, policy);
          Subspace<S> comp = orthogonal_complement(s, policy);
          return make_subspace<S>(dim, comp.basis);
        } else if constexpr (std::is_same_v<T, ProductCone<S>>) {
          std::vector<ConeRep<S>> parts;
          for (const auto& p : rep.parts) parts.push_back(dual(p, policy));
          return make_product<S>(std::move(parts));
        } else if constexpr (std::is_same_v<T, IntersectionCone<S>>) {
          // Dual of an intersection: the closed sum of the part duals.
          const bool poly = is_structurally_polyhedral(c);
          return make_dual_sum<S>(rep.parts, poly ? Closedness::ProvenClosed : Closedness::Unknown,
                                  /*denotes_closure=*/true);
        } else if constexpr (std::is_same_v<T, DualSumCone<S>>) {
          // Dual of a (closed or not) sum of duals: intersection of the parts.
          return make_intersection<S>(rep.parts);
        }
      },
      c.rep());
}

// ---------------------------------------------------------------------------
// Generated subspace (span of the cone).

namespace detail {

/// Face of the quadratic cone cut by the hyperplane orthogonal to n (for n in
/// the cone or its negative): {0}, a boundary ray, or the whole hyperplane.
enum class SocFaceKind { Zero, Ray, Hyperplane, Full };

struct SocFace {
  SocFaceKind kind = SocFaceKind::Full;
  VecT<double> ray;  // populated for Ray
};

inline SocFace soc_hyperplane_face(const VecT<double>& n, const ScalarPolicy& policy) {
  SocFace f;
  const double nn = norm2_double(n);
  if (nn <= policy.band(1.0)) {
    f.kind = SocFaceKind::Full;
    return f;
  }
  const double band = policy.band(nn);
  const double mp = soc_margin(n);
  VecT<double> neg = vec_neg(n);
  const double mn = soc_margin(neg);
  if (mp > band || mn > band) {
    f.kind = SocFaceKind::Zero;  // strict separator: only the apex survives
    return f;
  }
  if (std::abs(mp) <= band || std::abs(mn) <= band) {
    const VecT<double>& b = std::abs(mp) <= band ? n : neg;
    VecT<double> r(n.size());
    for (std::size_t i = 0; i + 1 < n.size(); ++i) r[i] = -b[i];
    r[n.size() - 1] = b[n.size() - 1];
    f.kind = SocFaceKind::Ray;
    f.ray = std::move(r);
    return f;
  }
  f.kind = SocFaceKind::Hyperplane;
  return f;
}

/// The two boundary rays of a three-dimensional quadratic-cone slice by the
/// hyperplane orthogonal to n, when the slice is a proper planar sector.
inline std::optional<std::pair<VecT<double>, VecT<double>>> soc3_slice_rays(
    const VecT<double>& n) {
  if (n.size() != 3) return std::nullopt;
  const double r = std::hypot(n[0], n[1]);
  if (r == 0.0) return std::nullopt;
  const double ratio = -n[2] / r;
  if (ratio < -1.0 || ratio > 1.0) return std::nullopt;
  const double phi = std::atan2(n[1], n[0]);
  const double off = std::acos(ratio);
  VecT<double> a = {std::cos(phi + off), std::sin(phi + off), 1.0};
  VecT<double> b = {std::cos(phi - off), std::sin(phi - off), 1.0};
  return std::make_pair(std::move(a), std::move(b));
}

/// Decompose a two-part float intersection into (structured cone, hyperplane
/// normal); nullopt when the shape is unsupported.
struct ConeHyperplane {
  const ConeRep<double>* cone = nullptr;
  VecT<double> normal;  // zero when the subspace part is the full space
};

inline std::optional<ConeHyperplane> split_cone_hyperplane(const IntersectionCone<double>& rep,
                                                           std::size_t dim,
                                                           const ScalarPolicy& policy) {
  ConeHyperplane out;
  out.normal = zero_vec<double>(dim);
  bool have_normal = false;
  for (const auto& part : rep.parts) {
    if (const auto* sub = std::get_if<SubspaceCone<double>>(&part.rep())) {
      Subspace<double> s = span_of(sub->basis, dim, policy);
      Subspace<double> comp = orthogonal_complement(s, policy);
      if (comp.dim() == 0) continue;
      if (comp.dim() == 1 && !have_normal) {
        out.normal = comp.basis.front();
        have_normal = true;
        continue;
      }
      return std::nullopt;
    }
    if (out.cone != nullptr) return std::nullopt;
    out.cone = &part;
  }
  if (out.cone == nullptr) return std::nullopt;
  return out;
}

}  // namespace detail

template <class S>
inline Subspace<S> generated_subspace(const ConeRep<S>& c, const ScalarPolicy& policy) {
  detail::check_policy<S>(policy);
  const std::size_t dim = c.ambient_dim();
  if constexpr (scalar_traits<S>::is_exact) {
    if (is_structurally_polyhedral(c)) {
      return span_of(c.poly_pair().gens, dim, policy);
    }
  }
  return std::visit(
      [&](const auto& rep) -> Subspace<S> {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, SocCone> || std::is_same_v<T, PsdCone> ||
                      std::is_same_v<T, OrthantCone>) {
          return full_subspace<S>(dim);  // solid cones span everything
        } else if constexpr (std::is_same_v<T, SubspaceCone<S>>) {
          return span_of(rep.basis, dim, policy);
        } else if constexpr (std::is_same_v<T, VRepCone<S>>) {
          return span_of(rep.generators, dim, policy);
        } else if constexpr (std::is_same_v<T, ProductCone<S>>) {
          std::vector<VecT<S>> rows;
          std::size_t off = 0;
          for (const auto& part : rep.parts) {
            Subspace<S> s = generated_subspace(part, policy);
            for (const auto& b : s.basis) {
              VecT<S> w = zero_vec<S>(dim);
              for (std::size_t i = 0; i < b.size(); ++i) w[off + i] = b[i];
              rows.push_back(std::move(w));
            }
            off += part.ambient_dim();
          }
          return span_of(rows, dim, policy);
        } else if constexpr (std::is_same_v<T, DualSumCone<S>>) {
          if constexpr (!scalar_traits<S>::is_exact) {
            auto prob = detail::split_dual_sum(rep, dim, policy);
            std::vector<VecT<double>> rows;
            if (!is_zero_vec(prob.d)) rows.push_back(prob.d);
            if (prob.base != nullptr) {
              Subspace<double> s = generated_subspace(dual(*prob.base, policy), policy);
              rows.insert(rows.end(), s.basis.begin(), s.basis.end());
            }
            return span_of(rows, dim, policy);
          } else {
            throw PolicyError("span of a non-polyhedral sum requires the float policy");
          }
        } else if constexpr (std::is_same_v<T, IntersectionCone<S>>) {
          if constexpr (!scalar_traits<S>::is_exact) {
            auto split = detail::split_cone_hyperplane(rep, dim, policy);
            if (split && is_zero_vec(split->normal)) {
              return generated_subspace(*split->cone, policy);
            }
            if (split && std::holds_alternative<SocCone>(split->cone->rep())) {
              auto face = detail::soc_hyperplane_face(split->normal, policy);
              switch (face.kind) {
                case detail::SocFaceKind::Zero: return Subspace<double>{dim, {}};
                case detail::SocFaceKind::Ray:
                  return span_of(std::vector<VecT<double>>{face.ray}, dim, policy);
                case detail::SocFaceKind::Full: return full_subspace<double>(dim);
                case detail::SocFaceKind::Hyperplane: {
                  Subspace<double> nspan =
                      span_of(std::vector<VecT<double>>{split->normal}, dim, policy);
                  return orthogonal_complement(nspan, policy);
                }
              }
            }
            throw PolicyError(
                "span of a float intersection is supported for one structured cone and one "
                "hyperplane");
          } else {
            throw PolicyError("span of a non-polyhedral intersection requires the float policy");
          }
        } else {
          // HRep under float: interior structure is not derivable without
          // exact arithmetic.
          throw PolicyError("span of a halfspace representation requires the exact policy");
        }
      },
      c.rep());
}

// ---------------------------------------------------------------------------
// Pointedness within the span.

template <class S>
inline bool is_pointed_in_span(const ConeRep<S>& c, const ScalarPolicy& policy) {
  detail::check_policy<S>(policy);
  const std::size_t dim = c.ambient_dim();
  if constexpr (scalar_traits<S>::is_exact) {
    if (is_structurally_polyhedral(c)) {
      // Lineality = kernel of the halfspace normals.
      const auto& hs = c.poly_pair().halfspaces;
      return kernel_basis(hs, dim).empty();
    }
  }
  return std::visit(
      [&](const auto& rep) -> bool {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, SocCone> || std::is_same_v<T, PsdCone> ||
                      std::is_same_v<T, OrthantCone>) {
          return true;
        } else if constexpr (std::is_same_v<T, SubspaceCone<S>>) {
          return span_of(rep.basis, dim, policy).dim() == 0;
        } else if constexpr (std::is_same_v<T, VRepCone<S>>) {
          if constexpr (scalar_traits<S>::is_exact) {
            return kernel_basis(c.poly_pair().halfspaces, dim).empty();
          } else {
            throw PolicyError("pointedness of generator cones requires the exact policy");
          }
        } else if constexpr (std::is_same_v<T, ProductCone<S>>) {
          for (const auto& p : rep.parts) {
            if (!is_pointed_in_span(p, policy)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, IntersectionCone<S>>) {
          // Any pointed part forces a trivial lineality space.
          for (const auto& p : rep.parts) {
            bool pointed = false;
            try {
              pointed = is_pointed_in_span(p, policy);
            } catch (const PolicyError&) {
              continue;
            }
            if (pointed) return true;
          }
          throw PolicyError("pointedness of this intersection is not derivable under float");
        } else if constexpr (std::is_same_v<T, DualSumCone<S>>) {
          if constexpr (!scalar_traits<S>::is_exact) {
            auto prob = detail::split_dual_sum(rep, dim, policy);
            if (!is_zero_vec(prob.d)) return false;  // the sum absorbs a line
            if (prob.base == nullptr) return true;
            return is_pointed_in_span(dual(*prob.base, policy), policy);
          } else {
            throw PolicyError("pointedness of a non-polyhedral sum requires the float policy");
          }
        } else {
          throw PolicyError("pointedness of halfspace representations requires the exact policy");
        }
      },
      c.rep());
}

// ---------------------------------------------------------------------------
// Recession direction inside a level hyperplane.

/// A nonzero direction in the cone with <h, delta> = 0 and <q, delta> < 0
/// (strict) or <= 0 (non-strict), when one exists.  Assumes h lies in the
/// dual of the cone, so the zero level set is the face flagged by the
/// generators orthogonal to h.
template <class S>
inline std::optional<VecT<S>> recession_ray_in_level(const ConeRep<S>& c, const VecT<S>& h,
                                                     const VecT<S>& q, bool strict,
                                                     const ScalarPolicy& policy) {
  detail::check_policy<S>(policy);
  if (h.size() != c.ambient_dim() || q.size() != c.ambient_dim()) {
    throw DimensionError("level-set recession query dimension mismatch");
  }
  if constexpr (scalar_traits<S>::is_exact) {
    if (!is_structurally_polyhedral(c)) {
      throw PolicyError("exact recession search requires polyhedral cones");
    }
    for (const auto& g : c.poly_pair().gens) {
      if (scalar_traits<S>::sign(dot(h, g)) != 0) continue;
      const int sq = scalar_traits<S>::sign(dot(q, g));
      if (strict ? sq < 0 : sq <= 0) return g;
    }
    return std::nullopt;
  } else {
    const double hs = norm2_double(h);
    auto level_ok = [&](const VecT<S>& r) {
      return std::abs(dot(h, r)) <= policy.band(hs * norm2_double(r));
    };
    auto q_ok = [&](const VecT<S>& r) {
      const double v = dot(q, r);
      const double band = policy.band(norm2_double(q) * norm2_double(r));
      return strict ? v < -band : v <= band;
    };
    auto consider = [&](const VecT<S>& r) -> std::optional<VecT<S>> {
      if (!is_zero_vec(r) && level_ok(r) && q_ok(r)) return r;
      return std::nullopt;
    };
    const auto& rep = c.rep();
    if (std::holds_alternative<SocCone>(rep)) {
      auto face = detail::soc_hyperplane_face(h, policy);
      if (face.kind == detail::SocFaceKind::Ray) return consider(face.ray);
      if (face.kind == detail::SocFaceKind::Zero) return std::nullopt;
      // h not in the dual cone: fall through to unsupported.
      throw PolicyError("recession search expects the level functional inside the dual cone");
    }
    if (std::holds_alternative<OrthantCone>(rep)) {
      for (std::size_t i = 0; i < c.ambient_dim(); ++i) {
        auto r = consider(unit_vec<S>(c.ambient_dim(), i));
        if (r) return r;
      }
      return std::nullopt;
    }
    if (const auto* inter = std::get_if<IntersectionCone<double>>(&rep)) {
      auto split = detail::split_cone_hyperplane(*inter, c.ambient_dim(), policy);
      if (split && is_zero_vec(split->normal)) {
        return recession_ray_in_level(*split->cone, h, q, strict, policy);
      }
      if (split && std::holds_alternative<SocCone>(split->cone->rep())) {
        auto face = detail::soc_hyperplane_face(split->normal, policy);
        switch (face.kind) {
          case detail::SocFaceKind::Zero: return std::nullopt;
          case detail::SocFaceKind::Ray: return consider(face.ray);
          case detail::SocFaceKind::Full: {
            auto hface = detail::soc_hyperplane_face(h, policy);
            if (hface.kind == detail::SocFaceKind::Ray) return consider(hface.ray);
            return std::nullopt;
          }
          case detail::SocFaceKind::Hyperplane: {
            auto rays = detail::soc3_slice_rays(split->normal);
            if (rays) {
              if (auto r = consider(rays->first)) return r;
              if (auto r = consider(rays->second)) return r;
              return std::nullopt;
            }
            throw PolicyError("float recession search inside a sliced cone needs dimension three");
          }
        }
      }
      throw PolicyError("float recession search supports one structured cone and one hyperplane");
    }
    throw PolicyError("float recession search is not available for this representation");
  }
}

/// Sum of the canonical generators: a relative-interior point of an exact
/// polyhedral cone (the origin for subspaces).
template <class S>
inline VecT<S> relative_interior_point(const ConeRep<S>& c) {
  static_assert(scalar_traits<S>::is_exact, "relative interior points use the exact path");
  VecT<S> x = zero_vec<S>(c.ambient_dim());
  for (const auto& g : c.poly_pair().gens) x = vec_add(x, g);
  return x;
}

}  // namespace conedual
