#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "conedual/conditions.hpp"
#include "conedual/solve.hpp"

namespace conedual {

/// Dense linear map between two inner-product spaces, stored row-major:
/// `rows[i][j]` is the coefficient of domain coordinate j in codomain
/// coordinate i.
template <class S>
struct LinearMap {
  std::size_t domain_dim = 0;
  std::size_t codomain_dim = 0;
  std::vector<VecT<S>> rows;
};

template <class S>
inline LinearMap<S> make_linear_map(std::size_t domain_dim, std::size_t codomain_dim,
                                    std::vector<VecT<S>> rows) {
  if (domain_dim == 0 || codomain_dim == 0) {
    throw InvalidInstance("linear map dimensions must be positive");
  }
  if (rows.size() != codomain_dim) throw DimensionError("linear map row count mismatch");
  for (const auto& r : rows) {
    if (r.size() != domain_dim) throw DimensionError("linear map row length mismatch");
  }
  return LinearMap<S>{domain_dim, codomain_dim, std::move(rows)};
}

template <class S>
inline VecT<S> apply_map(const LinearMap<S>& m, const VecT<S>& u) {
  if (u.size() != m.domain_dim) {
    throw DimensionError("linear map applied to a vector of the wrong size");
  }
  VecT<S> out = zero_vec<S>(m.codomain_dim);
  for (std::size_t i = 0; i < m.codomain_dim; ++i) out[i] = dot(m.rows[i], u);
  return out;
}

template <class S>
inline LinearMap<S> adjoint(const LinearMap<S>& m) {
  std::vector<VecT<S>> rows(m.domain_dim, zero_vec<S>(m.codomain_dim));
  for (std::size_t i = 0; i < m.codomain_dim; ++i) {
    for (std::size_t j = 0; j < m.domain_dim; ++j) rows[j][i] = m.rows[i][j];
  }
  return LinearMap<S>{m.codomain_dim, m.domain_dim, std::move(rows)};
}

namespace detail {

template <class S>
inline LinearMap<S> negate_map(LinearMap<S> m) {
  for (auto& r : m.rows) r = vec_neg(r);
  return m;
}

template <class S>
inline bool has_dual_sum(const ConeRep<S>& c) {
  return std::visit(
      [](const auto& rep) -> bool {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, DualSumCone<S>>) {
          return true;
        } else if constexpr (std::is_same_v<T, ProductCone<S>> ||
                             std::is_same_v<T, IntersectionCone<S>>) {
          for (const auto& p : rep.parts) {
            if (has_dual_sum(p)) return true;
          }
          return false;
        } else {
          return false;
        }
      },
      c.rep());
}

}  // namespace detail

/// Data of the affinely-constrained conic pair over two spaces: minimize
/// <c,u> over u in Jp with A u - b in Jd, against its sup-form partner over
/// the dual cones.  The optimal values live in the converted instances'
/// SolveOutcomes.
template <class S>
struct SymmetricInstance {
  std::size_t primal_dim = 0;  // space of u and c
  std::size_t dual_dim = 0;    // space of A u, b, and the dual variable
  ConeRep<S> Jp;
  ConeRep<S> Jd;
  LinearMap<S> A;
  VecT<S> b;
  VecT<S> c;
  ScalarPolicy policy;
};

template <class S>
inline SymmetricInstance<S> make_symmetric_instance(ConeRep<S> Jp, ConeRep<S> Jd, LinearMap<S> A,
                                                    VecT<S> b, VecT<S> c,
                                                    const ScalarPolicy& policy) {
  detail::check_policy<S>(policy);
  const std::size_t ep = Jp.ambient_dim();
  const std::size_t ed = Jd.ambient_dim();
  if (A.domain_dim != ep || A.codomain_dim != ed || c.size() != ep || b.size() != ed) {
    throw DimensionError("symmetric instance data must share the declared spaces");
  }
  if (detail::has_dual_sum(Jp) || detail::has_dual_sum(Jd)) {
    throw InvalidInstance("the data cones must be closed-form representations");
  }
  return SymmetricInstance<S>{ep, ed, std::move(Jp), std::move(Jd),
                              std::move(A), std::move(b), std::move(c), policy};
}

namespace detail {

/// Halfspace pullback of {(x0, w) : M w - s0 x0 in C} for polyhedral C: each
/// canonical halfspace a of C becomes the row (-<a,s0>, M^T a).  Rows that
/// pull back to zero are vacuous and dropped; no surviving row means the
/// whole lifted space.
template <class S>
inline ConeRep<S> pullback_slab(const ConeRep<S>& C, const LinearMap<S>& M, const VecT<S>& s0) {
  if (!is_structurally_polyhedral(C)) {
    throw PolicyError("the constraint cone must be polyhedral to pull back halfspaces");
  }
  const std::size_t out_dim = 1 + M.domain_dim;
  const LinearMap<S> Mt = adjoint(M);
  std::vector<VecT<S>> rows;
  for (const auto& a : C.poly_pair().halfspaces) {
    VecT<S> n = zero_vec<S>(out_dim);
    n[0] = -dot(a, s0);
    const VecT<S> tail = apply_map(Mt, a);
    for (std::size_t j = 0; j < tail.size(); ++j) n[1 + j] = tail[j];
    if (!is_zero_vec(n)) rows.push_back(std::move(n));
  }
  if (rows.empty()) return make_full_space<S>(out_dim);
  return make_hrep<S>(out_dim, std::move(rows));
}

template <class S>
inline VecT<S> lift_with_leading(const S& head, const VecT<S>& tail) {
  VecT<S> out = zero_vec<S>(1 + tail.size());
  out[0] = head;
  for (std::size_t i = 0; i < tail.size(); ++i) out[1 + i] = tail[i];
  return out;
}

}  // namespace detail

/// Lift the inf side to the level-slice form: variables (x0, u), first cone
/// R+ x Jp, second cone the constraint preimage {(x0,u) : A u - b x0 in Jd},
/// cost (0, c), level functional picking x0.  The lifted values match the
/// original pair's inf and sup values, statuses included.
template <class S>
inline HyperplaneInstance<S> to_hyperplane_primal_form(const SymmetricInstance<S>& s) {
  ConeRep<S> K1 = make_product<S>({make_orthant<S>(1), s.Jp});
  ConeRep<S> K2 = detail::pullback_slab(s.Jd, s.A, s.b);
  VecT<S> q = detail::lift_with_leading(scalar_traits<S>::zero(), s.c);
  VecT<S> h = unit_vec<S>(1 + s.primal_dim, 0);
  return make_hyperplane_instance<S>(std::move(K1), std::move(K2), std::move(q), std::move(h),
                                     s.policy);
}

/// Lift the sup side to the level-slice form by swapping roles: variables
/// (x0, v), first cone R+ x dual(Jd), second cone {(x0,v) : c x0 - A^T v in
/// dual(Jp)}, cost (0, -b).  The lifted inf equals the negated original sup,
/// and the lifted sup equals the negated original inf.
template <class S>
inline HyperplaneInstance<S> to_hyperplane_dual_form(const SymmetricInstance<S>& s) {
  ConeRep<S> K1 = make_product<S>({make_orthant<S>(1), dual(s.Jd, s.policy)});
  ConeRep<S> K2 =
      detail::pullback_slab(dual(s.Jp, s.policy), detail::negate_map(adjoint(s.A)), vec_neg(s.c));
  VecT<S> q = detail::lift_with_leading(scalar_traits<S>::zero(), vec_neg(s.b));
  VecT<S> h = unit_vec<S>(1 + s.dual_dim, 0);
  return make_hyperplane_instance<S>(std::move(K1), std::move(K2), std::move(q), std::move(h),
                                     s.policy);
}

/// The four image cones that govern strong duality of the symmetric pair.
/// The sup-form instance's sum of dual cones equals `value_epigraph` as a
/// set, and the interior-membership conditions below characterize its two
/// line conditions.
template <class S>
struct DualityCones {
  ConeRep<S> value_epigraph;   // (alpha, v - A u) with alpha >= <c,u>, u in Jp, v in Jd
  ConeRep<S> feasible_shifts;  // v - A u: offsets that keep the inf side feasible
  ConeRep<S> feasible_costs;   // u + A^T v over the dual cones: costs that keep the sup side feasible
  ConeRep<S> value_graph;      // (<c,u>, v - A u): the epigraph without the slack ray
};

/// Builds the image cones from canonical generators (exact data only).  The
/// generator count of every built cone is capped at 256.
template <class S>
inline DualityCones<S> build_duality_cones(const SymmetricInstance<S>& s) {
  if (!is_structurally_polyhedral(s.Jp) || !is_structurally_polyhedral(s.Jd)) {
    throw PolicyError("image cones require polyhedral data");
  }
  const auto& gens_p = s.Jp.poly_pair().gens;
  const auto& gens_d = s.Jd.poly_pair().gens;
  const auto& duals_p = s.Jp.poly_pair().halfspaces;  // generators of dual(Jp)
  const auto& duals_d = s.Jd.poly_pair().halfspaces;  // generators of dual(Jd)
  if (gens_p.size() + gens_d.size() + 1 > 256 || duals_p.size() + duals_d.size() > 256) {
    throw PolicyError("the image cone generator count exceeds the supported size");
  }
  const LinearMap<S> At = adjoint(s.A);

  std::vector<VecT<S>> shift_gens;
  for (const auto& g : gens_p) shift_gens.push_back(vec_neg(apply_map(s.A, g)));
  for (const auto& w : gens_d) shift_gens.push_back(w);

  std::vector<VecT<S>> cost_gens = duals_p;
  for (const auto& a : duals_d) cost_gens.push_back(apply_map(At, a));

  std::vector<VecT<S>> graph_gens;
  for (const auto& g : gens_p) {
    graph_gens.push_back(detail::lift_with_leading(dot(s.c, g), vec_neg(apply_map(s.A, g))));
  }
  for (const auto& w : gens_d) {
    graph_gens.push_back(detail::lift_with_leading(scalar_traits<S>::zero(), w));
  }
  std::vector<VecT<S>> epi_gens = graph_gens;
  epi_gens.push_back(unit_vec<S>(1 + s.dual_dim, 0));

  DualityCones<S> out{make_vrep<S>(1 + s.dual_dim, std::move(epi_gens)),
                      make_vrep<S>(s.dual_dim, std::move(shift_gens)),
                      make_vrep<S>(s.primal_dim, std::move(cost_gens)),
                      make_vrep<S>(1 + s.dual_dim, std::move(graph_gens))};
  return out;
}

/// Sufficient regularity of the symmetric pair, phrased on the original
/// data: closedness of the value epigraph, interiority of the negated offset
/// among the feasible shifts, interiority of the cost among the feasible
/// costs.  The two interiority verdicts coincide with the line condition of
/// the sup-form and inf-form lifts, respectively.
template <class S>
struct SymmetricConditionReport {
  ConditionVerdict<S> sum_closed;
  ConditionVerdict<S> shift_interior;
  ConditionVerdict<S> cost_interior;
};

template <class S>
inline SymmetricConditionReport<S> check_symmetric_conditions(const SymmetricInstance<S>& s) {
  SymmetricConditionReport<S> out;
  out.sum_closed = check_tp(to_hyperplane_dual_form(s));
  const DualityCones<S> dc = build_duality_cones(s);
  const VecT<S> nb = vec_neg(s.b);
  if (member(dc.feasible_shifts, nb, s.policy).verdict == Verdict::Inside) {
    out.shift_interior.state = TriState::Holds;
    out.shift_interior.point = nb;
    out.shift_interior.note = "the negated offset is interior to the cone of feasible shifts";
  } else {
    out.shift_interior.state = TriState::Fails;
    out.shift_interior.note = "the negated offset is not interior to the cone of feasible shifts";
  }
  if (member(dc.feasible_costs, s.c, s.policy).verdict == Verdict::Inside) {
    out.cost_interior.state = TriState::Holds;
    out.cost_interior.point = s.c;
    out.cost_interior.note = "the cost is interior to the cone of feasible costs";
  } else {
    out.cost_interior.state = TriState::Fails;
    out.cost_interior.note = "the cost is not interior to the cone of feasible costs";
  }
  return out;
}

/// Instance with one pinned level and one annihilated functional: the second
/// cone is the hyperplane {x : <h1,x> = 0}, so its dual contributes the span
/// of h1 to the sum of duals.  h1 = 0 degenerates to the single-cone pair.
template <class S>
inline HyperplaneInstance<S> make_two_hyperplane_instance(ConeRep<S> K1, VecT<S> q, VecT<S> h,
                                                          const VecT<S>& h1,
                                                          const ScalarPolicy& policy) {
  const std::size_t dim = K1.ambient_dim();
  if (q.size() != dim || h.size() != dim || h1.size() != dim) {
    throw DimensionError("instance data must share the ambient space");
  }
  ConeRep<S> K2 = make_full_space<S>(dim);
  if (!is_zero_vec(h1)) {
    if (member(dual(K1, policy), h1, policy).verdict == Verdict::Outside) {
      throw InvalidInstance("the annihilated functional must lie in the dual of the first cone");
    }
    const Subspace<S> comp = orthogonal_complement(span_of<S>({h1}, dim, policy), policy);
    K2 = make_subspace<S>(dim, comp.basis);
  }
  return make_hyperplane_instance<S>(std::move(K1), std::move(K2), std::move(q), std::move(h),
                                     policy);
}

}  // namespace conedual
