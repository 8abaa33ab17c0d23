#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "conedual/cone.hpp"
#include "conedual/line_search.hpp"

namespace conedual {

enum class SolveStatus { Finite, UnboundedBelow, UnboundedAbove, Infeasible, NumericallyUndecided };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Finite: return "finite";
    case SolveStatus::UnboundedBelow: return "unbounded_below";
    case SolveStatus::UnboundedAbove: return "unbounded_above";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NumericallyUndecided: return "numerically_undecided";
  }
  return "?";
}

/// Extended-real value: `inf` is -1 / 0 / +1 for -infinity / finite / +infinity.
template <class S>
struct ExtReal {
  int inf = 0;
  S finite = scalar_traits<S>::zero();

  static ExtReal neg_inf() { return ExtReal{-1, scalar_traits<S>::zero()}; }
  static ExtReal pos_inf() { return ExtReal{+1, scalar_traits<S>::zero()}; }
  static ExtReal of(S v) { return ExtReal{0, std::move(v)}; }

  bool is_finite() const { return inf == 0; }
  double to_double() const {
    if (inf < 0) return -kHugeMargin;
    if (inf > 0) return kHugeMargin;
    return scalar_traits<S>::to_double(finite);
  }
};

template <class S>
inline bool operator==(const ExtReal<S>& a, const ExtReal<S>& b) {
  if (a.inf != b.inf) return false;
  return a.inf != 0 || a.finite == b.finite;
}

/// a <= b in the extended order, with `slack` loosening the finite comparison
/// (float paths pass their band; exact paths pass zero).
template <class S>
inline bool ext_less_equal(const ExtReal<S>& a, const ExtReal<S>& b, double slack = 0.0) {
  if (a.inf < 0 || b.inf > 0) return true;
  if (a.inf > 0) return false;
  if (b.inf < 0) return false;
  if constexpr (scalar_traits<S>::is_exact) {
    return a.finite <= b.finite;
  } else {
    return a.finite <= b.finite + slack;
  }
}

/// Difference a - b with the convention that two infinities of the same sign
/// cancel to zero (the two formulations agree); opposite-signed or mixed
/// infinite cases saturate.
template <class S>
inline ExtReal<S> ext_gap(const ExtReal<S>& a, const ExtReal<S>& b) {
  if (a.inf != 0 || b.inf != 0) {
    if (a.inf == b.inf) return ExtReal<S>::of(scalar_traits<S>::zero());
    if (a.inf > 0 || b.inf < 0) return ExtReal<S>::pos_inf();
    return ExtReal<S>::neg_inf();
  }
  return ExtReal<S>::of(a.finite - b.finite);
}

template <class S>
struct SolveOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  ExtReal<S> value = ExtReal<S>::pos_inf();
  /// Whether the optimal value is attained by a feasible point; absent for
  /// infeasible and unbounded outcomes.
  std::optional<bool> attained;
  std::optional<VecT<S>> solution;  // optimal point of the hyperplane problem
  std::optional<S> t_star;          // optimal parameter of the line problem
  /// Recession direction or separating functional backing the status.
  std::optional<VecT<S>> certificate;
  /// Set when a conclusion rests on search exhaustion or band comparisons
  /// rather than a closed-form argument.
  bool numerically_uncertain = false;
  std::string note;
};

namespace detail {

template <class S>
inline void require_nonzero_level(const VecT<S>& h) {
  if (is_zero_vec(h)) throw InvalidInstance("the level functional must be nonzero");
}

/// Farkas-style certificate for an empty parameter interval: a nonnegative
/// combination w of the halfspace normals with <w,h> = 0 and <w,q> < 0.
template <class S>
inline std::optional<VecT<S>> empty_interval_certificate(const std::vector<VecT<S>>& normals,
                                                         const VecT<S>& q, const VecT<S>& h) {
  std::optional<std::size_t> up, down;  // tightest upper / lower bound rows
  std::optional<S> up_bound, down_bound;
  for (std::size_t j = 0; j < normals.size(); ++j) {
    const S alpha = dot(normals[j], q);
    const S beta = dot(normals[j], h);
    const int bs = scalar_traits<S>::sign(beta);
    if (bs == 0) {
      if (scalar_traits<S>::sign(alpha) < 0) return normals[j];
      continue;
    }
    const S bound = alpha / beta;
    if (bs > 0) {
      if (!up || bound < *up_bound) {
        up = j;
        up_bound = bound;
      }
    } else if (!down || bound > *down_bound) {
      down = j;
      down_bound = bound;
    }
  }
  if (!up || !down) return std::nullopt;
  const VecT<S>& a = normals[*up];
  const VecT<S>& b = normals[*down];
  const S ba = dot(a, h), bb = dot(b, h);
  VecT<S> w = vec_sub(vec_scale(a, scalar_traits<S>::one() / ba),
                      vec_scale(b, scalar_traits<S>::one() / bb));
  if (scalar_traits<S>::sign(dot(w, q)) >= 0 || scalar_traits<S>::sign(dot(w, h)) != 0) {
    throw InternalInvariantViolation("separating certificate failed its defining signs");
  }
  return w;
}

inline constexpr int kProbeMax = 60;

/// Feasibility probes t = 0, +-2^k for k = 0..60, in increasing order.
inline std::vector<double> probe_grid() {
  std::vector<double> t;
  t.reserve(2 * (kProbeMax + 1) + 1);
  for (int k = kProbeMax; k >= 0; --k) t.push_back(-std::ldexp(1.0, k));
  t.push_back(0.0);
  for (int k = 0; k <= kProbeMax; ++k) t.push_back(std::ldexp(1.0, k));
  return t;
}

/// True when the representation may denote a non-closed set, i.e. a sum of
/// duals that is not known closed and does not stand for its own closure.
template <class S>
inline bool possibly_nonclosed(const ConeRep<S>& c) {
  const auto* sum = std::get_if<DualSumCone<S>>(&c.rep());
  return sum != nullptr && !sum->denotes_closure && sum->closed != Closedness::ProvenClosed;
}

/// Whether the margin family of `J` at the frozen parameter `t` reaches
/// membership only in the limit of the inner search direction: the signature
/// of a supremum that is approached but not attained.
inline bool closure_only_at(const ConeRep<double>& J, const VecT<double>& q,
                            const VecT<double>& h, double t, const ScalarPolicy& policy) {
  const auto* sum = std::get_if<DualSumCone<double>>(&J.rep());
  if (sum == nullptr) return false;
  const VecT<double> x = vec_sub(q, vec_scale(h, t));
  const auto prob = split_dual_sum(*sum, J.ambient_dim(), policy);
  const auto li = dual_base_line_interval(prob.base, x, prob.d, policy);
  const double band = policy.band(std::max(1.0, norm2_double(x)));
  return !li.feasible && !li.undecided && std::max(li.limit_neg, li.limit_pos) >= -band;
}

}  // namespace detail

/// Supremum of {t : q - t*h in J}.  The feasible parameter set is an interval
/// by convexity; the exact path reads it off the canonical halfspaces, the
/// float path brackets it through membership probes and bisects.
template <class S>
inline SolveOutcome<S> solve_dual_line(const ConeRep<S>& J, const VecT<S>& q, const VecT<S>& h,
                                       const ScalarPolicy& policy) {
  detail::check_policy<S>(policy);
  if (q.size() != J.ambient_dim() || h.size() != J.ambient_dim()) {
    throw DimensionError("line problem dimension mismatch");
  }
  detail::require_nonzero_level(h);
  SolveOutcome<S> out;

  if constexpr (scalar_traits<S>::is_exact) {
    if (!is_structurally_polyhedral(J)) {
      throw PolicyError("exact line optimization requires polyhedral cones");
    }
    const auto& normals = J.poly_pair().halfspaces;
    std::vector<S> alpha, beta;
    alpha.reserve(normals.size());
    beta.reserve(normals.size());
    for (const auto& a : normals) {
      alpha.push_back(dot(a, q));
      beta.push_back(dot(a, h));
    }
    const LineInterval<S> li = affine_line_interval(alpha, beta, policy);
    if (!li.feasible) {
      out.status = SolveStatus::Infeasible;
      out.value = ExtReal<S>::neg_inf();
      out.certificate = detail::empty_interval_certificate(normals, q, h);
      return out;
    }
    const bool neg_h_inside = member(J, vec_neg(h), policy).verdict != Verdict::Outside;
    if (li.hi_unbounded != neg_h_inside) {
      throw InternalInvariantViolation(
          "line supremum is unbounded exactly when the negated level functional lies in the cone");
    }
    if (li.hi_unbounded) {
      out.status = SolveStatus::UnboundedAbove;
      out.value = ExtReal<S>::pos_inf();
      out.certificate = vec_neg(h);
      return out;
    }
    out.status = SolveStatus::Finite;
    out.value = ExtReal<S>::of(li.hi);
    out.t_star = li.hi;
    const VecT<S> x = vec_sub(q, vec_scale(h, li.hi));
    if (member(J, x, policy).verdict == Verdict::Outside) {
      throw InternalInvariantViolation("closed polyhedral supremum must be attained");
    }
    out.attained = true;
    return out;
  } else {
    auto feasible_at = [&](double t, bool& exhausted) {
      const auto cert = member(J, vec_sub(q, vec_scale(h, t)), policy);
      exhausted |= cert.search_exhausted;
      return cert.verdict != Verdict::Outside;
    };
    bool exhausted = false;
    const auto grid = detail::probe_grid();
    std::vector<char> feas(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      feas[i] = feasible_at(grid[i], exhausted) ? 1 : 0;
    }
    // Quadratic membership margins cancel catastrophically once |t| exceeds
    // roughly |q| / (|h| sqrt(eps)); a contiguous run of feasible probes is
    // trusted only if it reaches below that scale.  The feasible set is an
    // interval, so runs disconnected from reliable territory are artifacts.
    const double t_reliable = (1.0 + norm2_double(q)) /
                              std::max(norm2_double(h), 1e-300) /
                              std::sqrt(std::numeric_limits<double>::epsilon());
    std::optional<std::pair<std::size_t, std::size_t>> run;
    double run_min_abs = 0.0;
    bool dropped = false, conflicting = false;
    for (std::size_t i = 0; i < grid.size();) {
      if (!feas[i]) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < grid.size() && feas[j + 1]) ++j;
      double min_abs = kHugeMargin;
      for (std::size_t k = i; k <= j; ++k) min_abs = std::min(min_abs, std::abs(grid[k]));
      if (min_abs <= t_reliable) {
        if (!run) {
          run = {i, j};
          run_min_abs = min_abs;
        } else {
          conflicting = true;
          if (min_abs < run_min_abs) {
            run = {i, j};
            run_min_abs = min_abs;
          }
        }
      } else {
        dropped = true;
      }
      i = j + 1;
    }
    out.numerically_uncertain = exhausted || dropped || conflicting;
    if (conflicting) {
      out.note = "inconsistent feasibility pattern across probe scales; trusting the evidence "
                 "nearest zero. ";
    }
    if (!run) {
      out.status = (exhausted && !dropped) ? SolveStatus::NumericallyUndecided
                                           : SolveStatus::Infeasible;
      out.value = ExtReal<S>::neg_inf();
      out.numerically_uncertain = true;
      out.note += dropped ? "feasibility indications appear only at scales beyond numeric "
                            "reliability; reported infeasible"
                          : "no feasible parameter among the probes |t| <= 2^60; the verdict "
                            "rests on search exhaustion";
      return out;
    }
    if (member(J, vec_neg(h), policy).verdict != Verdict::Outside) {
      out.status = SolveStatus::UnboundedAbove;
      out.value = ExtReal<S>::pos_inf();
      out.certificate = vec_neg(h);
      return out;
    }
    if (run->second + 1 == grid.size()) {
      out.status = SolveStatus::NumericallyUndecided;
      out.value = ExtReal<S>::of(grid.back());
      out.numerically_uncertain = true;
      out.note += "supremum exceeds the probe bracket 2^60";
      return out;
    }
    double lo = grid[run->second], hi = grid[run->second + 1];
    for (int it = 0; it < 200 && hi - lo > policy.abs_tol * std::max(1.0, std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (feasible_at(mid, exhausted)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.numerically_uncertain |= exhausted;
    out.status = SolveStatus::Finite;
    if (detail::possibly_nonclosed(J) && detail::closure_only_at(J, q, h, hi, policy)) {
      out.value = ExtReal<S>::of(hi);
      out.attained = false;
      out.numerically_uncertain = true;
      out.note = "the supremum is approached only in the limit and is not attained";
      return out;
    }
    out.value = ExtReal<S>::of(lo);
    out.t_star = lo;
    out.attained = member(J, vec_sub(q, vec_scale(h, lo)), policy).verdict != Verdict::Outside;
    if (!*out.attained) {
      out.numerically_uncertain = true;
      out.note = "the bracketed optimum failed membership re-verification";
    }
    return out;
  }
}

namespace detail {

/// Canonical interior points of the structured factors, collected as hints
/// for feasible-point searches on the float path.
inline void collect_interior_hints(const ConeRep<double>& c, std::vector<VecT<double>>& out) {
  const std::size_t dim = c.ambient_dim();
  std::visit(
      [&](const auto& rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, SocCone>) {
          out.push_back(unit_vec<double>(dim, dim - 1));
        } else if constexpr (std::is_same_v<T, OrthantCone>) {
          out.push_back(VecT<double>(dim, 1.0));
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          VecT<double> v = zero_vec<double>(dim);
          std::size_t k = 0;
          for (std::size_t i = 0; i < rep.order; ++i) {
            v[k] = 1.0;
            k += rep.order - i;
          }
          out.push_back(v);
        } else if constexpr (std::is_same_v<T, ProductCone<double>>) {
          std::size_t offset = 0;
          for (const auto& p : rep.parts) {
            std::vector<VecT<double>> sub;
            collect_interior_hints(p, sub);
            for (const auto& s : sub) {
              VecT<double> v = zero_vec<double>(dim);
              for (std::size_t i = 0; i < s.size(); ++i) v[offset + i] = s[i];
              out.push_back(v);
            }
            offset += p.ambient_dim();
          }
        } else if constexpr (std::is_same_v<T, IntersectionCone<double>>) {
          for (const auto& p : rep.parts) collect_interior_hints(p, out);
        }
        // Flat and generator representations contribute nothing useful here.
      },
      c.rep());
}

/// A point of K with <h,x> = 1, found by screening interior hints and span
/// candidates through member().  Empty when the battery misses.
inline std::optional<VecT<double>> feasible_primal_point(const ConeRep<double>& K,
                                                         const VecT<double>& h,
                                                         const Subspace<double>& span,
                                                         const ScalarPolicy& policy) {
  std::vector<VecT<double>> cands;
  collect_interior_hints(K, cands);
  const std::size_t keep = cands.size();
  for (std::size_t i = 0; i < keep; ++i) cands.push_back(project_onto(cands[i], span));
  if (!span.basis.empty()) {
    VecT<double> sum = zero_vec<double>(K.ambient_dim());
    for (const auto& b : span.basis) {
      cands.push_back(b);
      cands.push_back(vec_neg(b));
      sum = vec_add(sum, b);
    }
    cands.push_back(sum);
  }
  cands.push_back(project_onto(h, span));
  for (const auto& cand : cands) {
    const double level = dot(h, cand);
    if (!(level > policy.band(norm2_double(h) * norm2_double(cand)))) continue;
    const VecT<double> x = vec_scale(cand, 1.0 / level);
    if (member(K, x, policy).verdict != Verdict::Outside) return x;
  }
  return std::nullopt;
}

/// Candidate optimal points complementary to w = q - t*h on the boundary
/// face {x in K : <w,x> = 0}.
inline void complementary_candidates(const ConeRep<double>& c, const VecT<double>& w,
                                     const ScalarPolicy& policy,
                                     std::vector<VecT<double>>& out) {
  const std::size_t dim = c.ambient_dim();
  const double wband = policy.band(std::max(1.0, norm2_double(w)));
  std::visit(
      [&](const auto& rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, SocCone>) {
          if (norm2_double(w) <= wband) {
            out.push_back(unit_vec<double>(dim, dim - 1));
            return;
          }
          VecT<double> r = vec_neg(w);
          r[dim - 1] = w[dim - 1];
          out.push_back(r);
        } else if constexpr (std::is_same_v<T, OrthantCone>) {
          for (std::size_t i = 0; i < dim; ++i) {
            if (std::abs(w[i]) <= wband) out.push_back(unit_vec<double>(dim, i));
          }
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          const auto wm = smat(w);
          const auto n = static_cast<Eigen::Index>(wm.size());
          Eigen::MatrixXd m(n, n);
          for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = wm[i][j];
          }
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
          std::vector<VecT<double>> face(wm.size(), VecT<double>(wm.size(), 0.0));
          bool any = false;
          for (Eigen::Index k = 0; k < n; ++k) {
            if (std::abs(es.eigenvalues()(k)) > wband) continue;
            any = true;
            std::vector<VecT<double>> vv(wm.size(), VecT<double>(wm.size()));
            for (Eigen::Index i = 0; i < n; ++i) {
              for (Eigen::Index j = 0; j < n; ++j) {
                vv[i][j] = es.eigenvectors()(i, k) * es.eigenvectors()(j, k);
                face[i][j] += vv[i][j];
              }
            }
            out.push_back(svec(vv));
          }
          if (any) out.push_back(svec(face));
        } else if constexpr (std::is_same_v<T, IntersectionCone<double>>) {
          for (const auto& p : rep.parts) complementary_candidates(p, w, policy, out);
        }
      },
      c.rep());
}

}  // namespace detail

/// Infimum of {<q,x> : x in K, <h,x> = 1}, requiring h in the dual cone.  The
/// exact path runs the generator ratio rule; the float path combines its own
/// feasibility and recession pre-checks with the value of the dual line
/// problem over dual(K).
template <class S>
inline SolveOutcome<S> solve_primal_hyperplane(const ConeRep<S>& K, const VecT<S>& q,
                                               const VecT<S>& h, const ScalarPolicy& policy) {
  detail::check_policy<S>(policy);
  if (q.size() != K.ambient_dim() || h.size() != K.ambient_dim()) {
    throw DimensionError("hyperplane problem dimension mismatch");
  }
  if (member(dual(K, policy), h, policy).verdict == Verdict::Outside) {
    throw InvalidInstance("the level functional must lie in the dual cone");
  }
  SolveOutcome<S> out;

  if constexpr (scalar_traits<S>::is_exact) {
    const auto& gens = K.poly_pair().gens;
    std::optional<S> best;
    std::optional<VecT<S>> best_point;
    for (const auto& g : gens) {
      const S level = dot(h, g);
      const int ls = scalar_traits<S>::sign(level);
      if (ls < 0) {
        throw InternalInvariantViolation("generator violates the dual-cone precondition");
      }
      if (ls == 0) continue;
      const S val = dot(q, g) / level;
      VecT<S> x = vec_scale(g, scalar_traits<S>::one() / level);
      if (!best || val < *best || (val == *best && lex_less(x, *best_point))) {
        best = val;
        best_point = std::move(x);
      }
    }
    if (!best) {
      out.status = SolveStatus::Infeasible;
      out.value = ExtReal<S>::pos_inf();
      out.note = "the hyperplane misses the cone: every generator has zero level";
      return out;
    }
    for (const auto& g : gens) {
      if (scalar_traits<S>::sign(dot(h, g)) == 0 && scalar_traits<S>::sign(dot(q, g)) < 0) {
        out.status = SolveStatus::UnboundedBelow;
        out.value = ExtReal<S>::neg_inf();
        out.certificate = g;
        return out;
      }
    }
    out.status = SolveStatus::Finite;
    out.value = ExtReal<S>::of(*best);
    out.solution = best_point;
    if (member(K, *best_point, policy).verdict == Verdict::Outside ||
        dot(h, *best_point) != scalar_traits<S>::one()) {
      throw InternalInvariantViolation("ratio-rule optimum failed feasibility re-verification");
    }
    out.attained = true;
    return out;
  } else {
    const Subspace<S> span = generated_subspace(K, policy);
    const VecT<S> h_hat = project_onto(h, span);
    if (norm2_double(h_hat) <= policy.band(norm2_double(h))) {
      out.status = SolveStatus::Infeasible;
      out.value = ExtReal<S>::pos_inf();
      out.note = "the level functional vanishes on the span of the cone";
      return out;
    }
    const auto feasible = detail::feasible_primal_point(K, h, span, policy);
    std::optional<VecT<S>> ray;
    try {
      ray = recession_ray_in_level(K, h, q, /*strict=*/true, policy);
    } catch (const PolicyError&) {
      // No closed-form recession search for this shape; the dual side decides.
    }
    if (feasible && ray) {
      out.status = SolveStatus::UnboundedBelow;
      out.value = ExtReal<S>::neg_inf();
      out.certificate = ray;
      return out;
    }
    const SolveOutcome<S> dl = solve_dual_line(dual(K, policy), q, h, policy);
    out.numerically_uncertain = dl.numerically_uncertain;
    switch (dl.status) {
      case SolveStatus::Infeasible:
      case SolveStatus::NumericallyUndecided: {
        if (dl.status == SolveStatus::NumericallyUndecided || !feasible) {
          out.status = SolveStatus::NumericallyUndecided;
          out.value = feasible ? ExtReal<S>::neg_inf() : ExtReal<S>::pos_inf();
          out.numerically_uncertain = true;
          out.note = "primal classification rests on an undecided dual line problem";
          return out;
        }
        // Feasible with an infeasible dual: a finite value would force a
        // finite, feasible dual, so the infimum is unbounded below.
        out.status = SolveStatus::UnboundedBelow;
        out.value = ExtReal<S>::neg_inf();
        out.note = "feasible primal with an infeasible dual line";
        return out;
      }
      case SolveStatus::UnboundedAbove: {
        out.status = SolveStatus::NumericallyUndecided;
        out.value = ExtReal<S>::pos_inf();
        out.numerically_uncertain = true;
        out.note = "dual line unbounded although the level functional does not vanish on the "
                   "span; the sides disagree within tolerance";
        return out;
      }
      case SolveStatus::UnboundedBelow:
        throw InternalInvariantViolation("a line supremum cannot be unbounded below");
      case SolveStatus::Finite: break;
    }
    const double zeta = dl.value.to_double();
    out.status = SolveStatus::Finite;
    out.value = dl.value;
    if (!feasible) {
      out.attained = false;
      out.numerically_uncertain = true;
      out.note = "no feasible point recovered; the value is carried by the dual side";
      return out;
    }
    // Optimal points lie on the face of K complementary to w = q - h*t.
    const VecT<S> w = vec_sub(q, vec_scale(h, static_cast<S>(zeta)));
    std::vector<VecT<S>> cands;
    detail::complementary_candidates(K, w, policy, cands);
    if (!span.basis.empty()) {
      VecT<S> sum = zero_vec<S>(K.ambient_dim());
      for (const auto& b : span.basis) {
        cands.push_back(b);
        cands.push_back(vec_neg(b));
        sum = vec_add(sum, b);
      }
      cands.push_back(sum);
    }
    cands.push_back(*feasible);
    const double vtol = std::max(8.0 * policy.band(1.0 + std::abs(zeta)),
                                 1e-7 * (1.0 + std::abs(zeta)));
    for (const auto& cand : cands) {
      const double level = dot(h, cand);
      if (!(level > policy.band(norm2_double(h) * norm2_double(cand)))) continue;
      const VecT<S> x = vec_scale(cand, 1.0 / level);
      if (member(K, x, policy).verdict == Verdict::Outside) continue;
      if (std::abs(dot(q, x) - zeta) > vtol) continue;
      out.attained = true;
      out.solution = x;
      return out;
    }
    out.attained = false;
    out.numerically_uncertain = true;
    out.note = "no optimal point recovered by the complementary-face search";
    return out;
  }
}

/// The two-cone problem data.  The level functional must be nonzero and lie
/// in the dual of the first cone.  `sum_closedness` records outside knowledge
/// about the sum of the dual cones; Unknown defers to structural detection.
template <class S>
struct HyperplaneInstance {
  std::size_t ambient_dim = 0;
  ConeRep<S> K1;
  ConeRep<S> K2;
  VecT<S> q;
  VecT<S> h;
  ScalarPolicy policy;
  Closedness sum_closedness = Closedness::Unknown;
};

template <class S>
inline HyperplaneInstance<S> make_hyperplane_instance(ConeRep<S> K1, ConeRep<S> K2, VecT<S> q,
                                                      VecT<S> h, const ScalarPolicy& policy) {
  detail::check_policy<S>(policy);
  const std::size_t dim = K1.ambient_dim();
  if (K2.ambient_dim() != dim || q.size() != dim || h.size() != dim) {
    throw DimensionError("instance data must share the ambient space");
  }
  detail::require_nonzero_level(h);
  if (member(dual(K1, policy), h, policy).verdict == Verdict::Outside) {
    throw InvalidInstance("the level functional must lie in the dual of the first cone");
  }
  return HyperplaneInstance<S>{dim, std::move(K1), std::move(K2), std::move(q), std::move(h),
                               policy};
}

/// Single-cone convenience: the second cone is the full space.
template <class S>
inline HyperplaneInstance<S> make_single_cone_instance(ConeRep<S> K, VecT<S> q, VecT<S> h,
                                                       const ScalarPolicy& policy) {
  const std::size_t dim = K.ambient_dim();
  return make_hyperplane_instance<S>(std::move(K), make_full_space<S>(dim), std::move(q),
                                     std::move(h), policy);
}

template <class S>
struct PairOutcome {
  SolveOutcome<S> primal;        // infimum over the intersection
  SolveOutcome<S> dual_sum;      // supremum against the (possibly non-closed) sum of duals
  SolveOutcome<S> dual_closure;  // supremum against the dual of the intersection
  ExtReal<S> gap;                // primal minus dual_sum
  ExtReal<S> reference_gap;      // primal minus dual_closure
};

namespace detail {

template <class S>
inline void assert_weak_duality(const SolveOutcome<S>& lo, const SolveOutcome<S>& hi,
                                const ScalarPolicy& policy, const char* what) {
  if (lo.status == SolveStatus::NumericallyUndecided ||
      hi.status == SolveStatus::NumericallyUndecided) {
    return;
  }
  const double scale = 1.0 + std::max(std::abs(lo.value.to_double()) < kHugeMargin
                                          ? std::abs(lo.value.to_double())
                                          : 0.0,
                                      std::abs(hi.value.to_double()) < kHugeMargin
                                          ? std::abs(hi.value.to_double())
                                          : 0.0);
  if (!ext_less_equal(lo.value, hi.value, 8.0 * policy.band(scale))) {
    throw InternalInvariantViolation(what);
  }
}

}  // namespace detail

/// Solve the intersection problem and both dual formulations; weak duality
/// and the sum-versus-closure ordering are asserted on every call.
template <class S>
inline PairOutcome<S> solve_pair(const HyperplaneInstance<S>& inst) {
  PairOutcome<S> out;
  const ConeRep<S> K = make_intersection<S>({inst.K1, inst.K2});
  out.primal = solve_primal_hyperplane(K, inst.q, inst.h, inst.policy);
  Closedness closed = inst.sum_closedness;
  if (closed == Closedness::Unknown &&
      is_structurally_polyhedral(inst.K1) && is_structurally_polyhedral(inst.K2)) {
    closed = Closedness::ProvenClosed;
  }
  const ConeRep<S> J_sum =
      make_dual_sum<S>({inst.K1, inst.K2}, closed, /*denotes_closure=*/false);
  out.dual_sum = solve_dual_line(J_sum, inst.q, inst.h, inst.policy);
  const ConeRep<S> J_closure = dual(K, inst.policy);
  out.dual_closure = solve_dual_line(J_closure, inst.q, inst.h, inst.policy);
  detail::assert_weak_duality(out.dual_sum, out.primal, inst.policy,
                              "weak duality fails for the sum formulation");
  detail::assert_weak_duality(out.dual_closure, out.primal, inst.policy,
                              "weak duality fails for the closure formulation");
  detail::assert_weak_duality(out.dual_sum, out.dual_closure, inst.policy,
                              "the sum formulation exceeds its closure");
  out.gap = ext_gap(out.primal.value, out.dual_sum.value);
  out.reference_gap = ext_gap(out.primal.value, out.dual_closure.value);
  return out;
}

/// Projection of the problem data onto the span of the cone.  Solving with
/// the projected data reproduces the original outcomes; a vanishing projected
/// level functional certifies an infeasible primal.
template <class S>
struct ProjectionReduction {
  VecT<S> q_hat;
  VecT<S> h_hat;
  Subspace<S> span;
};

template <class S>
inline ProjectionReduction<S> reduce_by_projection(const ConeRep<S>& K, const VecT<S>& q,
                                                   const VecT<S>& h, const ScalarPolicy& policy) {
  detail::check_policy<S>(policy);
  if (q.size() != K.ambient_dim() || h.size() != K.ambient_dim()) {
    throw DimensionError("projection reduction dimension mismatch");
  }
  ProjectionReduction<S> r;
  r.span = generated_subspace(K, policy);
  r.q_hat = project_onto(q, r.span);
  r.h_hat = project_onto(h, r.span);
  return r;
}

/// Line solver tolerant of the degenerate projected case h = 0, where the
/// feasible parameter set is all of R or empty depending on q alone.
template <class S>
inline SolveOutcome<S> solve_dual_line_reduced(const ConeRep<S>& J, const VecT<S>& q,
                                               const VecT<S>& h, const ScalarPolicy& policy) {
  const bool h_zero = scalar_traits<S>::is_exact
                          ? is_zero_vec(h)
                          : norm2_double(h) <= policy.band(0.0);
  if (!h_zero) return solve_dual_line(J, q, h, policy);
  SolveOutcome<S> out;
  if (member(J, q, policy).verdict != Verdict::Outside) {
    out.status = SolveStatus::UnboundedAbove;
    out.value = ExtReal<S>::pos_inf();
    out.note = "every parameter is feasible: the level functional vanishes";
  } else {
    out.status = SolveStatus::Infeasible;
    out.value = ExtReal<S>::neg_inf();
    out.note = "no parameter is feasible: the level functional vanishes";
  }
  return out;
}

/// Evaluate many instances independently.  Results depend only on the
/// instance at the same index; worker threads share no mutable state.
template <class S>
inline std::vector<PairOutcome<S>> solve_batch(const std::vector<HyperplaneInstance<S>>& batch) {
  std::vector<PairOutcome<S>> results(batch.size());
  std::vector<std::exception_ptr> errors(batch.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                     batch.size()));
  auto run = [&](std::size_t begin) {
    for (std::size_t i = begin; i < batch.size(); i += workers) {
      try {
        results[i] = solve_pair(batch[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace conedual
