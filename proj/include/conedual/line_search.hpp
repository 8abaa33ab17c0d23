#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "conedual/geometry.hpp"
#include "conedual/linalg.hpp"

namespace conedual {

/// Stand-in for an infinite margin limit.
inline constexpr double kHugeMargin = 1e300;

/// Feasibility of the one-parameter family x(t) = y - t*d against a cone
/// membership margin.  `feasible` refers to finite parameters only; the
/// asymptotic margin limits are reported separately so callers can tell a
/// genuinely empty set from one that is approached but never reached
/// (the non-closed-sum phenomenon).
template <class S>
struct LineInterval {
  bool undecided = false;  // search-based backend could not settle feasibility
  bool feasible = false;
  bool lo_unbounded = false;
  bool hi_unbounded = false;
  S lo = scalar_traits<S>::zero();
  S hi = scalar_traits<S>::zero();
  double limit_neg = -kHugeMargin;   // lim margin as t -> -inf
  double limit_pos = -kHugeMargin;   // lim margin as t -> +inf
  double sup_margin = -kHugeMargin;  // sup margin over finite t (float backends)
  double witness_t = 0.0;            // a finite feasible t when `feasible`
};

namespace detail {

/// Ternary search for the maximum of a concave function on [lo, hi].
template <class F>
inline std::pair<double, double> concave_max(F&& f, double lo, double hi, int iters = 240) {
  for (int it = 0; it < iters && hi - lo > 1e-18 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) < f(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  const double t = 0.5 * (lo + hi);
  return {t, f(t)};
}

}  // namespace detail

/// Interval for margins alpha_j - t*beta_j >= 0 (all j).  Exact under an
/// exact scalar; under float, coefficients within the absolute band of zero
/// are snapped to zero before classification.
template <class S>
inline LineInterval<S> affine_line_interval(const std::vector<S>& alpha,
                                            const std::vector<S>& beta,
                                            const ScalarPolicy& policy) {
  LineInterval<S> r;
  r.feasible = true;
  r.lo_unbounded = true;
  r.hi_unbounded = true;
  double lim_neg = kHugeMargin, lim_pos = kHugeMargin;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    const int bsign = sign_within_band(beta[j], policy, 0.0);
    if (bsign == 0) {
      if (sign_within_band(alpha[j], policy, 0.0) < 0) {
        r.feasible = false;
        r.lo_unbounded = r.hi_unbounded = false;
        r.limit_neg = r.limit_pos = -kHugeMargin;
        return r;
      }
      lim_neg = std::min(lim_neg, scalar_traits<S>::to_double(alpha[j]));
      lim_pos = std::min(lim_pos, scalar_traits<S>::to_double(alpha[j]));
      continue;
    }
    const S bound = alpha[j] / beta[j];
    if (bsign > 0) {
      if (r.hi_unbounded || bound < r.hi) {
        r.hi = bound;
        r.hi_unbounded = false;
      }
      lim_pos = -kHugeMargin;
    } else {
      if (r.lo_unbounded || bound > r.lo) {
        r.lo = bound;
        r.lo_unbounded = false;
      }
      lim_neg = -kHugeMargin;
    }
  }
  if (!r.lo_unbounded && !r.hi_unbounded && r.hi < r.lo) {
    r.feasible = false;
  }
  r.limit_neg = lim_neg;
  r.limit_pos = lim_pos;
  if (r.feasible) {
    if (!r.lo_unbounded && !r.hi_unbounded) {
      r.witness_t = 0.5 * (scalar_traits<S>::to_double(r.lo) + scalar_traits<S>::to_double(r.hi));
    } else if (!r.lo_unbounded) {
      r.witness_t = scalar_traits<S>::to_double(r.lo);
    } else if (!r.hi_unbounded) {
      r.witness_t = scalar_traits<S>::to_double(r.hi);
    } else {
      r.witness_t = 0.0;
    }
  }
  if constexpr (!scalar_traits<S>::is_exact) {
    // Concave piecewise-linear margin; its supremum decides interior
    // membership for sums built on affine margins.
    auto margin = [&](double t) {
      double m = kHugeMargin;
      for (std::size_t j = 0; j < alpha.size(); ++j) {
        m = std::min(m, scalar_traits<S>::to_double(alpha[j]) -
                            t * scalar_traits<S>::to_double(beta[j]));
      }
      return m;
    };
    const double bracket = std::ldexp(1.0, 60);
    const auto [arg, best] = detail::concave_max(margin, -bracket, bracket);
    r.sup_margin = best;
    if (r.feasible && best >= margin(r.witness_t) && best >= 0.0) r.witness_t = arg;
    if (!r.feasible) {
      // Crossing bounds may be pure rounding (e.g. a near-tangent direction
      // whose components carry ulp-level asymmetry); the margin peak decides.
      double amax = 0.0;
      for (const auto& a : alpha) amax = std::max(amax, std::abs(scalar_traits<S>::to_double(a)));
      if (best >= -policy.band(1.0 + amax)) {
        r.feasible = true;
        r.lo_unbounded = r.hi_unbounded = false;
        r.lo = r.hi = static_cast<S>(arg);
        r.witness_t = arg;
      }
    }
  }
  return r;
}

namespace detail {

/// Second-order-cone margin of y - t*d, evaluated through the quadratic
/// Q(t) = alpha(t)^2 - |ybar - t*dbar|^2 so huge |t| does not lose the sign
/// to cancellation.
struct SocLine {
  double a, b, c;    // Q(t) = a t^2 + b t + c
  double yn, dn;     // alpha(t) = yn - t*dn
  double margin(double t) const {
    const double alpha = yn - t * dn;
    const double q = (a * t + b) * t + c;
    const double disc = std::max(alpha * alpha - q, 0.0);
    if (alpha > 0.0) return q / (alpha + std::sqrt(disc));
    return alpha - std::sqrt(disc);
  }
};

inline SocLine make_soc_line(const VecT<double>& y, const VecT<double>& d) {
  const std::size_t n = y.size();
  SocLine l{};
  l.yn = y[n - 1];
  l.dn = d[n - 1];
  double dbar2 = 0.0, ybar2 = 0.0, yd = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    dbar2 += d[i] * d[i];
    ybar2 += y[i] * y[i];
    yd += y[i] * d[i];
  }
  l.a = l.dn * l.dn - dbar2;
  l.b = -2.0 * (l.yn * l.dn - yd);
  l.c = l.yn * l.yn - ybar2;
  return l;
}

}  // namespace detail

/// Exact-shape interval for y - t*d in the second-order cone, including the
/// asymptotic margin limits that witness closure-only membership.
inline LineInterval<double> soc_line_interval(const VecT<double>& y, const VecT<double>& d,
                                              const ScalarPolicy& policy) {
  check_same_dim(y, d);
  LineInterval<double> r;
  auto line = detail::make_soc_line(y, d);
  // The leading coefficient cancels exactly when d sits on the cone boundary;
  // classify it (and the linear term) within the policy band so a float
  // direction a few ulps off the boundary still takes the tangent analysis.
  double dnorm2 = line.dn * line.dn, ynorm = 0.0;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) dnorm2 += d[i] * d[i];
  for (double v : y) ynorm = std::max(ynorm, std::abs(v));
  if (std::abs(line.a) <= policy.band(dnorm2)) line.a = 0.0;
  if (std::abs(line.b) <= policy.band(2.0 * ynorm * std::sqrt(dnorm2))) line.b = 0.0;
  const bool d_zero = is_zero_vec(d);
  if (d_zero) {
    const double m = line.margin(0.0);
    r.feasible = m >= 0.0;
    r.lo_unbounded = r.hi_unbounded = r.feasible;
    r.limit_neg = r.limit_pos = m;
    r.sup_margin = m;
    r.witness_t = 0.0;
    return r;
  }

  // alpha(t) >= 0 half-line.
  bool alpha_all = false, alpha_none = false;
  double alpha_lo = -kHugeMargin, alpha_hi = kHugeMargin;
  if (line.dn > 0.0) {
    alpha_hi = line.yn / line.dn;
  } else if (line.dn < 0.0) {
    alpha_lo = line.yn / line.dn;
  } else if (line.yn >= 0.0) {
    alpha_all = true;
  } else {
    alpha_none = true;
  }

  // Margin limits.
  if (line.a > 0.0) {
    r.limit_neg = line.dn > 0.0 ? kHugeMargin : -kHugeMargin;
    r.limit_pos = line.dn < 0.0 ? kHugeMargin : -kHugeMargin;
  } else if (line.a == 0.0) {
    const double lim = -line.b / (2.0 * line.dn);  // side where alpha -> +inf
    r.limit_neg = line.dn > 0.0 ? lim : -kHugeMargin;
    r.limit_pos = line.dn < 0.0 ? lim : -kHugeMargin;
  }  // a < 0: both limits are -inf (dbar dominates).

  // Candidate intervals from {Q >= 0} intersected with {alpha >= 0}.
  struct Piece {
    bool lo_unb, hi_unb;
    double lo, hi;
  };
  std::vector<Piece> pieces;
  if (line.a == 0.0 && line.b == 0.0) {
    if (line.c >= 0.0) pieces.push_back({true, true, 0, 0});
  } else if (line.a == 0.0) {
    const double root = -line.c / line.b;
    if (line.b > 0.0) {
      pieces.push_back({false, true, root, 0});
    } else {
      pieces.push_back({true, false, 0, root});
    }
  } else {
    const double disc = line.b * line.b - 4.0 * line.a * line.c;
    if (disc < 0.0) {
      if (line.a > 0.0) pieces.push_back({true, true, 0, 0});
    } else {
      const double sq = std::sqrt(disc);
      const double r1 = (-line.b - sq) / (2.0 * line.a);
      const double r2 = (-line.b + sq) / (2.0 * line.a);
      const double lo = std::min(r1, r2), hi = std::max(r1, r2);
      if (line.a > 0.0) {
        pieces.push_back({true, false, 0, lo});
        pieces.push_back({false, true, hi, 0});
      } else {
        pieces.push_back({false, false, lo, hi});
      }
    }
  }
  if (!alpha_none) {
    for (auto& p : pieces) {
      if (!alpha_all) {
        if (alpha_lo > -kHugeMargin && (p.lo_unb || p.lo < alpha_lo)) {
          p.lo = alpha_lo;
          p.lo_unb = false;
        }
        if (alpha_hi < kHugeMargin && (p.hi_unb || p.hi > alpha_hi)) {
          p.hi = alpha_hi;
          p.hi_unb = false;
        }
      }
      if (!p.lo_unb && !p.hi_unb && p.hi < p.lo) continue;
      // The feasible set is convex, so exactly one candidate piece survives a
      // midpoint verification.
      const double sample = p.lo_unb && p.hi_unb ? 0.0
                            : p.lo_unb           ? p.hi - 1.0
                            : p.hi_unb           ? p.lo + 1.0
                                                 : 0.5 * (p.lo + p.hi);
      const double probe = p.lo_unb || p.hi_unb
                               ? sample
                               : std::clamp(sample, p.lo, p.hi);
      const double tol = 1e-12 * (1.0 + std::abs(probe));
      if (line.margin(probe) >= -tol || line.margin(p.lo_unb ? p.hi : p.lo) >= -tol) {
        r.feasible = true;
        r.lo_unbounded = p.lo_unb;
        r.hi_unbounded = p.hi_unb;
        r.lo = p.lo;
        r.hi = p.hi;
        r.witness_t = probe;
        break;
      }
    }
  }

  // Supremum of the concave margin over a wide finite bracket.
  const double bracket = std::ldexp(1.0, 60);
  const auto [arg, best] = detail::concave_max([&](double t) { return line.margin(t); },
                                               -bracket, bracket);
  r.sup_margin = std::max({best, line.margin(-bracket), line.margin(bracket)});
  if (r.feasible && line.margin(r.witness_t) < 0.0) {
    // Piece endpoints can carry rounding; fall back to the concave argmax.
    if (best >= 0.0) {
      r.witness_t = arg;
    }
  }
  return r;
}

/// Margin limits of eigmin(Y - t*D) as t -> ±inf: +inf against a definite D,
/// -inf when D has an eigenvalue of the wrong sign, otherwise the minimum of
/// Y compressed onto ker(D).
inline std::pair<double, double> psd_line_limits(const std::vector<VecT<double>>& ymat,
                                                 const std::vector<VecT<double>>& dmat,
                                                 const ScalarPolicy& policy) {
  const auto n = static_cast<Eigen::Index>(ymat.size());
  Eigen::MatrixXd dm(n, n), ym(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      dm(i, j) = dmat[i][j];
      ym(i, j) = ymat[i][j];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dm);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  const double cut = policy.band(scale);
  auto limit_for = [&](double gain) {
    // As t -> -inf the matrix gains +|t| * D (gain = +1); as t -> +inf it
    // gains -|t| * D (gain = -1).  An eigenvalue of gain * D below the band
    // drives the margin to -inf; without one, the margin settles on Y
    // compressed onto ker(D), or +inf when the kernel is empty.
    bool wrong_sign = false;
    std::vector<Eigen::Index> kernel;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ev = gain * es.eigenvalues()(i);
      if (ev < -cut) {
        wrong_sign = true;
      } else if (ev <= cut) {
        kernel.push_back(i);
      }
    }
    if (wrong_sign) return -kHugeMargin;
    if (kernel.empty()) return kHugeMargin;
    Eigen::MatrixXd u(n, static_cast<Eigen::Index>(kernel.size()));
    for (std::size_t k = 0; k < kernel.size(); ++k) u.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(kernel[k]);
    const Eigen::MatrixXd compressed = u.transpose() * ym * u;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> cs(compressed, Eigen::EigenvaluesOnly);
    return cs.eigenvalues().minCoeff();
  };
  return {limit_for(+1.0), limit_for(-1.0)};
}

/// Search-based interval for y - t*d in the embedded PSD cone.  Endpoints
/// come from probing powers of two and bisecting the concave eigenvalue
/// margin; an empty search marks the result undecided rather than infeasible.
inline LineInterval<double> psd_line_interval(const VecT<double>& y, const VecT<double>& d,
                                              const ScalarPolicy& policy) {
  check_same_dim(y, d);
  LineInterval<double> r;
  const auto ymat = smat(y);
  const auto dmat = smat(d);
  auto margin = [&](double t) {
    std::vector<VecT<double>> m(ymat.size(), VecT<double>(ymat.size()));
    for (std::size_t i = 0; i < ymat.size(); ++i) {
      for (std::size_t j = 0; j < ymat.size(); ++j) m[i][j] = ymat[i][j] - t * dmat[i][j];
    }
    return eigmin_symmetric(m);
  };
  std::tie(r.limit_neg, r.limit_pos) = psd_line_limits(ymat, dmat, policy);
  if (is_zero_vec(d)) {
    const double m = margin(0.0);
    r.feasible = m >= -policy.band(norm2_double(y));
    r.lo_unbounded = r.hi_unbounded = r.feasible;
    r.limit_neg = r.limit_pos = r.sup_margin = m;
    return r;
  }
  // The search bracket stays where float eigenvalues are still meaningful;
  // behaviour beyond it is covered by the analytic limits.
  const double bracket = std::ldexp(1.0, 30);
  const auto [arg, best] = detail::concave_max(margin, -bracket, bracket, 300);
  r.sup_margin = best;
  const double ynorm = norm2_double(y);
  // Acceptance combines the user band at the query's scale with the
  // eigenvalue evaluation noise at parameter arg (matrix norm grows with
  // |arg|); banding the user tolerance itself by |arg| would wave through
  // genuinely negative margins at the far end of the bracket.
  const double accept = -std::max(policy.band(1.0 + ynorm),
                                  1e-13 * (1.0 + ynorm + std::abs(arg) * norm2_double(d)));
  if (best < accept) {
    // Empty at every searched point; the tails decide whether that settles it.
    r.undecided = std::max(r.limit_neg, r.limit_pos) >= -policy.band(1.0 + ynorm);
    return r;
  }
  r.feasible = true;
  r.witness_t = arg;
  // Expand to the feasibility endpoints by bisection on each side.
  auto boundary = [&](double inside, double outside) {
    for (int i = 0; i < 200 && std::abs(outside - inside) >
                                   policy.abs_tol * (1.0 + std::abs(inside)); ++i) {
      const double mid = 0.5 * (inside + outside);
      if (margin(mid) >= accept) {
        inside = mid;
      } else {
        outside = mid;
      }
    }
    return inside;
  };
  if (margin(-bracket) >= accept) {
    r.lo_unbounded = r.limit_neg >= 0.0;
    if (!r.lo_unbounded) r.lo = -bracket;
  } else {
    r.lo = boundary(arg, -bracket);
  }
  if (margin(bracket) >= accept) {
    r.hi_unbounded = r.limit_pos >= 0.0;
    if (!r.hi_unbounded) r.hi = bracket;
  } else {
    r.hi = boundary(arg, bracket);
  }
  return r;
}

/// Intersection of two parameter intervals.  Margin limits combine by
/// minimum; `sup_margin` is only an upper bound after intersection and is
/// recomputed by callers that need it.
template <class S>
inline LineInterval<S> intersect_intervals(const LineInterval<S>& a, const LineInterval<S>& b) {
  LineInterval<S> r;
  r.undecided = a.undecided || b.undecided;
  r.limit_neg = std::min(a.limit_neg, b.limit_neg);
  r.limit_pos = std::min(a.limit_pos, b.limit_pos);
  r.sup_margin = std::min(a.sup_margin, b.sup_margin);
  if (!a.feasible || !b.feasible) return r;
  r.lo_unbounded = a.lo_unbounded && b.lo_unbounded;
  r.hi_unbounded = a.hi_unbounded && b.hi_unbounded;
  if (!a.lo_unbounded && !b.lo_unbounded) {
    r.lo = std::max(a.lo, b.lo);
  } else if (!a.lo_unbounded) {
    r.lo = a.lo;
  } else if (!b.lo_unbounded) {
    r.lo = b.lo;
  }
  if (!a.hi_unbounded && !b.hi_unbounded) {
    r.hi = std::min(a.hi, b.hi);
  } else if (!a.hi_unbounded) {
    r.hi = a.hi;
  } else if (!b.hi_unbounded) {
    r.hi = b.hi;
  }
  if (!r.lo_unbounded && !r.hi_unbounded && r.hi < r.lo) return r;
  r.feasible = true;
  if (!r.lo_unbounded) {
    r.witness_t = scalar_traits<S>::to_double(r.lo);
  } else if (!r.hi_unbounded) {
    r.witness_t = scalar_traits<S>::to_double(r.hi);
  }
  return r;
}

}  // namespace conedual
