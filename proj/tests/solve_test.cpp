#include "conedual/solve.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "conedual/cone.hpp"
#include "test_util.hpp"

namespace conedual {
namespace {

using testing::q;
using testing::vq;

const ScalarPolicy kExact = ScalarPolicy::exact();
const ScalarPolicy kFloat = ScalarPolicy::floating(1e-9, 1e-9);

VecT<double> vd(std::initializer_list<double> xs) { return VecT<double>(xs); }

ConeRep<double> soc3f() { return make_soc<double>(3); }

// Plane tangent to the quadratic cone along the ray through (-1, 0, 1).
ConeRep<double> tangent_plane() {
  return make_subspace<double>(3, {vd({0, 1, 0}), vd({-1, 0, 1})});
}

TEST(ExtRealTest, GapConventions) {
  using E = ExtReal<double>;
  EXPECT_EQ(ext_gap(E::pos_inf(), E::pos_inf()), E::of(0.0));
  EXPECT_EQ(ext_gap(E::neg_inf(), E::neg_inf()), E::of(0.0));
  EXPECT_EQ(ext_gap(E::pos_inf(), E::of(3.0)), E::pos_inf());
  EXPECT_EQ(ext_gap(E::of(3.0), E::neg_inf()), E::pos_inf());
  EXPECT_EQ(ext_gap(E::of(5.0), E::of(3.0)), E::of(2.0));
  EXPECT_TRUE(ext_less_equal(E::neg_inf(), E::of(-1e308)));
  EXPECT_TRUE(ext_less_equal(E::of(1e308), E::pos_inf()));
  EXPECT_FALSE(ext_less_equal(E::pos_inf(), E::of(1e308)));
  EXPECT_TRUE(ext_less_equal(E::of(1.0), E::of(1.0)));
}

// --- line problem, exact -----------------------------------------------

TEST(DualLineExactTest, OrthantFiniteAttained) {
  const auto J = make_orthant<Rational>(2);
  const auto out = solve_dual_line(J, vq({1, 2}), vq({1, 1}), kExact);
  EXPECT_EQ(out.status, SolveStatus::Finite);
  EXPECT_EQ(out.value, ExtReal<Rational>::of(q(1)));
  ASSERT_TRUE(out.t_star.has_value());
  EXPECT_EQ(*out.t_star, q(1));
  ASSERT_TRUE(out.attained.has_value());
  EXPECT_TRUE(*out.attained);
  EXPECT_FALSE(out.numerically_uncertain);
}

TEST(DualLineExactTest, OrthantInfeasibleWithCertificate) {
  const auto J = make_orthant<Rational>(2);
  const auto out = solve_dual_line(J, vq({0, -1}), vq({1, 0}), kExact);
  EXPECT_EQ(out.status, SolveStatus::Infeasible);
  EXPECT_EQ(out.value, ExtReal<Rational>::neg_inf());
  ASSERT_TRUE(out.certificate.has_value());
  const auto& w = *out.certificate;
  EXPECT_LT(scalar_traits<Rational>::sign(dot(w, vq({0, -1}))), 0);
  EXPECT_EQ(scalar_traits<Rational>::sign(dot(w, vq({1, 0}))), 0);
  for (const auto& wi : w) EXPECT_GE(scalar_traits<Rational>::sign(wi), 0);
}

TEST(DualLineExactTest, CrossingBoundsCertificate) {
  // t <= -2 from the first row and t >= -1 from the second: empty interval.
  const auto J = make_hrep<Rational>(2, {vq({1, 0}), vq({0, 1})});
  const auto out = solve_dual_line(J, vq({-2, 1}), vq({1, -1}), kExact);
  EXPECT_EQ(out.status, SolveStatus::Infeasible);
  ASSERT_TRUE(out.certificate.has_value());
  const auto& w = *out.certificate;
  EXPECT_LT(scalar_traits<Rational>::sign(dot(w, vq({-2, 1}))), 0);
  EXPECT_EQ(scalar_traits<Rational>::sign(dot(w, vq({1, -1}))), 0);
}

TEST(DualLineExactTest, UnboundedExactlyWhenNegatedLevelInside) {
  const auto half = make_vrep<Rational>(2, {vq({1, 0}), vq({-1, 0}), vq({0, 1})});
  const auto up = solve_dual_line(half, vq({3, 5}), vq({0, -1}), kExact);
  EXPECT_EQ(up.status, SolveStatus::UnboundedAbove);
  EXPECT_EQ(up.value, ExtReal<Rational>::pos_inf());
  ASSERT_TRUE(up.certificate.has_value());
  EXPECT_EQ(*up.certificate, vq({0, 1}));

  const auto down = solve_dual_line(half, vq({3, 5}), vq({0, 1}), kExact);
  EXPECT_EQ(down.status, SolveStatus::Finite);
  EXPECT_EQ(down.value, ExtReal<Rational>::of(q(5)));
}

TEST(DualLineExactTest, DualSumHalfplaneAttained) {
  // Duals summed: orthant + span{(-1,1)} = {y : y_1 + y_2 >= 0}.
  const auto J = make_dual_sum<Rational>(
      {make_orthant<Rational>(2), make_subspace<Rational>(2, {vq({1, 1})})});
  const auto out = solve_dual_line(J, vq({1, 2}), vq({1, 1}), kExact);
  EXPECT_EQ(out.status, SolveStatus::Finite);
  EXPECT_EQ(out.value, ExtReal<Rational>::of(q(3, 2)));
  ASSERT_TRUE(out.attained.has_value());
  EXPECT_TRUE(*out.attained);
}

TEST(DualLineExactTest, RejectsZeroLevelAndNonPolyhedral) {
  EXPECT_THROW(solve_dual_line(make_orthant<Rational>(2), vq({1, 1}), vq({0, 0}), kExact),
               InvalidInstance);
  EXPECT_THROW(
      solve_dual_line(ConeRep<Rational>(3, SocCone{}), vq({0, 0, 1}), vq({0, 0, 1}), kExact),
      PolicyError);
}

// --- line problem, float ------------------------------------------------

TEST(DualLineFloatTest, PolyhedralSumMatchesExact) {
  const auto J = make_dual_sum<double>(
      {make_orthant<double>(2), make_subspace<double>(2, {vd({1, 1})})});
  const auto out = solve_dual_line(J, vd({1, 2}), vd({1, 1}), kFloat);
  EXPECT_EQ(out.status, SolveStatus::Finite);
  EXPECT_NEAR(out.value.to_double(), 1.5, 1e-6);
  ASSERT_TRUE(out.attained.has_value());
  EXPECT_TRUE(*out.attained);
}

TEST(DualLineFloatTest, SocFinite) {
  const auto out = solve_dual_line(soc3f(), vd({1, 0, 0}), vd({0, 0, 1}), kFloat);
  EXPECT_EQ(out.status, SolveStatus::Finite);
  EXPECT_NEAR(out.value.to_double(), -1.0, 1e-6);
  ASSERT_TRUE(out.attained.has_value());
  EXPECT_TRUE(*out.attained);
}

TEST(DualLineFloatTest, SocUnboundedIffNegatedLevelInside) {
  const auto up = solve_dual_line(soc3f(), vd({0, 0, 0}), vd({0, 0, -1}), kFloat);
  EXPECT_EQ(up.status, SolveStatus::UnboundedAbove);

  const auto capped = solve_dual_line(soc3f(), vd({0, 0, 0}), vd({0, 0, 1}), kFloat);
  EXPECT_EQ(capped.status, SolveStatus::Finite);
  EXPECT_NEAR(capped.value.to_double(), 0.0, 1e-9);
}

TEST(DualLineFloatTest, SubspaceInfeasible) {
  const auto J = make_subspace<double>(3, {vd({1, 0, 0})});
  const auto out = solve_dual_line(J, vd({0, 1, 0}), vd({0, 0, 1}), kFloat);
  EXPECT_EQ(out.status, SolveStatus::Infeasible);
  EXPECT_EQ(out.value, ExtReal<double>::neg_inf());
}

TEST(DualLineFloatTest, TangentSumSupremumNotAttained) {
  const auto J = make_dual_sum<double>({soc3f(), tangent_plane()});
  const auto out = solve_dual_line(J, vd({0, 1, 0}), vd({0, 0, 1}), kFloat);
  EXPECT_EQ(out.status, SolveStatus::Finite);
  EXPECT_NEAR(out.value.to_double(), 0.0, 5e-9);
  ASSERT_TRUE(out.attained.has_value());
  EXPECT_FALSE(*out.attained);
  EXPECT_TRUE(out.numerically_uncertain);
  EXPECT_FALSE(out.note.empty());
}

TEST(DualLineFloatTest, TangentClosureSupremumAttained) {
  const auto K = make_intersection<double>({soc3f(), tangent_plane()});
  const auto out = solve_dual_line(dual(K, kFloat), vd({0, 1, 0}), vd({0, 0, 1}), kFloat);
  EXPECT_EQ(out.status, SolveStatus::Finite);
  EXPECT_NEAR(out.value.to_double(), 0.0, 5e-9);
  ASSERT_TRUE(out.attained.has_value());
  EXPECT_TRUE(*out.attained);
  ASSERT_TRUE(out.t_star.has_value());
  EXPECT_NEAR(*out.t_star, 0.0, 5e-9);
}

// --- hyperplane problem, exact -------------------------------------------

TEST(PrimalExactTest, OrthantRatioRule) {
  const auto K = make_orthant<Rational>(2);
  const auto out = solve_primal_hyperplane(K, vq({1, 2}), vq({1, 1}), kExact);
  EXPECT_EQ(out.status, SolveStatus::Finite);
  EXPECT_EQ(out.value, ExtReal<Rational>::of(q(1)));
  ASSERT_TRUE(out.solution.has_value());
  EXPECT_EQ(*out.solution, vq({1, 0}));
  ASSERT_TRUE(out.attained.has_value());
  EXPECT_TRUE(*out.attained);
}

TEST(PrimalExactTest, TieBreaksLexicographically) {
  const auto K = make_orthant<Rational>(2);
  const auto out = solve_primal_hyperplane(K, vq({1, 1}), vq({1, 1}), kExact);
  EXPECT_EQ(out.value, ExtReal<Rational>::of(q(1)));
  ASSERT_TRUE(out.solution.has_value());
  EXPECT_EQ(*out.solution, vq({0, 1}));
}

TEST(PrimalExactTest, OrthantUnboundedBelow) {
  const auto K = make_orthant<Rational>(2);
  const auto out = solve_primal_hyperplane(K, vq({0, -1}), vq({1, 0}), kExact);
  EXPECT_EQ(out.status, SolveStatus::UnboundedBelow);
  EXPECT_EQ(out.value, ExtReal<Rational>::neg_inf());
  ASSERT_TRUE(out.certificate.has_value());
  EXPECT_EQ(*out.certificate, vq({0, 1}));
}

TEST(PrimalExactTest, ZeroConeInfeasible) {
  const auto K = make_vrep<Rational>(2, {});
  const auto out = solve_primal_hyperplane(K, vq({1, 1}), vq({1, 0}), kExact);
  EXPECT_EQ(out.status, SolveStatus::Infeasible);
  EXPECT_EQ(out.value, ExtReal<Rational>::pos_inf());
}

TEST(PrimalExactTest, RejectsLevelOutsideDual) {
  const auto K = make_orthant<Rational>(2);
  EXPECT_THROW(solve_primal_hyperplane(K, vq({1, 1}), vq({-1, 0}), kExact), InvalidInstance);
}

// --- hyperplane problem, float -------------------------------------------

TEST(PrimalFloatTest, SocBoundaryOptimum) {
  const auto out = solve_primal_hyperplane(soc3f(), vd({1, 0, 2}), vd({0, 0, 1}), kFloat);
  EXPECT_EQ(out.status, SolveStatus::Finite);
  EXPECT_NEAR(out.value.to_double(), 1.0, 1e-6);
  ASSERT_TRUE(out.attained.has_value());
  EXPECT_TRUE(*out.attained);
  ASSERT_TRUE(out.solution.has_value());
  const auto& x = *out.solution;
  EXPECT_NEAR(x[0], -1.0, 1e-6);
  EXPECT_NEAR(x[1], 0.0, 1e-6);
  EXPECT_NEAR(x[2], 1.0, 1e-6);
}

TEST(PrimalFloatTest, SocUnboundedAlongTangentRay) {
  const auto out = solve_primal_hyperplane(soc3f(), vd({1, 0, 0}), vd({1, 0, 1}), kFloat);
  EXPECT_EQ(out.status, SolveStatus::UnboundedBelow);
  ASSERT_TRUE(out.certificate.has_value());
  const auto& d = *out.certificate;
  EXPECT_NEAR(dot(d, vd({1, 0, 1})), 0.0, 1e-7);
  EXPECT_LT(dot(d, vd({1, 0, 0})), 0.0);
  EXPECT_NE(member(soc3f(), d, kFloat).verdict, Verdict::Outside);
}

TEST(PrimalFloatTest, TangentIntersectionAttained) {
  const auto K = make_intersection<double>({soc3f(), tangent_plane()});
  const auto out = solve_primal_hyperplane(K, vd({0, 1, 0}), vd({0, 0, 1}), kFloat);
  EXPECT_EQ(out.status, SolveStatus::Finite);
  EXPECT_NEAR(out.value.to_double(), 0.0, 1e-7);
  ASSERT_TRUE(out.attained.has_value());
  EXPECT_TRUE(*out.attained);
  ASSERT_TRUE(out.solution.has_value());
  const auto& x = *out.solution;
  EXPECT_NEAR(x[0], -1.0, 1e-6);
  EXPECT_NEAR(x[1], 0.0, 1e-6);
  EXPECT_NEAR(x[2], 1.0, 1e-6);
}

TEST(PrimalFloatTest, VanishingProjectedLevelIsInfeasible) {
  const auto K = make_intersection<double>({soc3f(), tangent_plane()});
  const auto out = solve_primal_hyperplane(K, vd({0, 1, 0}), vd({1, 0, 1}), kFloat);
  EXPECT_EQ(out.status, SolveStatus::Infeasible);
  EXPECT_EQ(out.value, ExtReal<double>::pos_inf());
}

// --- paired formulations ---------------------------------------------------

TEST(SolvePairTest, TangentSupremumAttainsOnlyInClosure) {
  const auto inst = make_hyperplane_instance<double>(soc3f(), tangent_plane(), vd({0, 1, 0}),
                                                     vd({0, 0, 1}), kFloat);
  const auto out = solve_pair(inst);
  EXPECT_EQ(out.primal.status, SolveStatus::Finite);
  EXPECT_NEAR(out.primal.value.to_double(), 0.0, 1e-7);
  EXPECT_TRUE(out.primal.attained.value_or(false));
  EXPECT_EQ(out.dual_sum.status, SolveStatus::Finite);
  EXPECT_NEAR(out.dual_sum.value.to_double(), 0.0, 1e-7);
  EXPECT_FALSE(out.dual_sum.attained.value_or(true));
  EXPECT_EQ(out.dual_closure.status, SolveStatus::Finite);
  EXPECT_TRUE(out.dual_closure.attained.value_or(false));
  EXPECT_TRUE(out.gap.is_finite());
  EXPECT_NEAR(out.gap.to_double(), 0.0, 1e-7);
  EXPECT_NEAR(out.reference_gap.to_double(), 0.0, 1e-7);
}

TEST(SolvePairTest, TangentInfeasibleLevelSplitsTheFormulations) {
  const auto inst = make_hyperplane_instance<double>(soc3f(), tangent_plane(), vd({0, 1, 0}),
                                                     vd({1, 0, 1}), kFloat);
  const auto out = solve_pair(inst);
  EXPECT_EQ(out.primal.status, SolveStatus::Infeasible);
  EXPECT_EQ(out.primal.value, ExtReal<double>::pos_inf());
  EXPECT_EQ(out.dual_sum.status, SolveStatus::Infeasible);
  EXPECT_EQ(out.dual_sum.value, ExtReal<double>::neg_inf());
  EXPECT_EQ(out.dual_closure.status, SolveStatus::UnboundedAbove);
  EXPECT_EQ(out.dual_closure.value, ExtReal<double>::pos_inf());
  EXPECT_EQ(out.gap, ExtReal<double>::pos_inf());
  EXPECT_EQ(out.reference_gap, ExtReal<double>::of(0.0));
}

TEST(SolvePairTest, PolyhedralPairHasNoGap) {
  const auto inst = make_hyperplane_instance<Rational>(
      make_vrep<Rational>(2, {vq({1, 0}), vq({1, 1})}), make_hrep<Rational>(2, {vq({0, 1})}),
      vq({-1, 2}), vq({1, 0}), kExact);
  const auto out = solve_pair(inst);
  EXPECT_EQ(out.primal.status, SolveStatus::Finite);
  EXPECT_EQ(out.primal.value, ExtReal<Rational>::of(q(-1)));
  EXPECT_EQ(out.dual_sum.value, ExtReal<Rational>::of(q(-1)));
  EXPECT_EQ(out.dual_closure.value, ExtReal<Rational>::of(q(-1)));
  EXPECT_EQ(out.gap, ExtReal<Rational>::of(q(0)));
}

TEST(SolvePairTest, InstanceFactoryValidates) {
  EXPECT_THROW(make_hyperplane_instance<Rational>(make_orthant<Rational>(2),
                                                  make_orthant<Rational>(3), vq({1, 1}),
                                                  vq({1, 1}), kExact),
               DimensionError);
  EXPECT_THROW(make_hyperplane_instance<Rational>(make_orthant<Rational>(2),
                                                  make_orthant<Rational>(2), vq({1, 1}),
                                                  vq({0, 0}), kExact),
               InvalidInstance);
  EXPECT_THROW(make_hyperplane_instance<Rational>(make_orthant<Rational>(2),
                                                  make_orthant<Rational>(2), vq({1, 1}),
                                                  vq({-1, 0}), kExact),
               InvalidInstance);
}

// --- projection reduction ---------------------------------------------------

TEST(ProjectionTest, ReducesRayInstance) {
  const auto K = make_vrep<Rational>(2, {vq({0, 1})});
  const auto r = reduce_by_projection(K, vq({2, 3}), vq({1, 1}), kExact);
  EXPECT_EQ(r.q_hat, vq({0, 3}));
  EXPECT_EQ(r.h_hat, vq({0, 1}));
  EXPECT_EQ(r.span.dim(), 1u);

  const auto full = solve_primal_hyperplane(K, vq({2, 3}), vq({1, 1}), kExact);
  const auto reduced = solve_primal_hyperplane(K, r.q_hat, r.h_hat, kExact);
  EXPECT_EQ(full.status, reduced.status);
  EXPECT_EQ(full.value, reduced.value);
  EXPECT_EQ(*full.solution, *reduced.solution);
  EXPECT_EQ(full.value, ExtReal<Rational>::of(q(3)));
}

TEST(ProjectionTest, VanishingReducedLevelSplitsByObjective) {
  // Level functional orthogonal to the span: the primal is infeasible and the
  // reduced line problem degenerates to a pure membership question.
  const auto K = make_vrep<Rational>(2, {vq({0, 1})});
  const auto r = reduce_by_projection(K, vq({1, 2}), vq({1, 0}), kExact);
  EXPECT_TRUE(is_zero_vec(r.h_hat));

  const auto primal = solve_primal_hyperplane(K, vq({1, 2}), vq({1, 0}), kExact);
  EXPECT_EQ(primal.status, SolveStatus::Infeasible);

  const auto J = make_vrep<Rational>(2, {vq({0, 1})});  // dual cone cut to the span
  const auto inside = solve_dual_line_reduced(J, vq({0, 2}), r.h_hat, kExact);
  EXPECT_EQ(inside.status, SolveStatus::UnboundedAbove);
  const auto outside = solve_dual_line_reduced(J, vq({0, -2}), r.h_hat, kExact);
  EXPECT_EQ(outside.status, SolveStatus::Infeasible);
}

// --- randomized invariants ---------------------------------------------------

TEST(SolveInvariantTest, PolyhedralWeakDualityAndProjection) {
  testing::Rng rng(20260816);
  int built = 0;
  for (int it = 0; it < 200 && built < 60; ++it) {
    std::vector<VecT<Rational>> gens;
    const int ng = static_cast<int>(rng.range(1, 3));
    for (int i = 0; i < ng; ++i) gens.push_back(vq({rng.range(-3, 3), rng.range(-3, 3)}));
    const auto K1 = make_vrep<Rational>(2, std::move(gens));
    const auto K2 = rng.range(0, 1) ? make_orthant<Rational>(2)
                                    : make_vrep<Rational>(2, {vq({rng.range(-2, 2), 1})});
    // A level functional inside the dual: a nonnegative combination of the
    // canonical halfspaces of the first cone.
    VecT<Rational> h = zero_vec<Rational>(2);
    for (const auto& a : K1.poly_pair().halfspaces) {
      h = vec_add(h, vec_scale(a, q(rng.range(0, 2))));
    }
    if (is_zero_vec(h)) continue;
    const VecT<Rational> qv = vq({rng.range(-4, 4), rng.range(-4, 4)});
    const auto inst = make_hyperplane_instance<Rational>(K1, K2, qv, h, kExact);
    const auto out = solve_pair(inst);
    ++built;

    EXPECT_TRUE(ext_less_equal(out.dual_sum.value, out.primal.value));
    EXPECT_TRUE(ext_less_equal(out.dual_sum.value, out.dual_closure.value));
    EXPECT_TRUE(ext_less_equal(out.dual_closure.value, out.primal.value));
    // Everything here is polyhedral, so the sum is closed and any finite side
    // forces agreement across all three formulations.
    if (out.primal.status == SolveStatus::Finite ||
        out.dual_sum.status == SolveStatus::Finite) {
      EXPECT_EQ(out.primal.value, out.dual_sum.value);
      EXPECT_EQ(out.primal.value, out.dual_closure.value);
    }

    const auto K = make_intersection<Rational>({inst.K1, inst.K2});
    const auto r = reduce_by_projection(K, inst.q, inst.h, kExact);
    if (!is_zero_vec(r.h_hat)) {
      const auto full = solve_primal_hyperplane(K, inst.q, inst.h, kExact);
      const auto reduced = solve_primal_hyperplane(K, r.q_hat, r.h_hat, kExact);
      EXPECT_EQ(full.status, reduced.status);
      EXPECT_EQ(full.value, reduced.value);
    }
  }
  EXPECT_GE(built, 40);
}

TEST(SolveInvariantTest, LineOptimumReverifiesMembership) {
  testing::Rng rng(77);
  for (int it = 0; it < 60; ++it) {
    std::vector<VecT<Rational>> normals;
    const int na = static_cast<int>(rng.range(1, 3));
    for (int i = 0; i < na; ++i) {
      auto a = vq({rng.range(-3, 3), rng.range(-3, 3)});
      if (is_zero_vec(a)) a = vq({1, 0});
      normals.push_back(a);
    }
    const auto J = make_hrep<Rational>(2, std::move(normals));
    const VecT<Rational> qv = vq({rng.range(-4, 4), rng.range(-4, 4)});
    VecT<Rational> h = vq({rng.range(-2, 2), rng.range(-2, 2)});
    if (is_zero_vec(h)) h = vq({1, 1});
    const auto out = solve_dual_line(J, qv, h, kExact);
    const bool neg_h_in = member(J, vec_neg(h), kExact).verdict != Verdict::Outside;
    if (out.status == SolveStatus::UnboundedAbove) {
      EXPECT_TRUE(neg_h_in);
    } else if (out.status == SolveStatus::Finite) {
      EXPECT_FALSE(neg_h_in);
      const auto x = vec_sub(qv, vec_scale(h, *out.t_star));
      EXPECT_NE(member(J, x, kExact).verdict, Verdict::Outside);
    }
  }
}

TEST(SolveBatchTest, DeterministicAndMatchesSingleCalls) {
  std::vector<HyperplaneInstance<double>> batch;
  batch.push_back(make_hyperplane_instance<double>(soc3f(), tangent_plane(), vd({0, 1, 0}),
                                                   vd({0, 0, 1}), kFloat));
  batch.push_back(
      make_single_cone_instance<double>(make_orthant<double>(2), vd({1, 2}), vd({1, 1}), kFloat));
  batch.push_back(make_hyperplane_instance<double>(soc3f(), tangent_plane(), vd({0, 1, 0}),
                                                   vd({1, 0, 1}), kFloat));
  const auto first = solve_batch(batch);
  const auto second = solve_batch(batch);
  ASSERT_EQ(first.size(), batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    EXPECT_EQ(first[i].primal.status, second[i].primal.status);
    EXPECT_EQ(first[i].primal.value, second[i].primal.value);
    EXPECT_EQ(first[i].dual_sum.value, second[i].dual_sum.value);
    EXPECT_EQ(first[i].dual_closure.value, second[i].dual_closure.value);
    const auto single = solve_pair(batch[i]);
    EXPECT_EQ(single.primal.value, first[i].primal.value);
    EXPECT_EQ(single.dual_sum.value, first[i].dual_sum.value);
  }
}

}  // namespace
}  // namespace conedual
