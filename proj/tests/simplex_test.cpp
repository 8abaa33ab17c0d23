#include <gtest/gtest.h>

#include <optional>
#include <vector>

#include "conedual/simplex.hpp"
#include "test_util.hpp"

namespace conedual {
namespace {

using testing::Rng;
using testing::q;
using testing::vq;

/// Two-variable LP over <= constraints, solved by enumerating candidate
/// vertices (all pairwise constraint-line intersections).  Callers keep the
/// feasible set bounded with an explicit box so every nonempty region has an
/// optimal vertex.
struct BoxedLp2 {
  std::vector<std::pair<VecT<Rational>, Rational>> le;  // a.x <= b
  VecT<Rational> obj;

  std::optional<Rational> brute_max() const {
    auto feasible = [&](const VecT<Rational>& x) {
      for (const auto& [a, b] : le) {
        if (dot(a, x) > b) return false;
      }
      return true;
    };
    std::optional<Rational> best;
    for (std::size_t i = 0; i < le.size(); ++i) {
      for (std::size_t j = i + 1; j < le.size(); ++j) {
        const auto& ai = le[i].first;
        const auto& aj = le[j].first;
        const Rational det = ai[0] * aj[1] - ai[1] * aj[0];
        if (det == 0) continue;
        const VecT<Rational> x = {(le[i].second * aj[1] - ai[1] * le[j].second) / det,
                                  (ai[0] * le[j].second - le[i].second * aj[0]) / det};
        if (!feasible(x)) continue;
        const Rational v = dot(obj, x);
        if (!best || v > *best) best = v;
      }
    }
    return best;
  }
};

TEST(Simplex, TextbookMaximum) {
  // max 3x + 2y  s.t.  x + y <= 4, x <= 2, x, y >= 0.
  LpProblem<Rational> lp;
  lp.add_var(true);
  lp.add_var(true);
  lp.add_constraint(vq({1, 1}), LpRel::Le, q(4));
  lp.add_constraint(vq({1, 0}), LpRel::Le, q(2));
  lp.set_objective(vq({3, 2}), true);
  const auto out = lp.solve();
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_EQ(out.value, q(10));
  EXPECT_EQ(out.x, vq({2, 2}));  // unique optimal vertex

  // Vertex-enumeration cross-check of the same instance.
  BoxedLp2 ref;
  ref.le = {{vq({1, 1}), q(4)}, {vq({1, 0}), q(2)}, {vq({-1, 0}), q(0)}, {vq({0, -1}), q(0)}};
  ref.obj = vq({3, 2});
  ASSERT_TRUE(ref.brute_max().has_value());
  EXPECT_EQ(*ref.brute_max(), q(10));
}

TEST(Simplex, InfeasibleSystem) {
  LpProblem<Rational> lp;
  lp.add_var(true);
  lp.add_var(true);
  lp.add_constraint(vq({1, 1}), LpRel::Le, q(-1));
  lp.set_objective(vq({1, 0}), true);
  EXPECT_EQ(lp.solve().status, LpStatus::Infeasible);
}

TEST(Simplex, UnboundedWithImprovingRay) {
  // max x  s.t.  -x + y <= 1, x, y >= 0.
  LpProblem<Rational> lp;
  lp.add_var(true);
  lp.add_var(true);
  lp.add_constraint(vq({-1, 1}), LpRel::Le, q(1));
  lp.set_objective(vq({1, 0}), true);
  const auto out = lp.solve();
  ASSERT_EQ(out.status, LpStatus::Unbounded);
  ASSERT_EQ(out.ray.size(), 2u);
  // The ray improves the objective, keeps the constraint, and stays
  // nonnegative.
  EXPECT_GT(dot(vq({1, 0}), out.ray), q(0));
  EXPECT_LE(dot(vq({-1, 1}), out.ray), q(0));
  EXPECT_GE(out.ray[0], q(0));
  EXPECT_GE(out.ray[1], q(0));
  // The start of the ray is feasible.
  EXPECT_LE(dot(vq({-1, 1}), out.x), q(1));
}

TEST(Simplex, EqualityAndFreeVariables) {
  // min x + y  s.t.  x - y = 3, x free, y >= 0  ->  3 at (3, 0).
  LpProblem<Rational> lp;
  lp.add_var(false);
  lp.add_var(true);
  lp.add_constraint(vq({1, -1}), LpRel::Eq, q(3));
  lp.set_objective(vq({1, 1}), false);
  const auto out = lp.solve();
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_EQ(out.value, q(3));
  EXPECT_EQ(out.x, vq({3, 0}));

  // Both free: x + y = 1, x - y = 0 pins (1/2, 1/2) regardless of objective.
  LpProblem<Rational> pin;
  pin.add_var(false);
  pin.add_var(false);
  pin.add_constraint(vq({1, 1}), LpRel::Eq, q(1));
  pin.add_constraint(vq({1, -1}), LpRel::Eq, q(0));
  pin.set_objective(vq({-5, 7}), true);
  const auto pinned = pin.solve();
  ASSERT_EQ(pinned.status, LpStatus::Optimal);
  EXPECT_EQ(pinned.x, (VecT<Rational>{q(1, 2), q(1, 2)}));
  EXPECT_EQ(pinned.value, q(1));
}

TEST(Simplex, FreeVariableNegativeOptimum) {
  // min x  s.t.  x >= -5 (as -x <= 5), x free.
  LpProblem<Rational> lp;
  lp.add_var(false);
  lp.add_constraint(vq({-1}), LpRel::Le, q(5));
  lp.set_objective(vq({1}), false);
  const auto out = lp.solve();
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_EQ(out.value, q(-5));
  EXPECT_EQ(out.x, vq({-5}));
}

TEST(Simplex, DegenerateRedundantRows) {
  // Duplicated and scaled copies of the same facet must not confuse Bland's
  // rule or the artificial-variable cleanup.
  LpProblem<Rational> lp;
  lp.add_var(true);
  lp.add_var(true);
  lp.add_constraint(vq({1, 1}), LpRel::Le, q(2));
  lp.add_constraint(vq({1, 1}), LpRel::Le, q(2));
  lp.add_constraint(vq({2, 2}), LpRel::Le, q(4));
  lp.add_constraint(vq({1, 0}), LpRel::Le, q(1));
  lp.add_constraint(vq({0, 1}), LpRel::Le, q(1));
  lp.add_constraint(vq({1, 1}), LpRel::Ge, q(2));  // forces the optimal facet
  lp.set_objective(vq({1, 1}), true);
  const auto out = lp.solve();
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_EQ(out.value, q(2));
  EXPECT_EQ(out.x[0] + out.x[1], q(2));
}

TEST(Simplex, NonnegativeSolve) {
  // x1 + x2 = 1 has nonnegative solutions.
  const auto sol = nonnegative_solve<Rational>({vq({1, 1})}, vq({1}), 2);
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ((*sol)[0] + (*sol)[1], q(1));
  EXPECT_GE((*sol)[0], q(0));
  EXPECT_GE((*sol)[1], q(0));

  EXPECT_FALSE(nonnegative_solve<Rational>({vq({1, 1})}, vq({-1}), 2).has_value());

  // Mixed rows: x1 - x2 = 1, x1 + x2 = 3  ->  (2, 1).
  const auto mixed = nonnegative_solve<Rational>({vq({1, -1}), vq({1, 1})}, vq({1, 3}), 2);
  ASSERT_TRUE(mixed.has_value());
  EXPECT_EQ(*mixed, vq({2, 1}));
}

TEST(Simplex, RandomBoxedInstancesMatchVertexEnumeration) {
  int optimal = 0, infeasible = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    LpProblem<Rational> lp;
    lp.add_var(true);
    lp.add_var(true);
    BoxedLp2 ref;
    // Nonnegativity and the box keep the brute-force region bounded.
    ref.le = {{vq({-1, 0}), q(0)}, {vq({0, -1}), q(0)}, {vq({1, 0}), q(10)},
              {vq({0, 1}), q(10)}};
    lp.add_constraint(vq({1, 0}), LpRel::Le, q(10));
    lp.add_constraint(vq({0, 1}), LpRel::Le, q(10));
    const long long ncons = rng.range(1, 4);
    for (long long k = 0; k < ncons; ++k) {
      const VecT<Rational> a = vq({rng.range(-3, 3), rng.range(-3, 3)});
      const Rational b = q(rng.range(-2, 6));
      if (rng.range(0, 1) == 0) {
        lp.add_constraint(a, LpRel::Le, b);
        ref.le.push_back({a, b});
      } else {
        lp.add_constraint(a, LpRel::Ge, b);
        ref.le.push_back({vec_neg(a), -b});
      }
    }
    ref.obj = vq({rng.range(-3, 3), rng.range(-3, 3)});
    lp.set_objective(ref.obj, true);

    const auto got = lp.solve();
    const auto want = ref.brute_max();
    if (!want) {
      EXPECT_EQ(got.status, LpStatus::Infeasible) << "seed " << seed;
      ++infeasible;
      continue;
    }
    ASSERT_EQ(got.status, LpStatus::Optimal) << "seed " << seed;
    EXPECT_EQ(got.value, *want) << "seed " << seed;
    EXPECT_EQ(dot(ref.obj, got.x), got.value) << "seed " << seed;
    for (const auto& [a, b] : ref.le) {
      EXPECT_LE(dot(a, got.x), b) << "seed " << seed;
    }
    ++optimal;
  }
  // The generator must exercise both outcomes.
  EXPECT_GT(optimal, 50);
  EXPECT_GT(infeasible, 10);
}

}  // namespace
}  // namespace conedual
