#include "conedual/gallery.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <string>

#include "test_util.hpp"

namespace conedual {
namespace {

using testing::q;
using testing::vq;

const ScalarPolicy kExact = ScalarPolicy::exact();

VecT<double> vd(std::initializer_list<double> xs) { return VecT<double>(xs); }

// --- status classification ----------------------------------------------------

TEST(ClassifyTest, FourReachableCellsAndUndecided) {
  EXPECT_EQ(classify_statuses(SolveStatus::Finite, SolveStatus::Finite), Table1Cell::BothFinite);
  EXPECT_EQ(classify_statuses(SolveStatus::Infeasible, SolveStatus::UnboundedAbove),
            Table1Cell::PrimalInfeasibleDualUnbounded);
  EXPECT_EQ(classify_statuses(SolveStatus::UnboundedBelow, SolveStatus::Infeasible),
            Table1Cell::PrimalUnboundedDualInfeasible);
  EXPECT_EQ(classify_statuses(SolveStatus::Infeasible, SolveStatus::Infeasible),
            Table1Cell::BothInfeasible);
  EXPECT_EQ(classify_statuses(SolveStatus::NumericallyUndecided, SolveStatus::Finite),
            Table1Cell::Undecided);
  EXPECT_EQ(classify_statuses(SolveStatus::Finite, SolveStatus::NumericallyUndecided),
            Table1Cell::Undecided);
}

TEST(ClassifyTest, ForbiddenCombinationsThrow) {
  const SolveStatus primals[] = {SolveStatus::Finite, SolveStatus::UnboundedBelow,
                                 SolveStatus::Infeasible};
  const SolveStatus duals[] = {SolveStatus::Finite, SolveStatus::UnboundedAbove,
                               SolveStatus::Infeasible};
  int allowed = 0;
  int forbidden = 0;
  for (const auto p : primals) {
    for (const auto d : duals) {
      try {
        classify_statuses(p, d);
        ++allowed;
      } catch (const InternalInvariantViolation&) {
        ++forbidden;
      }
    }
  }
  EXPECT_EQ(allowed, 4);
  EXPECT_EQ(forbidden, 5);
}

TEST(ClassifyTest, CellNamesAreStable) {
  EXPECT_EQ(to_string(Table1Cell::BothFinite), "both_finite");
  EXPECT_EQ(to_string(Table1Cell::PrimalInfeasibleDualUnbounded),
            "primal_infeasible_dual_unbounded");
  EXPECT_EQ(to_string(Table1Cell::Impossible), "impossible");
}

TEST(ClassifyTest, NotesDiagnoseNonclosedSum) {
  // Tangent configuration: the raw sum misses its closure's attainment.
  const auto entries = builtin_gallery_float();
  const auto& e = entries.front();
  const auto out = solve_pair(e.instance);
  auto conditions = build_condition_report(e.instance);
  const auto rep = classify(e.id, e.instance, out, std::move(conditions));
  EXPECT_NE(rep.notes.find("not closed"), std::string::npos);

  // A clean finite pair reports no gap note.
  const auto inst = make_hyperplane_instance<Rational>(
      make_orthant<Rational>(2), make_full_space<Rational>(2), vq({1, 2}), vq({1, 1}), kExact);
  const auto clean = classify("clean", inst, solve_pair(inst), build_condition_report(inst));
  EXPECT_TRUE(clean.notes.empty());
  EXPECT_EQ(clean.cell, Table1Cell::BothFinite);
  EXPECT_EQ(clean.gap, ExtReal<Rational>::of(q(0)));
}

// --- curated entries -----------------------------------------------------------

TEST(GalleryTest, RationalEntriesCoverEveryReachableCell) {
  const auto entries = builtin_gallery_rational();
  ASSERT_EQ(entries.size(), 7u);

  std::set<std::string> ids;
  std::map<Table1Cell, int> cells;
  for (const auto& e : entries) {
    ids.insert(e.id);
    ++cells[e.expected_cell];
  }
  EXPECT_EQ(ids.size(), 7u);  // ids are unique
  EXPECT_EQ(cells[Table1Cell::BothFinite], 4);
  EXPECT_EQ(cells[Table1Cell::PrimalInfeasibleDualUnbounded], 1);
  EXPECT_EQ(cells[Table1Cell::PrimalUnboundedDualInfeasible], 1);
  EXPECT_EQ(cells[Table1Cell::BothInfeasible], 1);
}

TEST(GalleryTest, RationalEntriesVerifyAgainstOracle) {
  const auto reports = verify_gallery(builtin_gallery_rational());
  ASSERT_EQ(reports.size(), 7u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.notes.empty()) << r.instance_id << ": " << r.notes;
  }
}

TEST(GalleryTest, PinnedRationalValues) {
  const auto entries = builtin_gallery_rational();
  const auto reports = verify_gallery(entries);
  std::map<std::string, const DualityReport<Rational>*> by_id;
  for (const auto& r : reports) by_id[r.instance_id] = &r;

  EXPECT_EQ(by_id.at("orthant-interior-optimum")->primal.value, ExtReal<Rational>::of(q(1)));
  EXPECT_EQ(by_id.at("orthant-edge-optima")->primal.value, ExtReal<Rational>::of(q(1)));
  EXPECT_EQ(by_id.at("halfplane-boundary-optima")->primal.value, ExtReal<Rational>::of(q(1)));
  EXPECT_EQ(by_id.at("ray-pinned-optimum")->primal.value, ExtReal<Rational>::of(q(3)));
  EXPECT_EQ(by_id.at("orthant-descent-ray")->primal.value, ExtReal<Rational>::neg_inf());
  EXPECT_EQ(by_id.at("ray-level-misses")->dual_closure.value, ExtReal<Rational>::pos_inf());
  EXPECT_EQ(by_id.at("ray-level-and-cost-miss")->dual_sum.value, ExtReal<Rational>::neg_inf());

  // The edge and boundary entries are the finite cells without the line
  // condition: values still agree because the data is polyhedral.
  for (const char* id : {"orthant-edge-optima", "halfplane-boundary-optima"}) {
    const auto* r = by_id.at(id);
    EXPECT_EQ(r->conditions.td.state, TriState::Fails) << id;
    EXPECT_EQ(r->gap, ExtReal<Rational>::of(q(0))) << id;
  }
}

TEST(GalleryTest, FloatEntriesVerifyAgainstOracle) {
  const auto entries = builtin_gallery_float();
  ASSERT_EQ(entries.size(), 2u);
  const auto reports = verify_gallery(entries);

  const auto& attainment = reports[0];
  EXPECT_EQ(attainment.cell, Table1Cell::BothFinite);
  ASSERT_TRUE(attainment.dual_sum.attained.has_value());
  EXPECT_FALSE(*attainment.dual_sum.attained);
  ASSERT_TRUE(attainment.dual_closure.attained.has_value());
  EXPECT_TRUE(*attainment.dual_closure.attained);
  EXPECT_NE(attainment.notes.find("not closed"), std::string::npos);
  EXPECT_NEAR(attainment.primal.value.to_double(), 0.0, 5e-9);

  const auto& boundary = reports[1];
  EXPECT_EQ(boundary.cell, Table1Cell::PrimalInfeasibleDualUnbounded);
  EXPECT_EQ(boundary.dual_sum.status, SolveStatus::Infeasible);
  EXPECT_EQ(boundary.dual_closure.status, SolveStatus::UnboundedAbove);
}

TEST(GalleryTest, MismatchedExpectationThrows) {
  auto entries = builtin_gallery_rational();
  entries[0].expected_cell = Table1Cell::BothInfeasible;
  EXPECT_THROW(verify_gallery_entry(entries[0]), InternalInvariantViolation);

  auto flipped = builtin_gallery_rational();
  flipped[0].expected_td = TriState::Fails;
  EXPECT_THROW(verify_gallery_entry(flipped[0]), InternalInvariantViolation);
}

// --- independent oracle --------------------------------------------------------

TEST(OracleTest, GeneratorOracleMatchesHandValues) {
  // Quadrant sliced at x1 + x2 = 1 with cost (1,2): generators normalize to
  // (1,0) and (0,1) with ratios 1 and 2.
  const auto inst = make_hyperplane_instance<Rational>(
      make_orthant<Rational>(2), make_full_space<Rational>(2), vq({1, 2}), vq({1, 1}), kExact);
  const auto o = detail::polyhedral_line_oracle(inst);
  EXPECT_EQ(o.primal_status, SolveStatus::Finite);
  EXPECT_EQ(o.primal_value, ExtReal<Rational>::of(q(1)));
  EXPECT_EQ(o.dual_status, SolveStatus::Finite);
  EXPECT_EQ(o.dual_value, ExtReal<Rational>::of(q(1)));
}

TEST(OracleTest, GeneratorOracleSeesDescentAndEmptiness) {
  const auto descent = make_hyperplane_instance<Rational>(
      make_orthant<Rational>(2), make_full_space<Rational>(2), vq({0, -1}), vq({1, 0}), kExact);
  const auto od = detail::polyhedral_line_oracle(descent);
  EXPECT_EQ(od.primal_status, SolveStatus::UnboundedBelow);
  EXPECT_EQ(od.dual_status, SolveStatus::Infeasible);

  const auto empty = make_hyperplane_instance<Rational>(
      make_vrep<Rational>(2, {vq({0, 1})}), make_full_space<Rational>(2), vq({1, 2}), vq({1, 0}),
      kExact);
  const auto oe = detail::polyhedral_line_oracle(empty);
  EXPECT_EQ(oe.primal_status, SolveStatus::Infeasible);
  EXPECT_EQ(oe.dual_status, SolveStatus::UnboundedAbove);
}

TEST(OracleTest, TangentDecompositionSearch) {
  const VecT<double> normal = vd({1.0, 0.0, 1.0});
  // Shifting (0,1,0) by any multiple of the normal keeps the quadratic margin
  // at exactly -1, so the search must reject it.
  EXPECT_FALSE(detail::tangent_sum_membership(vd({0.0, 1.0, 0.0}), normal, 1e-9));
  // Lifting the third coordinate strictly inside makes large shifts work.
  EXPECT_TRUE(detail::tangent_sum_membership(vd({0.0, 1.0, 1e-6}), normal, 1e-9));
  EXPECT_TRUE(detail::tangent_sum_membership(vd({0.0, 0.0, 1.0}), normal, 1e-9));
}

TEST(OracleTest, TangentOracleRejectsForeignShapes) {
  const auto skew = make_subspace<double>(3, {vd({0.0, 1.0, 0.0}), vd({1.0, 0.0, 2.0})});
  auto inst = make_hyperplane_instance<double>(make_soc<double>(3), skew, vd({0.0, 0.0, 1.0}),
                                               vd({0.0, 0.0, 1.0}),
                                               ScalarPolicy::floating(1e-9, 1e-9));
  EXPECT_THROW(detail::tangent_line_oracle(inst, 1e-9), PolicyError);
}

// --- property suite -------------------------------------------------------------

TEST(PropertySuiteTest, PassesAndIsDeterministic) {
  const auto rep = run_property_suite(20260816u, 120);
  EXPECT_EQ(rep.requested, 120);
  EXPECT_GE(rep.built, 80);
  EXPECT_TRUE(rep.all_passed()) << format_property_report(rep);

  // Every named check must actually fire on this seed.
  for (const auto& c : rep.checks) {
    EXPECT_GT(c.passes, 0) << c.name;
    EXPECT_EQ(c.failures, 0) << c.name << ": " << c.first_failure;
  }

  const auto again = run_property_suite(20260816u, 120);
  EXPECT_EQ(format_property_report(rep), format_property_report(again));
  const auto other = run_property_suite(7u, 120);
  EXPECT_NE(format_property_report(rep), format_property_report(other));
}

TEST(PropertySuiteTest, ReportSerializesOffenders) {
  PropertySuiteReport rep;
  rep.seed = 1;
  rep.requested = 2;
  rep.built = 2;
  rep.checks.push_back(PropertyCheck{"weak-duality-ordering", 1, 1, "instance 1: dim 2"});
  EXPECT_FALSE(rep.all_passed());
  const auto text = format_property_report(rep);
  EXPECT_NE(text.find("overall: FAIL"), std::string::npos);
  EXPECT_NE(text.find("instance 1: dim 2"), std::string::npos);
  EXPECT_NE(text.find("1 passed, 1 failed"), std::string::npos);
}

}  // namespace
}  // namespace conedual
