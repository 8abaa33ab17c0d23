#include "conedual/conedual.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "test_util.hpp"

namespace conedual {
namespace {

using testing::q;
using testing::vq;

const ScalarPolicy kExact = ScalarPolicy::exact();

VecT<double> vd(std::initializer_list<double> xs) { return VecT<double>(xs); }

// --- scalars and points ---------------------------------------------------------

TEST(ScalarJsonTest, RationalRoundTripAndForms) {
  EXPECT_EQ(scalar_to_json(q(3) / q(6)).get<std::string>(), "1/2");
  EXPECT_EQ(scalar_to_json(q(-4)).get<std::string>(), "-4/1");
  EXPECT_EQ(scalar_from_json<Rational>(Json("7/3")), q(7) / q(3));
  EXPECT_EQ(scalar_from_json<Rational>(Json("-9")), q(-9));
  EXPECT_EQ(scalar_from_json<Rational>(Json(5)), q(5));
  EXPECT_THROW(scalar_from_json<Rational>(Json("3/0")), InvalidInstance);
  EXPECT_THROW(scalar_from_json<Rational>(Json("abc")), InvalidInstance);
  EXPECT_THROW(scalar_from_json<Rational>(Json(1.5)), InvalidInstance);
}

TEST(ScalarJsonTest, FloatsAreNumbersWithCanonicalZero) {
  EXPECT_EQ(scalar_to_json(-0.0).dump(), "0.0");
  EXPECT_EQ(scalar_to_json(2.5).get<double>(), 2.5);
  EXPECT_EQ(scalar_from_json<double>(Json(-1.25)), -1.25);
  EXPECT_THROW(scalar_from_json<double>(Json("1.0")), InvalidInstance);
}

TEST(PointJsonTest, RoundTripAndValidation) {
  const auto x = vq({1, -2});
  const Json j = point_to_json(x);
  EXPECT_EQ(j.at("dim").get<std::size_t>(), 2u);
  EXPECT_EQ(point_from_json<Rational>(j), x);
  EXPECT_THROW(point_from_json<Rational>(Json{{"dim", 3}, {"coords", Json::array()}}),
               InvalidInstance);
  EXPECT_THROW(point_from_json<Rational>(Json(7)), InvalidInstance);
}

// --- cones -----------------------------------------------------------------------

template <class S>
void expect_same_membership(const ConeRep<S>& a, const ConeRep<S>& b, const ScalarPolicy& pol) {
  ASSERT_EQ(a.ambient_dim(), b.ambient_dim());
  testing::Rng rng(5);
  for (int it = 0; it < 12; ++it) {
    VecT<S> x;
    for (std::size_t i = 0; i < a.ambient_dim(); ++i) x.push_back(S(rng.range(-3, 3)));
    EXPECT_EQ(member(a, x, pol).verdict, member(b, x, pol).verdict);
  }
}

TEST(ConeJsonTest, EveryVariantRoundTrips) {
  const std::vector<ConeRep<Rational>> cones{
      make_hrep<Rational>(2, {vq({1, 0}), vq({1, 1})}),
      make_vrep<Rational>(2, {vq({2, 1}), vq({0, 1})}),
      make_orthant<Rational>(3),
      make_subspace<Rational>(3, {vq({1, 0, -1})}),
      make_zero_cone<Rational>(2),
      make_product<Rational>({make_orthant<Rational>(1), make_vrep<Rational>(2, {vq({1, 1})})}),
      make_intersection<Rational>({make_orthant<Rational>(2), make_hrep<Rational>(2, {vq({1, -1})})}),
      make_dual_sum<Rational>({make_orthant<Rational>(2), make_vrep<Rational>(2, {vq({1, 2})})}),
  };
  for (const auto& c : cones) {
    const Json j = cone_to_json(c);
    const auto back = cone_from_json<Rational>(j);
    EXPECT_EQ(cone_to_json(back), j);  // stable encoding
    expect_same_membership(c, back, kExact);
  }
}

TEST(ConeJsonTest, VariantNamesMatchSchema) {
  EXPECT_EQ(cone_to_json(make_soc<double>(3)).at("variant"), "soc");
  EXPECT_EQ(cone_to_json(make_psd<double>(2)).at("variant"), "psd");
  EXPECT_EQ(cone_to_json(make_orthant<Rational>(2)).at("variant"), "orthant");
  const Json sum = cone_to_json(
      make_dual_sum<Rational>({make_orthant<Rational>(1)}, Closedness::ProvenNonclosed, true));
  EXPECT_EQ(sum.at("closedness"), "nonclosed");
  EXPECT_TRUE(sum.at("denotes_closure").get<bool>());
  const auto back = cone_from_json<Rational>(sum);
  const auto* rep = std::get_if<DualSumCone<Rational>>(&back.rep());
  ASSERT_NE(rep, nullptr);
  EXPECT_EQ(rep->closed, Closedness::ProvenNonclosed);
}

TEST(ConeJsonTest, RejectsMalformedCones) {
  EXPECT_THROW(cone_from_json<Rational>(Json{{"variant", "moebius"}, {"dim", 2}}),
               InvalidInstance);
  EXPECT_THROW(cone_from_json<Rational>(Json{{"dim", 2}}), InvalidInstance);
  EXPECT_THROW(cone_from_json<Rational>(
                   Json{{"variant", "psd"}, {"dim", 5}, {"order", 2}}),
               InvalidInstance);
  EXPECT_THROW(cone_from_json<Rational>(
                   Json{{"variant", "product"}, {"dim", 2}, {"parts", Json::array()}}),
               InvalidInstance);
}

// --- instances ---------------------------------------------------------------------

TEST(InstanceJsonTest, HyperplaneRoundTripPreservesOutcomes) {
  const auto inst = make_hyperplane_instance<Rational>(
      make_vrep<Rational>(2, {vq({0, 1})}), make_full_space<Rational>(2), vq({2, 3}), vq({1, 1}),
      kExact);
  const Json j = instance_to_json(inst);
  const auto back = instance_from_json<Rational>(j);
  const auto a = solve_pair(inst);
  const auto b = solve_pair(back);
  EXPECT_EQ(a.primal.status, b.primal.status);
  EXPECT_EQ(a.primal.value, b.primal.value);
  EXPECT_EQ(a.dual_sum.value, b.dual_sum.value);
}

TEST(InstanceJsonTest, PolicyOverrideAndClosednessTag) {
  const auto entries = builtin_gallery_float();
  const Json j = instance_to_json(entries[0].instance);
  EXPECT_EQ(j.at("sum_closedness"), "nonclosed");
  const auto back = instance_from_json<double>(j);
  EXPECT_EQ(back.sum_closedness, Closedness::ProvenNonclosed);

  const auto widened = instance_from_json<double>(j, ScalarPolicy::floating(1e-6, 1e-6));
  EXPECT_EQ(widened.policy.abs_tol, 1e-6);
}

TEST(InstanceJsonTest, RejectsMissingFieldsAndBadData) {
  EXPECT_THROW(instance_from_json<Rational>(Json{{"K1", 1}}), InvalidInstance);
  // Structurally valid JSON whose level functional is outside the dual cone
  // still fails instance validation.
  Json j = instance_to_json(make_hyperplane_instance<Rational>(
      make_orthant<Rational>(2), make_full_space<Rational>(2), vq({1, 1}), vq({1, 0}), kExact));
  j["h"] = point_to_json(vq({-1, 0}));
  EXPECT_THROW(instance_from_json<Rational>(j), InvalidInstance);
}

TEST(InstanceJsonTest, SymmetricSchemaRoundTrip) {
  const auto sym = make_symmetric_instance<Rational>(
      make_orthant<Rational>(2), make_orthant<Rational>(1),
      make_linear_map<Rational>(2, 1, {vq({1, 1})}), VecT<Rational>{q(1)},
      VecT<Rational>{q(1), q(2)}, kExact);
  const Json j = symmetric_instance_to_json(sym);
  for (const char* key : {"Jp", "Jd", "A", "b", "c"}) EXPECT_TRUE(j.contains(key)) << key;
  const auto back = symmetric_instance_from_json<Rational>(j);
  const auto pf_a = to_hyperplane_primal_form(sym);
  const auto pf_b = to_hyperplane_primal_form(back);
  EXPECT_EQ(solve_pair(pf_a).primal.value, solve_pair(pf_b).primal.value);

  Json bad = j;
  bad["A"] = Json::array({Json::array({"1/1", "2/1"}), Json::array({"3/1", "4/1"})});
  EXPECT_THROW(symmetric_instance_from_json<Rational>(bad), InvalidInstance);
}

// --- outcomes and reports ------------------------------------------------------------

TEST(ReportJsonTest, SolveOutputCarriesContractKeys) {
  const auto entries = builtin_gallery_rational();
  const auto rep = verify_gallery_entry(entries[0]);
  const Json j = report_to_json(rep);
  for (const char* key : {"primal", "dual_sum", "dual_closure", "gap", "table1_cell"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("table1_cell"), "both_finite");
  EXPECT_EQ(j.at("gap"), "0/1");
  EXPECT_EQ(j.at("primal").at("status"), "finite");
  EXPECT_EQ(j.at("primal").at("value"), "1/1");
  EXPECT_TRUE(j.at("conditions").at("td").at("state") == "holds");
  EXPECT_TRUE(j.at("conditions").at("witnesses").is_object());
}

TEST(ReportJsonTest, InfiniteValuesUseStringEncodings) {
  EXPECT_EQ(ext_to_json(ExtReal<Rational>::pos_inf()), "inf");
  EXPECT_EQ(ext_to_json(ExtReal<double>::neg_inf()), "-inf");
  EXPECT_EQ(ext_to_json(ExtReal<double>::of(0.5)).get<double>(), 0.5);
}

TEST(ReportJsonTest, CsvTabulatesCellsAndFlags) {
  const auto entries = builtin_gallery_rational();
  const auto reports = verify_gallery(entries);
  const std::string csv = reports_to_csv(reports);
  std::istringstream is(csv);
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header,
            "instance_id,table1_cell,primal_status,dual_sum_status,dual_closure_status,gap,"
            "sp,sd,tp,td,notes");
  int rows = 0;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty()) ++rows;
  }
  EXPECT_EQ(rows, 7);
  EXPECT_NE(csv.find("orthant-descent-ray,primal_unbounded_dual_infeasible"), std::string::npos);
  EXPECT_NE(csv.find("ray-level-and-cost-miss,both_infeasible"), std::string::npos);

  EXPECT_EQ(reports_to_csv(std::vector<DualityReport<Rational>>{}),
            "instance_id,table1_cell,primal_status,dual_sum_status,dual_closure_status,gap,"
            "sp,sd,tp,td,notes\n");
}

// --- svg -------------------------------------------------------------------------------

TEST(SvgTest, RendersEveryBuiltinEntryDeterministically) {
  const auto entries = builtin_gallery_rational();
  const auto reports = verify_gallery(entries);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string svg = render_instance_svg(entries[i], reports[i]);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find(entries[i].id), std::string::npos);
    EXPECT_NE(svg.find("cell: " + to_string(reports[i].cell)), std::string::npos);
    EXPECT_EQ(svg, render_instance_svg(entries[i], reports[i]));  // byte-stable
  }
}

TEST(SvgTest, RejectsHigherDimensionalInstances) {
  const auto entries = builtin_gallery_float();
  const auto reports = verify_gallery(entries);
  EXPECT_THROW(render_instance_svg(entries[0], reports[0]), PolicyError);
}

TEST(SvgTest, EmitWritesRequestedFormats) {
  const auto entries = builtin_gallery_rational();
  const auto reports = verify_gallery(entries);
  const auto dir = std::filesystem::temp_directory_path() / "conedual_emit_test";
  std::filesystem::remove_all(dir);
  const auto written = emit_reports(entries, reports, {"json", "csv", "svg"}, dir);
  // json + csv + one svg per 2-D entry
  EXPECT_EQ(written.size(), 2u + entries.size());
  for (const auto& p : written) EXPECT_TRUE(std::filesystem::exists(p)) << p;

  std::ifstream csv(dir / "gallery.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_NE(header.find("table1_cell"), std::string::npos);

  EXPECT_THROW(emit_reports(entries, reports, {"pdf"}, dir), InvalidInstance);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace conedual
