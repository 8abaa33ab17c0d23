#pragma once
// JSON and CSV serialization.  Rational scalars travel as "p/q" strings in
// lowest terms with a positive denominator; floats as JSON numbers with
// negative zero canonicalized away.  Every from_json rejects malformed input
// with InvalidInstance so callers can map parse failures to a clean exit.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "conedual/gallery.hpp"
#include "conedual/reformulate.hpp"

namespace conedual {

using Json = nlohmann::json;

// --- scalars ------------------------------------------------------------------

inline Json scalar_to_json(const Rational& v) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(v) << "/" << boost::multiprecision::denominator(v);
  return Json(os.str());
}

inline Json scalar_to_json(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  return Json(v);
}

namespace detail {

[[noreturn]] inline void bad_input(const std::string& what) { throw InvalidInstance(what); }

template <class S>
struct scalar_io;

template <>
struct scalar_io<Rational> {
  static Rational from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) bad_input("rational scalars must be \"p/q\" strings");
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(s);
      const Rational num(s.substr(0, slash));
      const Rational den(s.substr(slash + 1));
      if (den == 0) bad_input("rational scalar with zero denominator: " + s);
      return num / den;
    } catch (const std::runtime_error&) {
      bad_input("unparseable rational scalar: " + s);
    }
  }
};

template <>
struct scalar_io<double> {
  static double from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    // Accept rational-encoded data so one file can run under either policy.
    if (j.is_string()) {
      return scalar_traits<Rational>::to_double(scalar_io<Rational>::from_json(j));
    }
    bad_input("float scalars must be JSON numbers");
  }
};

}  // namespace detail

template <class S>
inline S scalar_from_json(const Json& j) {
  return detail::scalar_io<S>::from_json(j);
}

// --- points ---------------------------------------------------------------------

template <class S>
inline Json point_to_json(const VecT<S>& x) {
  Json coords = Json::array();
  for (const auto& c : x) coords.push_back(scalar_to_json(c));
  return Json{{"dim", x.size()}, {"coords", std::move(coords)}};
}

template <class S>
inline VecT<S> point_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("coords")) {
    detail::bad_input("points must be {\"dim\": n, \"coords\": [...]} objects");
  }
  const auto& coords = j.at("coords");
  if (!coords.is_array() || coords.size() != j.at("dim").get<std::size_t>()) {
    detail::bad_input("point coords must match the declared dimension");
  }
  VecT<S> x;
  x.reserve(coords.size());
  for (const auto& c : coords) x.push_back(scalar_from_json<S>(c));
  return x;
}

// --- cones ----------------------------------------------------------------------

namespace detail {

inline Closedness closedness_from_string(const std::string& s) {
  if (s == "unknown") return Closedness::Unknown;
  if (s == "closed") return Closedness::ProvenClosed;
  if (s == "nonclosed") return Closedness::ProvenNonclosed;
  bad_input("unknown closedness tag: " + s);
}

template <class S>
inline Json points_to_json(const std::vector<VecT<S>>& xs) {
  Json arr = Json::array();
  for (const auto& x : xs) arr.push_back(point_to_json(x));
  return arr;
}

template <class S>
inline std::vector<VecT<S>> points_from_json(const Json& j, const char* what) {
  if (!j.is_array()) bad_input(std::string(what) + " must be an array of points");
  std::vector<VecT<S>> xs;
  for (const auto& p : j) xs.push_back(point_from_json<S>(p));
  return xs;
}

}  // namespace detail

template <class S>
inline Json cone_to_json(const ConeRep<S>& c) {
  Json j{{"dim", c.ambient_dim()}};
  std::visit(
      [&](const auto& rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, HRepCone<S>>) {
          j["variant"] = "hrep";
          j["halfspaces"] = detail::points_to_json(rep.normals);
        } else if constexpr (std::is_same_v<T, VRepCone<S>>) {
          j["variant"] = "vrep";
          j["generators"] = detail::points_to_json(rep.generators);
        } else if constexpr (std::is_same_v<T, OrthantCone>) {
          j["variant"] = "orthant";
        } else if constexpr (std::is_same_v<T, SocCone>) {
          j["variant"] = "soc";
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          j["variant"] = "psd";
          j["order"] = rep.order;
        } else if constexpr (std::is_same_v<T, SubspaceCone<S>>) {
          j["variant"] = "subspace";
          j["basis"] = detail::points_to_json(rep.basis);
        } else if constexpr (std::is_same_v<T, ProductCone<S>>) {
          j["variant"] = "product";
          Json parts = Json::array();
          for (const auto& p : rep.parts) parts.push_back(cone_to_json(p));
          j["parts"] = std::move(parts);
        } else if constexpr (std::is_same_v<T, IntersectionCone<S>>) {
          j["variant"] = "intersection";
          Json parts = Json::array();
          for (const auto& p : rep.parts) parts.push_back(cone_to_json(p));
          j["parts"] = std::move(parts);
        } else if constexpr (std::is_same_v<T, DualSumCone<S>>) {
          j["variant"] = "dualsum";
          Json parts = Json::array();
          for (const auto& p : rep.parts) parts.push_back(cone_to_json(p));
          j["parts"] = std::move(parts);
          j["closedness"] = to_string(rep.closed);
          j["denotes_closure"] = rep.denotes_closure;
        }
      },
      c.rep());
  return j;
}

template <class S>
inline ConeRep<S> cone_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("variant") || !j.contains("dim")) {
    detail::bad_input("cones must be objects with \"variant\" and \"dim\"");
  }
  const std::size_t dim = j.at("dim").get<std::size_t>();
  const std::string variant = j.at("variant").get<std::string>();
  const auto parts_of = [&](const Json& node) {
    if (!node.is_array() || node.empty()) detail::bad_input("composite cones need parts");
    std::vector<ConeRep<S>> parts;
    for (const auto& p : node) parts.push_back(cone_from_json<S>(p));
    return parts;
  };
  if (variant == "hrep") {
    return make_hrep<S>(dim, detail::points_from_json<S>(j.at("halfspaces"), "halfspaces"));
  }
  if (variant == "vrep") {
    return make_vrep<S>(dim, detail::points_from_json<S>(j.at("generators"), "generators"));
  }
  if (variant == "orthant") return make_orthant<S>(dim);
  if (variant == "soc") return make_soc<S>(dim);
  if (variant == "psd") {
    const auto order = j.at("order").get<std::size_t>();
    const auto cone = make_psd<S>(order);
    if (cone.ambient_dim() != dim) {
      detail::bad_input("psd dim must equal order*(order+1)/2");
    }
    return cone;
  }
  if (variant == "subspace") {
    return make_subspace<S>(dim, detail::points_from_json<S>(j.at("basis"), "basis"));
  }
  if (variant == "product") return make_product<S>(parts_of(j.at("parts")));
  if (variant == "intersection") return make_intersection<S>(parts_of(j.at("parts")));
  if (variant == "dualsum") {
    Closedness closed = Closedness::Unknown;
    if (j.contains("closedness")) {
      closed = detail::closedness_from_string(j.at("closedness").get<std::string>());
    }
    const bool denotes = j.value("denotes_closure", false);
    return make_dual_sum<S>(parts_of(j.at("parts")), closed, denotes);
  }
  detail::bad_input("unknown cone variant: " + variant);
}

// --- policies --------------------------------------------------------------------

inline Json policy_to_json(const ScalarPolicy& p) {
  if (p.is_exact()) return Json("exact");
  return Json{{"kind", "float"}, {"abs_tol", p.abs_tol}, {"rel_tol", p.rel_tol}};
}

inline ScalarPolicy policy_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "exact") return ScalarPolicy::exact();
    if (s == "float") return ScalarPolicy::floating();
    detail::bad_input("unknown policy name: " + s);
  }
  if (j.is_object() && j.value("kind", "") == "float") {
    return ScalarPolicy::floating(j.value("abs_tol", 1e-9), j.value("rel_tol", 1e-9));
  }
  detail::bad_input("policies are \"exact\", \"float\", or {\"kind\":\"float\", ...}");
}

// --- instances ---------------------------------------------------------------------

template <class S>
inline Json instance_to_json(const HyperplaneInstance<S>& inst) {
  return Json{{"ambient_dim", inst.ambient_dim}, {"K1", cone_to_json(inst.K1)},
              {"K2", cone_to_json(inst.K2)},     {"q", point_to_json(inst.q)},
              {"h", point_to_json(inst.h)},      {"policy", policy_to_json(inst.policy)},
              {"sum_closedness", to_string(inst.sum_closedness)}};
}

template <class S>
inline HyperplaneInstance<S> instance_from_json(const Json& j,
                                                std::optional<ScalarPolicy> policy_override = {}) {
  for (const char* key : {"K1", "K2", "q", "h"}) {
    if (!j.is_object() || !j.contains(key)) {
      detail::bad_input("instances need \"K1\", \"K2\", \"q\", and \"h\"");
    }
  }
  ScalarPolicy policy = scalar_traits<S>::is_exact ? ScalarPolicy::exact()
                                                   : ScalarPolicy::floating();
  if (j.contains("policy")) policy = policy_from_json(j.at("policy"));
  if (policy_override) policy = *policy_override;
  auto inst = make_hyperplane_instance<S>(cone_from_json<S>(j.at("K1")),
                                          cone_from_json<S>(j.at("K2")),
                                          point_from_json<S>(j.at("q")),
                                          point_from_json<S>(j.at("h")), policy);
  if (j.contains("sum_closedness")) {
    inst.sum_closedness =
        detail::closedness_from_string(j.at("sum_closedness").get<std::string>());
  }
  return inst;
}

namespace detail {

template <class S>
inline Json matrix_to_json(const LinearMap<S>& m) {
  Json rows = Json::array();
  for (const auto& r : m.rows) {
    Json row = Json::array();
    for (const auto& e : r) row.push_back(scalar_to_json(e));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
inline std::vector<S> scalar_row_from_json(const Json& j, const char* what) {
  if (!j.is_array()) bad_input(std::string(what) + " must be an array");
  std::vector<S> out;
  for (const auto& e : j) out.push_back(scalar_from_json<S>(e));
  return out;
}

}  // namespace detail

template <class S>
inline Json symmetric_instance_to_json(const SymmetricInstance<S>& s) {
  Json b = Json::array();
  for (const auto& e : s.b) b.push_back(scalar_to_json(e));
  Json c = Json::array();
  for (const auto& e : s.c) c.push_back(scalar_to_json(e));
  return Json{{"Jp", cone_to_json(s.Jp)}, {"Jd", cone_to_json(s.Jd)},
              {"A", detail::matrix_to_json(s.A)}, {"b", std::move(b)},
              {"c", std::move(c)},        {"policy", policy_to_json(s.policy)}};
}

template <class S>
inline SymmetricInstance<S> symmetric_instance_from_json(
    const Json& j, std::optional<ScalarPolicy> policy_override = {}) {
  for (const char* key : {"Jp", "Jd", "A", "b", "c"}) {
    if (!j.is_object() || !j.contains(key)) {
      detail::bad_input("symmetric instances need \"Jp\", \"Jd\", \"A\", \"b\", and \"c\"");
    }
  }
  const auto Jp = cone_from_json<S>(j.at("Jp"));
  const auto Jd = cone_from_json<S>(j.at("Jd"));
  const auto& aj = j.at("A");
  if (!aj.is_array() || aj.size() != Jd.ambient_dim()) {
    detail::bad_input("\"A\" must have one row per coordinate of the image space");
  }
  std::vector<VecT<S>> rows;
  for (const auto& r : aj) rows.push_back(detail::scalar_row_from_json<S>(r, "matrix row"));
  ScalarPolicy policy = scalar_traits<S>::is_exact ? ScalarPolicy::exact()
                                                   : ScalarPolicy::floating();
  if (j.contains("policy")) policy = policy_from_json(j.at("policy"));
  if (policy_override) policy = *policy_override;
  return make_symmetric_instance<S>(
      Jp, Jd, make_linear_map<S>(Jp.ambient_dim(), Jd.ambient_dim(), std::move(rows)),
      detail::scalar_row_from_json<S>(j.at("b"), "\"b\""),
      detail::scalar_row_from_json<S>(j.at("c"), "\"c\""), policy);
}

// --- outcomes and reports -------------------------------------------------------

template <class S>
inline Json ext_to_json(const ExtReal<S>& v) {
  if (v.inf > 0) return Json("inf");
  if (v.inf < 0) return Json("-inf");
  return scalar_to_json(v.finite);
}

template <class S>
inline Json outcome_to_json(const SolveOutcome<S>& o) {
  Json j{{"status", to_string(o.status)},
         {"value", ext_to_json(o.value)},
         {"numerically_uncertain", o.numerically_uncertain}};
  if (o.attained) j["attained"] = *o.attained;
  if (o.solution) j["solution"] = point_to_json(*o.solution);
  if (o.t_star) j["t_star"] = scalar_to_json(*o.t_star);
  if (o.certificate) j["certificate"] = point_to_json(*o.certificate);
  if (!o.note.empty()) j["note"] = o.note;
  return j;
}

template <class S>
inline Json condition_verdict_to_json(const ConditionVerdict<S>& v) {
  Json j{{"state", to_string(v.state)}, {"numerically_uncertain", v.numerically_uncertain}};
  if (v.point) j["point"] = point_to_json(*v.point);
  if (v.scalar) j["scalar"] = scalar_to_json(*v.scalar);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

template <class S>
inline Json condition_report_to_json(const ConditionReport<S>& r) {
  Json witnesses = Json::object();
  for (const auto& [name, point] : r.witnesses) witnesses[name] = point_to_json(point);
  return Json{{"sp", condition_verdict_to_json(r.sp)}, {"sd", condition_verdict_to_json(r.sd)},
              {"tp", condition_verdict_to_json(r.tp)}, {"td", condition_verdict_to_json(r.td)},
              {"witnesses", std::move(witnesses)}};
}

template <class S>
inline Json report_to_json(const DualityReport<S>& r) {
  return Json{{"instance_id", r.instance_id},
              {"primal", outcome_to_json(r.primal)},
              {"dual_sum", outcome_to_json(r.dual_sum)},
              {"dual_closure", outcome_to_json(r.dual_closure)},
              {"conditions", condition_report_to_json(r.conditions)},
              {"table1_cell", to_string(r.cell)},
              {"gap", ext_to_json(r.gap)},
              {"notes", r.notes}};
}

namespace detail {

template <class S>
inline std::string ext_to_csv(const ExtReal<S>& v) {
  const Json j = ext_to_json(v);
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

}  // namespace detail

/// One row per report: the joint cell, the three statuses, the gap, and the
/// four condition flags.  An empty report list yields the header alone.
template <class S>
inline std::string reports_to_csv(const std::vector<DualityReport<S>>& reports) {
  std::ostringstream os;
  os << "instance_id,table1_cell,primal_status,dual_sum_status,dual_closure_status,gap,"
        "sp,sd,tp,td,notes\n";
  for (const auto& r : reports) {
    std::string notes = r.notes;
    for (auto& ch : notes) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    os << r.instance_id << ',' << to_string(r.cell) << ',' << to_string(r.primal.status) << ','
       << to_string(r.dual_sum.status) << ',' << to_string(r.dual_closure.status) << ','
       << detail::ext_to_csv(r.gap) << ',' << to_string(r.conditions.sp.state) << ','
       << to_string(r.conditions.sd.state) << ',' << to_string(r.conditions.tp.state) << ','
       << to_string(r.conditions.td.state) << ',' << notes << '\n';
  }
  return os.str();
}

/// Reports as a single JSON array, ready for tabulation.
template <class S>
inline Json reports_to_json(const std::vector<DualityReport<S>>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInstance("cannot open for writing: " + path.string());
  out << text;
}

}  // namespace conedual
