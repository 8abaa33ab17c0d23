// Command-line front end: solve | conditions | convert | gallery | propcheck.
// Exit codes: 0 success, 2 invariant violation (or a failed property run),
// 3 invalid input.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conedual/conedual.hpp"

namespace {

using namespace conedual;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open input file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInstance(std::string("invalid JSON: ") + e.what());
  }
}

ScalarPolicy parse_policy_name(const std::string& name) {
  if (name == "exact") return ScalarPolicy::exact();
  if (name == "float") return ScalarPolicy::floating();
  throw InvalidInstance("unknown policy: " + name + " (expected exact or float)");
}

/// Precedence: --policy flag, then CONEDUAL_POLICY, then the instance's own
/// declaration, then exact.
ScalarPolicy effective_policy(const Json& j, const std::string& flag) {
  if (!flag.empty()) return parse_policy_name(flag);
  if (const char* env = std::getenv("CONEDUAL_POLICY"); env && *env) {
    return parse_policy_name(env);
  }
  if (j.is_object() && j.contains("policy")) return policy_from_json(j.at("policy"));
  return ScalarPolicy::exact();
}

std::set<std::string> split_formats(const std::string& csv) {
  std::set<std::string> out;
  std::istringstream is(csv);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  if (out.empty()) throw InvalidInstance("no emit formats given");
  return out;
}

template <class S>
int run_solve(const Json& j, const ScalarPolicy& policy, const std::string& emit) {
  const auto inst = instance_from_json<S>(j, policy);
  const auto out = solve_pair(inst);
  auto conditions = build_condition_report(inst);
  const auto rep = classify<S>("instance", inst, out, std::move(conditions));
  if (emit == "csv") {
    std::cout << reports_to_csv(std::vector<DualityReport<S>>{rep});
  } else {
    std::cout << report_to_json(rep).dump(2) << "\n";
  }
  return 0;
}

template <class S>
int run_conditions(const Json& j, const ScalarPolicy& policy) {
  const auto inst = instance_from_json<S>(j, policy);
  std::cout << condition_report_to_json(build_condition_report(inst)).dump(2) << "\n";
  return 0;
}

template <class S>
int run_convert(const Json& j, const ScalarPolicy& policy, const std::string& direction) {
  const auto sym = symmetric_instance_from_json<S>(j, policy);
  const auto inst =
      direction == "primal" ? to_hyperplane_primal_form(sym) : to_hyperplane_dual_form(sym);
  std::cout << instance_to_json(inst).dump(2) << "\n";
  return 0;
}

int run_gallery(const std::string& emit, const std::string& outdir) {
  const auto formats = split_formats(emit);
  const auto rational_entries = builtin_gallery_rational();
  const auto rational_reports = verify_gallery(rational_entries);
  const auto float_entries = builtin_gallery_float();
  const auto float_reports = verify_gallery(float_entries);

  auto written = emit_reports(rational_entries, rational_reports, formats, outdir, "gallery");
  const auto more =
      emit_reports(float_entries, float_reports, formats, outdir, "gallery_float");
  written.insert(written.end(), more.begin(), more.end());

  for (const auto& r : rational_reports) {
    std::cout << r.instance_id << ": " << to_string(r.cell) << "\n";
  }
  for (const auto& r : float_reports) {
    std::cout << r.instance_id << ": " << to_string(r.cell) << "\n";
  }
  std::cout << "wrote " << written.size() << " files to " << outdir << "\n";
  return 0;
}

int run_propcheck(std::uint64_t seed, int count) {
  const auto rep = run_property_suite(seed, count);
  std::cout << format_property_report(rep);
  return rep.all_passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"duality calculator for conic optimization pairs"};
  app.require_subcommand(1);

  std::string instance_path, policy_flag, emit = "json";
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance and classify the outcome");
  solve_cmd->add_option("instance", instance_path, "instance JSON file")->required();
  solve_cmd->add_option("--policy", policy_flag, "exact|float");
  solve_cmd->add_option("--emit", emit, "json|csv");

  std::string cond_path, cond_policy;
  auto* cond_cmd = app.add_subcommand("conditions", "report the regularity conditions");
  cond_cmd->add_option("instance", cond_path, "instance JSON file")->required();
  cond_cmd->add_option("--policy", cond_policy, "exact|float");

  std::string sym_path, conv_policy, direction;
  auto* conv_cmd = app.add_subcommand("convert", "rewrite a symmetric pair as one instance");
  conv_cmd->add_option("instance", sym_path, "symmetric instance JSON file")->required();
  conv_cmd->add_option("--direction", direction, "primal|dual")->required();
  conv_cmd->add_option("--policy", conv_policy, "exact|float");

  std::string gallery_emit = "json,csv,svg", outdir = "gallery_out";
  auto* gal_cmd = app.add_subcommand("gallery", "verify and emit the builtin gallery");
  gal_cmd->add_option("--emit", gallery_emit, "comma-separated: json,csv,svg");
  gal_cmd->add_option("--outdir", outdir, "output directory");

  std::uint64_t seed = 0;
  int count = 200;
  auto* prop_cmd = app.add_subcommand("propcheck", "run the randomized property suite");
  prop_cmd->add_option("--seed", seed, "generator seed")->required();
  prop_cmd->add_option("--count", count, "instances to generate")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      if (emit != "json" && emit != "csv") throw InvalidInstance("unknown emit format: " + emit);
      const Json j = load_json(instance_path);
      const ScalarPolicy policy = effective_policy(j, policy_flag);
      return policy.is_exact() ? run_solve<Rational>(j, policy, emit)
                               : run_solve<double>(j, policy, emit);
    }
    if (cond_cmd->parsed()) {
      const Json j = load_json(cond_path);
      const ScalarPolicy policy = effective_policy(j, cond_policy);
      return policy.is_exact() ? run_conditions<Rational>(j, policy)
                               : run_conditions<double>(j, policy);
    }
    if (conv_cmd->parsed()) {
      if (direction != "primal" && direction != "dual") {
        throw InvalidInstance("unknown direction: " + direction);
      }
      const Json j = load_json(sym_path);
      const ScalarPolicy policy = effective_policy(j, conv_policy);
      return policy.is_exact() ? run_convert<Rational>(j, policy, direction)
                               : run_convert<double>(j, policy, direction);
    }
    if (gal_cmd->parsed()) return run_gallery(gallery_emit, outdir);
    if (prop_cmd->parsed()) return run_propcheck(seed, count);
  } catch (const InternalInvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInstance& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 3;
  } catch (const DimensionError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 3;
  } catch (const PolicyError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
