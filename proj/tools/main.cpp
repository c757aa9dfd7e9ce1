#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <horoflow/errors.hpp>
#include <horoflow/parallel.hpp>

#include "report.hpp"

namespace fs = std::filesystem;
using namespace horoflow;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

constexpr double kIdentityTol = 1e-12;

struct Common {
  bool json = false;
  std::uint64_t seed = 1;
  std::string out;
};

fs::path out_dir(const Common& c, const std::string& command) { return c.out.empty() ? fs::path("horoflow-" + command) : fs::path(c.out); }

void report_failures(const std::vector<std::string>& failures) {
  for (const auto& f : failures) std::cerr << "check failed: " << f << "\n";
}

AlgebraPtr select_algebra(const std::string& preset, const std::string& group_file) {
  if (!group_file.empty()) return algebra_from_json(load_json_file(group_file));
  return algebra_from_json(Json(preset));
}

int run_check_group(const Common& c, const std::string& preset, const std::string& group_file, int samples) {
  AlgebraPtr alg;
  try {
    alg = select_algebra(preset, group_file);
  } catch (const AlgebraError& e) {
    Json rep = {{"command", "check-group"}, {"valid", false}, {"violation", e.what()}, {"seed", c.seed}};
    cli::emit_report(rep, c.json, out_dir(c, "check-group"));
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  const GroupCheckReport r = check_group(*alg, samples, c.seed);
  std::vector<std::string> failures;
  if (r.associativity_max_err > kIdentityTol) failures.push_back("associativity");
  if (r.automorphism_max_err > kIdentityTol) failures.push_back("dilation automorphism");
  if (r.inverse_max_err > kIdentityTol) failures.push_back("inverse");
  if (r.identity_max_err > kIdentityTol) failures.push_back("identity");
  Json rep = cli::to_json(r);
  rep["command"] = "check-group";
  rep["group"] = {{"name", alg->name()}, {"layers", alg->layer_dims()}, {"step", alg->step()}};
  rep["valid"] = true;
  rep["tolerance"] = kIdentityTol;
  rep["seed"] = c.seed;
  rep["failures"] = failures;
  rep["passed"] = failures.empty();
  cli::emit_report(rep, c.json, out_dir(c, "check-group"));
  report_failures(failures);
  return failures.empty() ? kPass : kCheckFailed;
}

int run_check_gauge(const Common& c, const std::string& preset, const std::string& group_file,
                    const std::string& gauge_name, int samples) {
  const AlgebraPtr alg = select_algebra(preset, group_file);
  const SmoothGauge smooth(*alg);
  GaugeCheckReport r;
  if (gauge_name == "koranyi") {
    if (!alg->is_heisenberg()) throw ConfigError("the Korányi gauge requires the Heisenberg group");
    r = check_gauge(*alg, KoranyiGauge(*alg), smooth, samples, c.seed);
  } else if (gauge_name == "smooth") {
    r = check_gauge(*alg, smooth, smooth, samples, c.seed);
  } else {
    throw ConfigError("unknown gauge '" + gauge_name + "' (expected koranyi or smooth)");
  }
  std::vector<std::string> failures;
  if (r.homogeneity_max_err > kIdentityTol) failures.push_back("gauge homogeneity");
  if (r.symmetry_max_err > kIdentityTol) failures.push_back("gauge symmetry");
  Json rep = cli::to_json(r);
  rep["command"] = "check-gauge";
  rep["gauge"] = gauge_name;
  rep["group"] = alg->name();
  rep["seed"] = c.seed;
  rep["failures"] = failures;
  rep["passed"] = failures.empty();
  cli::emit_report(rep, c.json, out_dir(c, "check-gauge"));
  report_failures(failures);
  return failures.empty() ? kPass : kCheckFailed;
}

int run_integrate(const Common& c, const std::string& config) {
  ProblemSpec spec = problem_from_json(load_json_file(config), c.seed);
  try {
    spec.problem.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const Trajectory tr = integrate(spec.problem, spec.integrator);
  const fs::path dir = out_dir(c, "integrate");
  fs::create_directories(dir);
  cli::write_csv(dir / "trajectory.csv", tr);
  Json rep = {{"command", "integrate"},
              {"group", spec.algebra->name()},
              {"x0", cli::to_json(spec.problem.x0)},
              {"horizon", spec.problem.horizon},
              {"samples", tr.size()},
              {"final_state", cli::to_json(tr.states.back())},
              {"residual", tr.residual ? Json(*tr.residual) : Json(nullptr)},
              {"integrator", cli::to_json(tr.meta)},
              {"seed", c.seed}};
  if (tr.exit) rep["exit"] = {{"time", tr.exit->time}, {"point", cli::to_json(tr.exit->point)}};
  else rep["exit"] = nullptr;
  cli::emit_report(rep, c.json, dir);
  return kPass;
}

int run_equilibrium(const Common& c, const std::string& config) {
  EquilibriumSpec s = equilibrium_from_json(load_json_file(config), c.seed);
  if (s.initial_points.empty()) {
    s.initial_points.push_back(s.xbar);
    GroupElement e1 = GroupElement::zero(s.algebra->dimension());
    e1[0] = 1.0;
    for (int k = 2; k <= 5; ++k) {
      s.initial_points.push_back(bch_multiply(*s.algebra, s.xbar, dilate(*s.algebra, std::pow(10.0, -k), e1)));
    }
  }
  const EquilibriumCondition cond =
      verify_equilibrium_condition(s.field, s.xbar, s.distance, s.box, s.horizon, s.samples, c.seed, s.threshold);
  const StabilityReport stab = stability_monitor(s.field, s.distance, cond, s.initial_points, s.horizon, s.integrator,
                                                 thread_count_from_env(), c.seed);
  std::vector<std::string> failures = stab.failures;
  if (stab.refusal) failures.push_back(*stab.refusal);
  Json rep = {{"command", "equilibrium"},
              {"group", s.algebra->name()},
              {"distance", s.distance.gauge().name()},
              {"condition", cli::to_json(cond)},
              {"stability", cli::to_json(stab)},
              {"seed", c.seed},
              {"failures", failures},
              {"passed", stab.certified}};
  cli::emit_report(rep, c.json, out_dir(c, "equilibrium"));
  report_failures(failures);
  return stab.certified ? kPass : kCheckFailed;
}

int run_involutive(const Common& c, const std::string& config) {
  const InvolutiveSpec s = involutive_from_json(load_json_file(config), c.seed);
  Json rep = {{"command", "involutive"}, {"group", s.algebra->name()}, {"generators", s.weights}, {"seed", c.seed}};
  const fs::path dir = out_dir(c, "involutive");
  std::optional<InvolutiveModule> mod;
  try {
    mod.emplace(check_involutive(s.frame, s.weights));
  } catch (const AlgebraError& e) {
    rep["involutive"] = false;
    rep["failures"] = {e.what()};
    rep["passed"] = false;
    cli::emit_report(rep, c.json, dir);
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  const InvolutiveInvariants inv = mod->check_invariants(1000, c.seed);
  CauchyProblem p{mod->field(s.coefficients, s.time_dependent), s.x0, s.horizon, Domain::whole_space()};
  const Trajectory full = integrate(p, s.integrator);
  const Trajectory reduced = reduced_solve(*mod, s.coefficients, s.x0, s.horizon, s.integrator);
  const double deviation = confinement_check(full, *mod, s.x0);
  double agreement = 0.0;
  const std::size_t n = std::min(full.size(), reduced.size());
  for (std::size_t k = 0; k < n; ++k) {
    for (int i = 0; i < full.states[k].size(); ++i) {
      agreement = std::max(agreement, std::abs(full.states[k][i] - reduced.states[k][i]));
    }
  }
  std::vector<std::string> failures;
  if (full.size() != reduced.size()) failures.push_back("full and reduced solves stopped at different times");
  if (inv.restriction_max_err > kIdentityTol) failures.push_back("restriction of Y_j to S is not constant");
  if (inv.addition_max_err > kIdentityTol) failures.push_back("group law on S is not vector addition");
  if (deviation > s.confinement_tol) failures.push_back("confinement to the coset x0 S");
  if (agreement > s.agreement_tol) failures.push_back("full and reduced solves disagree");
  fs::create_directories(dir);
  cli::write_csv(dir / "full.csv", full);
  cli::write_csv(dir / "reduced.csv", reduced);
  rep["involutive"] = true;
  rep["rank"] = mod->rank();
  rep["restriction_max_err"] = inv.restriction_max_err;
  rep["addition_max_err"] = inv.addition_max_err;
  rep["x0"] = cli::to_json(s.x0);
  rep["horizon"] = s.horizon;
  rep["confinement_deviation"] = deviation;
  rep["confinement_tol"] = s.confinement_tol;
  rep["reduced_full_max_diff"] = agreement;
  rep["agreement_tol"] = s.agreement_tol;
  rep["integrator"] = cli::to_json(full.meta);
  rep["failures"] = failures;
  rep["passed"] = failures.empty();
  cli::emit_report(rep, c.json, dir);
  report_failures(failures);
  return failures.empty() ? kPass : kCheckFailed;
}

int run_counterexample(const Common& c, const std::string& variant, LadderSpec spec) {
  spec.variant = variant_from_string(variant);
  spec.validate();
  const NonuniquenessReport r =
      nonuniqueness_report(spec, uv_integrator_config(spec.tau, spec.grid), {}, thread_count_from_env());
  const fs::path dir = out_dir(c, "counterexample");
  fs::create_directories(dir);
  for (std::size_t k = 0; k < r.ladder.rungs.size(); ++k) {
    cli::write_uv_csv(dir / ("rung_" + std::to_string(k) + ".csv"), r.ladder.rungs[k].trajectory);
  }
  if (r.ladder.limit) {
    cli::write_uv_csv(dir / "limit.csv", *r.ladder.limit);
    cli::write_csv(dir / "gamma.csv", r.gamma);
  }
  Json rep = cli::to_json(r);
  rep["command"] = "counterexample";
  rep["seed"] = c.seed;
  cli::emit_report(rep, c.json, dir);
  for (const auto& w : r.ladder.warnings) std::cerr << "warning: " << w << "\n";
  report_failures(r.failures);
  return r.verdict ? kPass : kCheckFailed;
}

// "check group" and "check gauge" are accepted as aliases.
std::vector<std::string> normalize_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.size() >= 2 && args[0] == "check" && (args[1] == "group" || args[1] == "gauge")) {
    args[0] = "check-" + args[1];
    args.erase(args.begin() + 1);
  }
  std::reverse(args.begin(), args.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"horoflow: flows of horizontal vector fields on homogeneous groups", "horoflow"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.json, "Print the report to stdout instead of writing report.json");
  app.add_option("--seed", common.seed, "Seed for all sampling");
  app.add_option("--out", common.out, "Output directory");

  std::string preset = "heisenberg", group_file, gauge_name = "koranyi";
  int samples = 10000;
  auto* cg = app.add_subcommand("check-group", "Group-law identities (associativity, dilations, inverse)");
  cg->add_option("--preset", preset, "Built-in group")->check(CLI::IsMember({"heisenberg"}));
  cg->add_option("--group", group_file, "Group spec JSON")->check(CLI::ExistingFile);
  cg->add_option("--samples", samples, "Number of sampled triples")->check(CLI::PositiveNumber);

  auto* cgg = app.add_subcommand("check-gauge", "Gauge homogeneity, symmetry and equivalence constants");
  cgg->add_option("--preset", preset, "Built-in group")->check(CLI::IsMember({"heisenberg"}));
  cgg->add_option("--group", group_file, "Group spec JSON")->check(CLI::ExistingFile);
  cgg->add_option("--gauge", gauge_name, "koranyi or smooth");
  cgg->add_option("--samples", samples, "Number of sampled points")->check(CLI::PositiveNumber);

  std::string config;
  auto* integ = app.add_subcommand("integrate", "Solve a Cauchy problem from a JSON spec");
  integ->add_option("--config", config, "Problem JSON")->required()->check(CLI::ExistingFile);
  auto* eq = app.add_subcommand("equilibrium", "Equilibrium condition and stability monitor");
  eq->add_option("--config", config, "Equilibrium JSON")->required()->check(CLI::ExistingFile);
  auto* inv = app.add_subcommand("involutive", "Involutive module confinement and reduced solve");
  inv->add_option("--config", config, "Involutive JSON")->required()->check(CLI::ExistingFile);

  std::string variant = "time";
  LadderSpec ladder;
  auto* ce = app.add_subcommand("counterexample", "Epsilon ladder and non-uniqueness report");
  ce->add_option("--variant", variant, "time or autonomous")->check(CLI::IsMember({"time", "autonomous"}));
  ce->add_option("--eps0", ladder.eps0, "First regularization parameter");
  ce->add_option("--ratio", ladder.ratio, "Ladder ratio");
  ce->add_option("--rungs", ladder.rungs, "Number of rungs");
  ce->add_option("--tau", ladder.tau, "Time window");
  ce->add_option("--grid", ladder.grid, "Output grid points");

  for (auto* sub : {cg, cgg, integ, eq, inv, ce}) {
    sub->add_flag("--json", common.json, "Print the report to stdout");
    sub->add_option("--seed", common.seed, "Seed for all sampling");
    sub->add_option("--out", common.out, "Output directory");
  }

  try {
    app.parse(normalize_args(argc, argv));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*cg) return run_check_group(common, preset, group_file, samples);
    if (*cgg) return run_check_gauge(common, preset, group_file, gauge_name, samples);
    if (*integ) return run_integrate(common, config);
    if (*eq) return run_equilibrium(common, config);
    if (*inv) return run_involutive(common, config);
    if (*ce) return run_counterexample(common, variant, ladder);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const AlgebraError& e) {
    std::cerr << "error: invalid group: " << e.what() << "\n";
    return kUsage;
  } catch (const MonitorError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
