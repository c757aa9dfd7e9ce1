#include "report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <horoflow/errors.hpp>

namespace horoflow::cli {
namespace {

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const ComparisonResult& r) {
  return {{"passed", r.passed}, {"worst_margin", num(r.worst_margin)}, {"worst_time", r.worst_time}};
}

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path.string());
  return os;
}

}  // namespace

Json to_json(const GroupElement& x) { return x.vector(); }

Json to_json(const IntegratorMeta& m) {
  return {{"method", m.method},
          {"abs_tol", m.abs_tol},
          {"rel_tol", m.rel_tol},
          {"max_step", m.max_step},
          {"min_step", m.min_step},
          {"accepted_steps", m.stats.accepted},
          {"rejected_steps", m.stats.rejected},
          {"rhs_evaluations", m.stats.rhs_evaluations},
          {"smallest_step", m.stats.smallest_step},
          {"largest_step", m.stats.largest_step}};
}

Json to_json(const GroupCheckReport& r) {
  return {{"associativity_max_err", r.associativity_max_err},
          {"automorphism_max_err", r.automorphism_max_err},
          {"inverse_max_err", r.inverse_max_err},
          {"identity_max_err", r.identity_max_err},
          {"samples", r.samples}};
}

Json to_json(const GaugeCheckReport& r) {
  return {{"homogeneity_max_err", r.homogeneity_max_err},
          {"symmetry_max_err", r.symmetry_max_err},
          {"triangle_violations", r.triangle_violations},
          {"triangle_samples", r.triangle_samples},
          {"quasi_triangle_constant", r.quasi_triangle_constant},
          {"equivalence_constants",
           {{"lower", r.equivalence.lower}, {"upper", r.equivalence.upper}, {"kappa", r.equivalence.kappa()}}}};
}

Json to_json(const RungMonitor& m) {
  return {{"eps", m.eps},
          {"min_u", m.min_u},
          {"min_v", m.min_v},
          {"sum_bound", to_json(m.sum_bound)},
          {"c_window", m.c_window},
          {"c_hat", m.c_hat},
          {"v_bound", to_json(m.v_bound)},
          {"c_fit", m.c_fit},
          {"stationarity", m.stationarity},
          {"tau_eps", opt(m.tau_eps)},
          {"tau_eps_lower_bound", m.tau_eps_lower_bound},
          {"window_margin", opt(m.window_margin)},
          {"c5", opt(m.c5)},
          {"sup_u", opt(m.sup_u)},
          {"sup_sigma", opt(m.sup_sigma)},
          {"lower_bound_margin", opt(m.lower_bound_margin)},
          {"passed", m.passed},
          {"violations", m.violations}};
}

Json to_json(const EquilibriumCondition& c) {
  return {{"xbar", to_json(c.xbar)},   {"estimated_c", num(c.estimated_c)}, {"holds", c.holds},
          {"warnings", c.warnings},    {"samples", c.samples},              {"seed", c.seed},
          {"horizon", c.horizon}};
}

Json to_json(const StabilityReport& r) {
  Json runs = Json::array();
  for (const auto& run : r.runs) {
    runs.push_back({{"x0", to_json(run.x0)},
                    {"initial_distance", run.initial_distance},
                    {"sup_distance", run.sup_distance},
                    {"ratio", num(run.ratio)}});
  }
  return {{"certified", r.certified}, {"refusal", opt(r.refusal)}, {"kappa", r.kappa},
          {"c_integral", r.c_integral}, {"c_bound", r.c_bound},     {"runs", runs},
          {"max_ratio", num(r.max_ratio)}, {"min_ratio", num(r.min_ratio)}, {"failures", r.failures}};
}

Json to_json(const NonuniquenessReport& r) {
  const EpsilonLadder& l = r.ladder;
  Json rungs = Json::array();
  for (const auto& rung : l.rungs) {
    Json j = to_json(rung.monitor);
    j["integrator"] = to_json(rung.trajectory.meta);
    rungs.push_back(std::move(j));
  }
  Json limit = nullptr;
  if (l.limit_residual) {
    const auto& lr = *l.limit_residual;
    limit = {{"delta", lr.delta},
             {"integral_residual_u", lr.integral_residual_u},
             {"integral_residual_v", lr.integral_residual_v},
             {"continuity_u", lr.continuity_u},
             {"continuity_v", lr.continuity_v}};
  }
  const RungMonitor& last = l.rungs.back().monitor;
  Json constants = {{"c_hat", last.c_hat}, {"c_fit", last.c_fit}, {"kappa", r.kappa}, {"c5", opt(last.c5)}};
  return {{"variant", to_string(r.variant)},
          {"ladder",
           {{"eps0", l.spec.eps0},
            {"ratio", l.spec.ratio},
            {"rungs", l.spec.rungs},
            {"tau", l.spec.tau},
            {"grid", l.spec.grid},
            {"tol", l.spec.tol},
            {"epsilons", l.epsilons},
            {"sup_differences", l.sup_differences},
            {"converged", l.converged},
            {"validated_window", l.validated_window},
            {"warnings", l.warnings},
            {"monitors_passed", l.monitors_passed()}}},
          {"rung_monitors", rungs},
          {"limit_residual", limit},
          {"constants", constants},
          {"residual_trivial", r.residual_trivial},
          {"residual_nontrivial", r.residual_nontrivial},
          {"max_separation", r.max_separation},
          {"gamma2_tau", r.gamma2_tau},
          {"verdict", r.verdict},
          {"failures", r.failures}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void emit_report(Json report, bool json_stdout, const std::filesystem::path& dir) {
  report["generated_at"] = utc_timestamp();
  if (json_stdout) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::filesystem::create_directories(dir);
  auto os = open_out(dir / "report.json");
  os << report.dump(2) << "\n";
  std::cerr << "report written to " << (dir / "report.json").string() << "\n";
}

void write_uv_csv(const std::filesystem::path& path, const UVTrajectory& uv) {
  auto os = open_out(path);
  os << "t,u,v\n" << std::setprecision(17);
  for (std::size_t k = 0; k < uv.times.size(); ++k) os << uv.times[k] << ',' << uv.u[k] << ',' << uv.v[k] << '\n';
}

void write_csv(const std::filesystem::path& path, const Trajectory& tr) {
  auto os = open_out(path);
  write_trajectory_csv(os, tr);
}

}  // namespace horoflow::cli
