#include "horoflow/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "horoflow/errors.hpp"
#include "horoflow/gauge.hpp"
#include "horoflow/minimize.hpp"
#include "horoflow/parallel.hpp"
#include "horoflow/quadrature.hpp"

namespace horoflow {
namespace {

constexpr double kMonitorTol = 1e-9;

void require_heisenberg_point(std::span<const double> x) {
  if (x.size() != 3) throw DimensionError("counterexample coefficients are defined on the Heisenberg group");
}

// First grid time where g changes sign from positive to non-positive,
// linearly interpolated.
std::optional<double> first_crossing(const Vector& times, const Vector& g) {
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (g[k] <= 0.0 && g[k - 1] > 0.0) {
      const double w = g[k - 1] / (g[k - 1] - g[k]);
      return times[k - 1] + w * (times[k] - times[k - 1]);
    }
    if (g[k - 1] <= 0.0) return times[k - 1];
  }
  return std::nullopt;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(Variant v) { return v == Variant::time_dependent ? "time" : "autonomous"; }

Variant variant_from_string(const std::string& s) {
  if (s == "time" || s == "time_dependent" || s == "time-dependent") return Variant::time_dependent;
  if (s == "autonomous") return Variant::autonomous;
  throw ConfigError("unknown counterexample variant '" + s + "' (expected time or autonomous)");
}

double a_time_dependent(double t, std::span<const double> x) {
  require_heisenberg_point(x);
  const double h = (x[0] - t) * (x[0] - t) + x[1] * x[1];
  const double z = x[2] - t * x[1];
  return std::pow(h * h + z * z, 0.25);
}

AxisDistance axis_distance(std::span<const double> x) {
  require_heisenberg_point(x);
  // ||(s,0,0)^{-1} x||^4 = ((x1 - s)^2 + x2^2)^2 + (x3 - s x2)^2; shift s = x1 + r.
  const ScalarMinimum m = minimize_quartic(x[1] * x[1], -x[1], x[2] - x[0] * x[1]);
  return {std::pow(std::max(0.0, m.value), 0.25), x[0] + m.argmin};
}

double a_autonomous(std::span<const double> x) { return axis_distance(x).value; }

double time_dependent_g(double t, double u, double v) {
  const double r = t / 3.0 * u;
  return std::pow(r * r * r * r + v * v, 0.25);
}

FValue autonomous_f_detail(double t, double u, double v) {
  if (t < 0.0) throw DomainError("autonomous F requires t >= 0");
  if (t == 0.0) return {std::sqrt(std::abs(v)), 0.0};
  const double b = t * u / 18.0;
  const ScalarMinimum m = minimize_quartic(b * b, b, v / 36.0);
  return {6.0 * std::pow(std::max(0.0, m.value), 0.25), m.argmin};
}

double autonomous_f(double t, double u, double v) { return autonomous_f_detail(t, u, v).value; }

VectorField counterexample_field(Variant variant, FramePtr heisenberg_frame) {
  if (!heisenberg_frame->algebra().is_heisenberg()) {
    throw AlgebraError("counterexample field requires the Heisenberg frame");
  }
  Coefficient one = [](double, std::span<const double>) { return 1.0; };
  if (variant == Variant::time_dependent) {
    return make_horizontal_field(std::move(heisenberg_frame),
                                 {one, [](double t, std::span<const double> x) { return a_time_dependent(t, x); }},
                                 true);
  }
  return make_horizontal_field(std::move(heisenberg_frame),
                               {one, [](double, std::span<const double> x) { return a_autonomous(x); }}, false);
}

VectorField counterexample_field(Variant variant) {
  static const FramePtr frame = make_frame(heisenberg_ptr());
  return counterexample_field(variant, frame);
}

double SingularUVSystem::g(double t, double u, double v) const {
  return variant == Variant::time_dependent ? time_dependent_g(t, u, v) : autonomous_f(t, u, v);
}

std::array<double, 2> uv_rhs(const SingularUVSystem& sys, double t, double u, double v) {
  const double s = t + sys.eps;
  if (!(s > 0.0)) throw DomainError("uv_rhs: t + eps must be positive");
  return {(-3.0 * u + 3.0 * sys.g(t, u, v)) / s, (-4.0 * v + 4.0 * u) / s};
}

ComparisonResult comparison_monitor(std::span<const double> times, std::span<const double> z, double eps, double c1,
                                    double c2, double c3, double c4, ComparisonVariant variant, double tol) {
  if (times.size() != z.size()) throw DimensionError("comparison_monitor: times and samples differ in length");
  if (!(c2 > 0.0)) throw MonitorError("comparison_monitor: c2 must be positive");
  if (c4 < 0.0) throw MonitorError("comparison_monitor: c4 must be non-negative");
  if (variant == ComparisonVariant::general) {
    if (c1 < 0.0 || c3 < 0.0) throw MonitorError("comparison_monitor: general variant needs c1, c3 >= 0");
  } else {
    if (c1 > 0.0) throw MonitorError("comparison_monitor: negative variant needs c1 <= 0");
    if (c3 != 0.0) throw MonitorError("comparison_monitor: negative variant needs c3 = 0");
  }
  ComparisonResult r{true, std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double s = times[k] + eps;
    double bound = c1 / c2 + c4 * s;
    if (variant == ComparisonVariant::general) bound *= std::exp(c3 * s);
    const double margin = bound - z[k];
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      r.worst_time = times[k];
    }
  }
  r.passed = r.worst_margin >= -tol;
  return r;
}

double exp_bound_constant(double tau, double eps) {
  const double s = tau + eps;
  return 1.5 * std::expm1(s) / s;
}

IntegratorConfig uv_integrator_config(double tau, int grid) {
  IntegratorConfig cfg;
  cfg.method = Method::dopri5;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-13;
  cfg.max_step = tau / (grid - 1);
  cfg.min_step = 1e-15;
  cfg.dense_output_grid = grid;
  return cfg;
}

RegularizedSolve solve_regularized(const SingularUVSystem& sys, double tau, const IntegratorConfig& cfg) {
  if (!(sys.eps > 0.0)) throw ConfigError("solve_regularized: eps must be positive");
  if (!(tau > 0.0) || tau > 1.0) throw ConfigError("solve_regularized: tau must lie in (0, 1]");

  OdeSystem ode;
  ode.dim = 2;
  ode.rhs = [&sys](double t, std::span<const double> y, std::span<double> dy) {
    const auto d = uv_rhs(sys, t, y[0], y[1]);
    dy[0] = d[0];
    dy[1] = d[1];
  };
  OdeSolution sol = solve_ode(ode, {1.0, 1.0}, tau, cfg);

  RegularizedSolve out;
  UVTrajectory& tr = out.trajectory;
  tr.eps = sys.eps;
  tr.times = sol.times;
  for (const auto& s : sol.states) {
    tr.u.push_back(s[0]);
    tr.v.push_back(s[1]);
  }
  tr.meta = {to_string(cfg.method), cfg.abs_tol, cfg.rel_tol, cfg.max_step, cfg.min_step, sol.stats};

  RungMonitor& mon = out.monitor;
  const double eps = sys.eps;
  const std::size_t n = tr.times.size();
  auto fail = [&mon](const std::string& what) {
    mon.passed = false;
    mon.violations.push_back(what);
  };

  mon.eps = eps;
  const auto d0 = uv_rhs(sys, 0.0, tr.u[0], tr.v[0]);
  mon.stationarity = std::max(std::abs(d0[0]), std::abs(d0[1]));
  if (mon.stationarity > cfg.abs_tol) fail("stationarity at t=0: |rhs| = " + fmt(mon.stationarity));

  mon.min_u = *std::min_element(tr.u.begin(), tr.u.end());
  mon.min_v = *std::min_element(tr.v.begin(), tr.v.end());
  if (mon.min_u < -kMonitorTol) fail("u >= 0 violated: min u = " + fmt(mon.min_u));
  if (mon.min_v < -kMonitorTol) fail("v >= 0 violated: min v = " + fmt(mon.min_v));

  Vector z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = tr.u[k] + SingularUVSystem::lambda1 * tr.v[k];
  mon.sum_bound = comparison_monitor(tr.times, z, eps, 1.5, 1.0, 1.0, 0.0, ComparisonVariant::general, kMonitorTol);
  if (!mon.sum_bound.passed) fail("u + v/2 <= (3/2) e^{t+eps} violated, margin " + fmt(mon.sum_bound.worst_margin));

  mon.c_window = exp_bound_constant(tau, eps);
  mon.c_hat = 4.0 * mon.c_window;
  mon.v_bound =
      comparison_monitor(tr.times, tr.v, eps, 6.0, 6.0, 0.0, mon.c_hat, ComparisonVariant::general, kMonitorTol);
  if (!mon.v_bound.passed) fail("v <= 1 + c_hat (t+eps) violated, margin " + fmt(mon.v_bound.worst_margin));

  Vector gap(n);
  mon.c_fit = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = tr.times[k] + eps;
    mon.c_fit = std::max(mon.c_fit, (tr.v[k] - 1.0) / s);
    gap[k] = tr.v[k] - mon.c_hat * s;
  }
  mon.tau_eps = first_crossing(tr.times, gap);
  mon.tau_eps_lower_bound = 1.0 / (26.0 * mon.c_hat);
  const bool small_eps = eps < mon.tau_eps_lower_bound;
  if (small_eps && mon.tau_eps && *mon.tau_eps < mon.tau_eps_lower_bound - kMonitorTol) {
    fail("tau_eps = " + fmt(*mon.tau_eps) + " below 1/(26 c_hat) = " + fmt(mon.tau_eps_lower_bound));
  }
  if (small_eps) {
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n && tr.times[k] <= mon.tau_eps_lower_bound; ++k) {
      const double bound = 12.0 * mon.c_hat * (tr.times[k] + eps);
      margin = std::min(margin, bound - std::max(std::abs(tr.u[k] - 1.0), std::abs(tr.v[k] - 1.0)));
    }
    mon.window_margin = margin;
    if (margin < -kMonitorTol) fail("|u-1|,|v-1| <= 12 c_hat (t+eps) violated, margin " + fmt(margin));
  }

  if (sys.variant == Variant::autonomous) {
    Vector f(n), sigma(n);
    double sup_u = 0.0, sup_sigma = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const FValue fv = autonomous_f_detail(tr.times[k], tr.u[k], tr.v[k]);
      f[k] = fv.value;
      sigma[k] = fv.sigma;
      sup_u = std::max(sup_u, std::abs(tr.u[k]));
      sup_sigma = std::max(sup_sigma, std::abs(fv.sigma));
    }
    const double c5 = std::max(mon.c_hat, 2.0 * sup_u * sup_sigma);
    mon.c5 = c5;
    mon.sup_u = sup_u;
    mon.sup_sigma = sup_sigma;
    Vector g5(n);
    for (std::size_t k = 0; k < n; ++k) g5[k] = tr.v[k] - c5 * (tr.times[k] + eps);
    const double t_end = first_crossing(tr.times, g5).value_or(tau);
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n && tr.times[k] <= t_end; ++k) margin = std::min(margin, f[k] - g5[k]);
    mon.lower_bound_margin = margin;
    if (margin < -kMonitorTol) fail("F >= v - c5 (t+eps) violated, margin " + fmt(margin));
  }
  return out;
}

void LadderSpec::validate() const {
  if (!(eps0 > 0.0) || eps0 > 0.1) throw ConfigError("ladder eps0 must lie in (0, 0.1]");
  if (!(ratio > 0.0) || !(ratio < 1.0)) throw ConfigError("ladder ratio must lie in (0, 1)");
  if (rungs < 4) throw ConfigError("ladder needs at least 4 rungs");
  if (!(tau > 0.0) || tau > 1.0) throw ConfigError("ladder tau must lie in (0, 1]");
  if (grid < 8) throw ConfigError("ladder grid needs at least 8 points");
  if (!(tol > 0.0)) throw ConfigError("ladder tolerance must be positive");
}

bool EpsilonLadder::gaps_decrease_from(int from) const {
  // sup_differences[k-1] is gap k.
  for (int k = std::max(from, 1); k + 1 <= static_cast<int>(sup_differences.size()); ++k) {
    if (!(sup_differences[k] < sup_differences[k - 1])) return false;
  }
  return true;
}

bool EpsilonLadder::monitors_passed() const {
  return std::all_of(rungs.begin(), rungs.end(), [](const RegularizedSolve& r) { return r.monitor.passed; });
}

EpsilonLadder epsilon_limit(const LadderSpec& spec, const IntegratorConfig& cfg, int threads) {
  spec.validate();
  if (cfg.dense_output_grid != spec.grid) throw ConfigError("integrator output grid must match the ladder grid");
  EpsilonLadder ladder;
  ladder.spec = spec;
  for (int k = 0; k < spec.rungs; ++k) ladder.epsilons.push_back(spec.eps0 * std::pow(spec.ratio, k));
  ladder.rungs.resize(spec.rungs);
  parallel_for(static_cast<std::size_t>(spec.rungs), threads, [&](std::size_t k) {
    ladder.rungs[k] = solve_regularized({spec.variant, ladder.epsilons[k]}, spec.tau, cfg);
  });

  for (int k = 1; k < spec.rungs; ++k) {
    const auto& a = ladder.rungs[k - 1].trajectory;
    const auto& b = ladder.rungs[k].trajectory;
    if (a.times.size() != b.times.size()) throw IntegrationError("ladder rungs do not share the output grid");
    double gap = 0.0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
      gap = std::max({gap, std::abs(a.u[i] - b.u[i]), std::abs(a.v[i] - b.v[i])});
    }
    ladder.sup_differences.push_back(gap);
  }

  const auto& gaps = ladder.sup_differences;
  const bool tail_decreasing = gaps.size() < 2 || gaps.back() < gaps[gaps.size() - 2];
  ladder.converged = gaps.back() <= spec.tol && tail_decreasing;
  ladder.validated_window = 1.0 / (26.0 * ladder.rungs.back().monitor.c_hat);
  if (!tail_decreasing) ladder.warnings.push_back("sup-norm gaps are not decreasing; no limit declared");
  if (!ladder.converged && tail_decreasing) {
    ladder.warnings.push_back("last gap " + fmt(gaps.back()) + " exceeds tolerance " + fmt(spec.tol) +
                              "; no limit declared");
  }
  if (spec.tau > ladder.validated_window && ladder.gaps_decrease_from(1)) {
    ladder.warnings.push_back("tau = " + fmt(spec.tau) + " exceeds the validated window 1/(26 c_hat) = " +
                              fmt(ladder.validated_window) + "; accepted because the gaps keep decreasing");
  }
  if (ladder.converged) {
    ladder.limit = ladder.rungs.back().trajectory;
    ladder.limit_residual = singular_residual(spec.variant, *ladder.limit);
  }
  return ladder;
}

LimitResidual singular_residual(Variant variant, const UVTrajectory& uv) {
  const std::size_t n = uv.times.size();
  if (n < 8) throw Error("singular_residual: grid too coarse");
  const double h = uv.times[1] - uv.times[0];
  const SingularUVSystem sys{variant, 0.0};
  Vector fu(n - 1), fv(n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    const double t = uv.times[k];
    fu[k - 1] = (-3.0 * uv.u[k] + 3.0 * sys.g(t, uv.u[k], uv.v[k])) / t;
    fv[k - 1] = (-4.0 * uv.v[k] + 4.0 * uv.u[k]) / t;
  }
  const auto iu = cumulative_simpson(fu, h);
  const auto iv = cumulative_simpson(fv, h);
  LimitResidual r;
  r.delta = uv.times[1];
  for (std::size_t k = 1; k < n; ++k) {
    r.integral_residual_u = std::max(r.integral_residual_u, std::abs(uv.u[k] - uv.u[1] - iu[k - 1]));
    r.integral_residual_v = std::max(r.integral_residual_v, std::abs(uv.v[k] - uv.v[1] - iv[k - 1]));
  }
  r.continuity_u = std::abs(uv.u[1] - 1.0);
  r.continuity_v = std::abs(uv.v[1] - 1.0);
  return r;
}

Trajectory reconstruct_gamma(const UVTrajectory& uv) {
  std::vector<GroupElement> states;
  states.reserve(uv.times.size());
  for (std::size_t k = 0; k < uv.times.size(); ++k) {
    const double t = uv.times[k];
    const double t3 = t * t * t;
    states.push_back(GroupElement{t, t3 * uv.u[k] / 18.0, t3 * t * (2.0 * uv.u[k] - uv.v[k]) / 36.0});
  }
  Trajectory tr = make_trajectory(uv.times, std::move(states), "reconstructed");
  tr.meta.abs_tol = uv.meta.abs_tol;
  tr.meta.rel_tol = uv.meta.rel_tol;
  tr.meta.stats = uv.meta.stats;
  return tr;
}

Trajectory trivial_solution(const Vector& times) {
  std::vector<GroupElement> states;
  states.reserve(times.size());
  for (double t : times) states.push_back(GroupElement{t, 0.0, 0.0});
  return make_trajectory(times, std::move(states), "exact");
}

NonuniquenessReport nonuniqueness_report(const LadderSpec& spec, const IntegratorConfig& cfg,
                                         const NonuniquenessThresholds& th, int threads) {
  NonuniquenessReport rep;
  rep.variant = spec.variant;
  rep.ladder = epsilon_limit(spec, cfg, threads);
  const auto alg = heisenberg_ptr();
  rep.kappa = equivalence_constants(*alg, SmoothGauge(*alg), KoranyiGauge(*alg), 4096, 7).kappa();
  auto fail = [&rep](const std::string& what) { rep.failures.push_back(what); };

  if (!rep.ladder.monitors_passed()) fail("proof-bound monitor violated on some rung");
  if (static_cast<int>(rep.ladder.sup_differences.size()) > th.gaps_decreasing_from &&
      !rep.ladder.gaps_decrease_from(th.gaps_decreasing_from)) {
    fail("sup-norm gaps do not decrease past rung " + std::to_string(th.gaps_decreasing_from));
  }
  if (!rep.ladder.limit) {
    fail("epsilon ladder did not converge; no nontrivial solution reconstructed");
    rep.verdict = false;
    return rep;
  }

  const VectorField field = counterexample_field(spec.variant);
  rep.trivial = trivial_solution(rep.ladder.limit->times);
  rep.gamma = reconstruct_gamma(*rep.ladder.limit);
  rep.residual_trivial = residual(rep.trivial, field);
  rep.residual_nontrivial = residual(rep.gamma, field);
  rep.trivial.residual = rep.residual_trivial;
  rep.gamma.residual = rep.residual_nontrivial;

  rep.separation.resize(rep.gamma.size());
  for (std::size_t k = 0; k < rep.gamma.size(); ++k) {
    rep.separation[k] = koranyi_norm(bch_multiply(*alg, inverse(rep.trivial.states[k]), rep.gamma.states[k]));
  }
  rep.max_separation = *std::max_element(rep.separation.begin(), rep.separation.end());
  rep.gamma2_tau = rep.gamma.states.back()[1];

  const double max_res = std::max(rep.residual_trivial, rep.residual_nontrivial);
  if (rep.residual_trivial > th.max_residual) fail("trivial-solution residual " + fmt(rep.residual_trivial));
  if (rep.residual_nontrivial > th.max_residual) fail("reconstructed-solution residual " + fmt(rep.residual_nontrivial));
  if (!(rep.max_separation >= th.separation_factor * max_res)) {
    fail("separation " + fmt(rep.max_separation) + " below " + fmt(th.separation_factor) + " x residual " +
         fmt(max_res));
  }
  if (!(rep.gamma2_tau > 0.0)) fail("gamma_2(tau) is not positive");
  rep.verdict = rep.failures.empty();
  return rep;
}

}  // namespace horoflow
