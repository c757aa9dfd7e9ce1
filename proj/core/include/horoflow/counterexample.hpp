#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "horoflow/fields.hpp"
#include "horoflow/flow.hpp"
#include "horoflow/ode.hpp"

namespace horoflow {

// Non-uniqueness counterexample on the Heisenberg group: b = X1 + a X2 with
// a(t, x) = ||(t,0,0)^{-1} x|| (time dependent) or a(x) = inf_s d((s,0,0), x)
// (autonomous). Solutions from 0 are the trivial curve (t,0,0) and the curve
// (t, t^3 u/18, t^4 (2u - v)/36) built from a solution of the singular system
//   t u' = -3u + 3 G(t, u, v),   t v' = -4v + 4u,   u(0) = v(0) = 1,
// obtained as the limit of the regularized systems where t is replaced by t + eps.

enum class Variant { time_dependent, autonomous };

std::string to_string(Variant v);
// Accepts "time", "time_dependent", "autonomous".
Variant variant_from_string(const std::string& s);

double a_time_dependent(double t, std::span<const double> x);

struct AxisDistance {
  double value;   // inf_s d((s,0,0), x)
  double argmin;  // the minimizing s
};

AxisDistance axis_distance(std::span<const double> x);
double a_autonomous(std::span<const double> x);

// G for the time-dependent variant: ((t/3)^4 u^4 + v^2)^{1/4}.
double time_dependent_g(double t, double u, double v);

struct FValue {
  double value;
  double sigma;  // minimizer of (s^2 + t^2 (u/18)^2)^2 + (v/36 + s t u/18)^2
};

// F(t,u,v) = 6 inf_s ((s^2 + t^2 |u/18|^2)^2 + |v/36 + s t u/18|^2)^{1/4};
// F(0,u,v) = sqrt|v| in closed form. Requires t >= 0.
FValue autonomous_f_detail(double t, double u, double v);
double autonomous_f(double t, double u, double v);

VectorField counterexample_field(Variant variant, FramePtr heisenberg_frame);
VectorField counterexample_field(Variant variant);

struct SingularUVSystem {
  Variant variant = Variant::time_dependent;
  double eps = 0.0;

  static constexpr double lambda1 = 0.5;
  static constexpr double lambda2 = 0.75;

  double g(double t, double u, double v) const;
};

// ((-3u + 3G)/(t + eps), (-4v + 4u)/(t + eps)); throws DomainError if t + eps <= 0.
std::array<double, 2> uv_rhs(const SingularUVSystem& sys, double t, double u, double v);

struct UVTrajectory {
  double eps = 0.0;
  Vector times;
  Vector u;
  Vector v;
  IntegratorMeta meta;
};

enum class ComparisonVariant { general, c3_zero_c1_nonpositive };

struct ComparisonResult {
  bool passed;
  double worst_margin;  // min over samples of bound(t) - z(t)
  double worst_time;
};

// Checks z(t) <= (c1/c2 + c4 (t+eps)) e^{c3 (t+eps)} (general) or
// z(t) <= c1/c2 + c4 (t+eps) (c3 = 0, c1 <= 0) on every sample, allowing
// `tol`. Throws MonitorError if the constants violate the preconditions.
ComparisonResult comparison_monitor(std::span<const double> times, std::span<const double> z, double eps, double c1,
                                    double c2, double c3, double c4, ComparisonVariant variant, double tol = 1e-9);

// The smallest c with (3/2) e^{t+eps} <= 3/2 + c (t + eps) on [0, tau].
double exp_bound_constant(double tau, double eps);

struct RungMonitor {
  double eps = 0.0;
  double min_u = 0.0;
  double min_v = 0.0;
  ComparisonResult sum_bound{true, 0.0, 0.0};  // u + v/2 <= (3/2) e^{t+eps}
  double c_window = 0.0;                        // exp_bound_constant(tau, eps)
  double c_hat = 0.0;                           // 4 c_window
  ComparisonResult v_bound{true, 0.0, 0.0};    // v <= 1 + c_hat (t + eps)
  double c_fit = 0.0;                           // max (v - 1)/(t + eps)
  double stationarity = 0.0;                    // |rhs(0, u(0), v(0))|_inf
  std::optional<double> tau_eps;                // first t with v = c_hat (t + eps)
  double tau_eps_lower_bound = 0.0;             // 1/(26 c_hat)
  // |u - 1|, |v - 1| <= 12 c_hat (t + eps) for t <= 1/(26 c_hat); present
  // when eps < 1/(26 c_hat).
  std::optional<double> window_margin;
  // Autonomous variant only.
  std::optional<double> c5;
  std::optional<double> sup_u;
  std::optional<double> sup_sigma;
  std::optional<double> lower_bound_margin;  // F - (v - c5 (t+eps)) on [0, tau_eps(c5)]
  bool passed = true;
  std::vector<std::string> violations;
};

struct RegularizedSolve {
  UVTrajectory trajectory;
  RungMonitor monitor;
};

// Default integrator settings for the (u, v) solves on a grid of `grid`
// points over [0, tau]: Dormand-Prince at 1e-13 with the step capped by the
// grid spacing so that every grid sample lies within one step of a node.
IntegratorConfig uv_integrator_config(double tau, int grid);

// Integrates the regularized system (eps > 0, tau <= 1) from u = v = 1 and
// evaluates every proof-bound monitor along the solution. Violations are
// recorded in the monitor (passed = false), never thrown.
RegularizedSolve solve_regularized(const SingularUVSystem& sys, double tau, const IntegratorConfig& cfg);

struct LadderSpec {
  Variant variant = Variant::time_dependent;
  double eps0 = 0.1;
  double ratio = 0.5;
  int rungs = 14;
  double tau = 0.3;
  int grid = 2048;
  double tol = 1e-6;

  // Throws ConfigError unless eps0 in (0, 0.1], ratio in (0, 1), rungs >= 4,
  // tau in (0, 1] and grid >= 8.
  void validate() const;
};

struct LimitResidual {
  double delta = 0.0;               // left end of the checked window (first grid time)
  double integral_residual_u = 0.0;  // on [delta, tau]
  double integral_residual_v = 0.0;
  double continuity_u = 0.0;         // |u(delta) - 1|
  double continuity_v = 0.0;
};

struct EpsilonLadder {
  LadderSpec spec;
  Vector epsilons;
  std::vector<RegularizedSolve> rungs;
  // sup_differences[k-1] = sup over the grid of |(u,v)_k - (u,v)_{k-1}|.
  Vector sup_differences;
  bool converged = false;
  // Largest window on which the uniform bounds are proven, 1/(26 c_hat).
  double validated_window = 0.0;
  std::vector<std::string> warnings;
  std::optional<UVTrajectory> limit;
  std::optional<LimitResidual> limit_residual;

  // True if gap k+1 < gap k for every rung index k >= from (gap k compares
  // rungs k and k-1).
  bool gaps_decrease_from(int from) const;
  bool monitors_passed() const;
};

// Solves every rung (in parallel when threads > 1) on a common grid, records
// sup-norm gaps and declares a limit only if the last gap is <= tol and the
// tail of the gap sequence is decreasing.
EpsilonLadder epsilon_limit(const LadderSpec& spec, const IntegratorConfig& cfg, int threads = 1);

// Residual of a (u, v) pair against the singular system in integral form on
// [t_1, tau], plus continuity at 0.
LimitResidual singular_residual(Variant variant, const UVTrajectory& uv);

// gamma(t) = (t, t^3 u/18, t^4 (2u - v)/36).
Trajectory reconstruct_gamma(const UVTrajectory& uv);

// (t, 0, 0) on the same grid.
Trajectory trivial_solution(const Vector& times);

struct NonuniquenessThresholds {
  double max_residual = 1e-6;
  double separation_factor = 1e4;
  int gaps_decreasing_from = 4;
};

struct NonuniquenessReport {
  Variant variant = Variant::time_dependent;
  EpsilonLadder ladder;
  Trajectory trivial;
  Trajectory gamma;
  double residual_trivial = 0.0;
  double residual_nontrivial = 0.0;
  Vector separation;
  double max_separation = 0.0;
  double gamma2_tau = 0.0;
  double kappa = 0.0;  // smooth-gauge / Korányi equivalence constant
  bool verdict = false;
  std::vector<std::string> failures;
};

NonuniquenessReport nonuniqueness_report(const LadderSpec& spec, const IntegratorConfig& cfg,
                                         const NonuniquenessThresholds& thresholds = {}, int threads = 1);

}  // namespace horoflow
