#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "horoflow/group.hpp"

namespace horoflow {

enum class Method { rk4, dopri5 };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct IntegratorConfig {
  Method method = Method::dopri5;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_step = 1e-2;
  double min_step = 1e-14;
  // Number of uniformly spaced output times in [0, T], endpoints included.
  int dense_output_grid = 1025;
  long max_steps = 50'000'000;

  // Throws ConfigError on non-positive tolerances, min_step > max_step or a
  // grid with fewer than two points.
  void validate() const;
};

struct StepStatistics {
  long accepted = 0;
  long rejected = 0;
  long rhs_evaluations = 0;
  double smallest_step = 0.0;
  double largest_step = 0.0;
};

// y' = f(t, y), with an optional domain predicate. The solver stops at the
// first time the state leaves the domain.
struct OdeSystem {
  int dim = 0;
  std::function<void(double t, std::span<const double> y, std::span<double> dydt)> rhs;
  std::function<bool(std::span<const double> y)> inside;
};

struct OdeSolution {
  Vector times;
  std::vector<Vector> states;
  StepStatistics stats;
  std::optional<double> exit_time;
  Vector exit_state;
};

// Integrates on [0, horizon] and samples the dense output (cubic Hermite on
// each accepted step) on the uniform output grid. Throws IntegrationError on
// step-size underflow, step-count overflow or a non-finite right-hand side.
OdeSolution solve_ode(const OdeSystem& sys, const Vector& y0, double horizon, const IntegratorConfig& cfg);

}  // namespace horoflow
