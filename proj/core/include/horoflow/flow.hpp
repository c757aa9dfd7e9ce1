#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "horoflow/fields.hpp"
#include "horoflow/ode.hpp"
#include "horoflow/sampling.hpp"

namespace horoflow {

// gamma' = b(t, gamma), gamma(0) = x0 on [0, horizon], gamma valued in the domain.
struct CauchyProblem {
  VectorField field;
  GroupElement x0;
  double horizon = 1.0;
  Domain domain;

  // Throws DomainError if x0 is outside the domain, ConfigError on a bad horizon.
  void validate() const;
};

struct IntegratorMeta {
  std::string method;
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  double max_step = 0.0;
  double min_step = 0.0;
  StepStatistics stats;
};

struct ExitRecord {
  double time;
  GroupElement point;
};

struct Trajectory {
  Vector times;
  std::vector<GroupElement> states;
  IntegratorMeta meta;
  std::optional<ExitRecord> exit;
  std::optional<double> residual;

  std::size_t size() const { return times.size(); }
  // Coordinate i along the grid.
  Vector component(int i) const;
};

// Solves the componentwise system gamma_i' = sum_j a_j p_j^i(gamma) and
// records the integral residual on the output grid.
Trajectory integrate(const CauchyProblem& p, const IntegratorConfig& cfg);

// max_k |gamma(t_k) - gamma(0) - int_0^{t_k} b(s, gamma(s)) ds|_inf with the
// integral taken by composite Simpson on the (uniform) trajectory grid.
// Throws Error when the grid has fewer than 8 samples or is not uniform.
double residual(const Trajectory& tr, const VectorField& field);

// Problem for x-bar gamma: initial point x-bar x0 and coefficients
// a_i(t, x-bar^{-1} x). The domain is translated along.
CauchyProblem translate(const CauchyProblem& p, const GroupElement& xbar);

// Header t,x1,...,xq then one row per grid time at 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

// Trajectory from explicit samples (times must be uniform for residual()).
Trajectory make_trajectory(Vector times, std::vector<GroupElement> states, std::string method = "explicit");

}  // namespace horoflow
