#include "horoflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "horoflow/errors.hpp"
#include "horoflow/quadrature.hpp"

namespace horoflow {

std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 3) throw Error("cumulative_simpson: need at least three samples");
  std::vector<double> out(n, 0.0);
  out[1] = h * (5.0 * f[0] + 8.0 * f[1] - f[2]) / 12.0;
  for (std::size_t k = 2; k < n; ++k) {
    out[k] = out[k - 2] + h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
  }
  return out;
}

double simpson(std::span<const double> f, double h) { return cumulative_simpson(f, h).back(); }

void CauchyProblem::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("Cauchy problem horizon must be positive");
  if (x0.size() != field.dimension()) throw DimensionError("initial point has wrong dimension");
  if (!domain.contains(field.algebra(), x0.coords())) throw DomainError("initial point lies outside the domain");
}

Vector Trajectory::component(int i) const {
  Vector c(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) c[k] = states[k][i];
  return c;
}

Trajectory integrate(const CauchyProblem& p, const IntegratorConfig& cfg) {
  p.validate();
  const VectorField& field = p.field;
  const GradedAlgebra& alg = field.algebra();
  OdeSystem sys;
  sys.dim = field.dimension();
  sys.rhs = [&field](double t, std::span<const double> y, std::span<double> dy) { field.evaluate(t, y, dy); };
  if (!p.domain.is_whole_space()) {
    sys.inside = [&p, &alg](std::span<const double> y) { return p.domain.contains(alg, y); };
  }
  OdeSolution sol = solve_ode(sys, p.x0.vector(), p.horizon, cfg);

  Trajectory tr;
  tr.times = std::move(sol.times);
  tr.states.reserve(sol.states.size());
  for (auto& s : sol.states) tr.states.emplace_back(std::move(s));
  tr.meta = {to_string(cfg.method), cfg.abs_tol, cfg.rel_tol, cfg.max_step, cfg.min_step, sol.stats};
  if (sol.exit_time) tr.exit = ExitRecord{*sol.exit_time, GroupElement(sol.exit_state)};
  if (tr.size() >= 8) tr.residual = residual(tr, field);
  return tr;
}

double residual(const Trajectory& tr, const VectorField& field) {
  const std::size_t n = tr.size();
  if (n < 8) throw Error("residual: trajectory grid too coarse (need at least 8 samples)");
  const double h = tr.times[1] - tr.times[0];
  for (std::size_t k = 1; k < n; ++k) {
    const double hk = tr.times[k] - tr.times[k - 1];
    if (std::abs(hk - h) > 1e-9 * std::max(1.0, std::abs(h))) throw Error("residual: trajectory grid is not uniform");
  }
  const int q = field.dimension();
  std::vector<Vector> b(q, Vector(n));
  Vector tmp(q);
  for (std::size_t k = 0; k < n; ++k) {
    field.evaluate(tr.times[k], tr.states[k].coords(), tmp);
    for (int i = 0; i < q; ++i) b[i][k] = tmp[i];
  }
  double worst = 0.0;
  for (int i = 0; i < q; ++i) {
    const auto integral = cumulative_simpson(b[i], h);
    for (std::size_t k = 0; k < n; ++k) {
      worst = std::max(worst, std::abs(tr.states[k][i] - tr.states[0][i] - integral[k]));
    }
  }
  return worst;
}

CauchyProblem translate(const CauchyProblem& p, const GroupElement& xbar) {
  const GradedAlgebra& alg = p.field.algebra();
  const AlgebraPtr alg_ptr = p.field.frame().algebra_ptr();
  const GroupElement xbar_inv = inverse(xbar);
  std::vector<Coefficient> coeffs;
  for (const auto& a : p.field.coefficients()) {
    coeffs.push_back([a, alg_ptr, xbar_inv](double t, std::span<const double> x) {
      const GroupElement local = bch_multiply(*alg_ptr, xbar_inv, GroupElement(Vector(x.begin(), x.end())));
      return a(t, local.coords());
    });
  }
  CauchyProblem out{VectorField(p.field.frame_ptr(), std::move(coeffs), p.field.time_dependent()),
                    bch_multiply(alg, xbar, p.x0), p.horizon, p.domain};
  if (out.domain.box) {
    out.domain.translation = p.domain.translation ? bch_multiply(alg, xbar, *p.domain.translation) : xbar;
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  const int q = tr.states.empty() ? 0 : tr.states.front().size();
  os << "t";
  for (int i = 0; i < q; ++i) os << ",x" << (i + 1);
  os << "\n" << std::setprecision(17);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    os << tr.times[k];
    for (int i = 0; i < q; ++i) os << "," << tr.states[k][i];
    os << "\n";
  }
}

Trajectory make_trajectory(Vector times, std::vector<GroupElement> states, std::string method) {
  if (times.size() != states.size()) throw DimensionError("make_trajectory: times and states differ in length");
  Trajectory tr;
  tr.times = std::move(times);
  tr.states = std::move(states);
  tr.meta.method = std::move(method);
  return tr;
}

}  // namespace horoflow
