#include "horoflow/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "horoflow/errors.hpp"
#include "horoflow/parallel.hpp"
#include "horoflow/quadrature.hpp"

namespace horoflow {

double EquilibriumCondition::c_integral(double horizon_t) const {
  if (!c_profile) return estimated_c * horizon_t;
  constexpr int n = 1025;
  Vector v(n);
  const double h = horizon_t / (n - 1);
  for (int k = 0; k < n; ++k) v[k] = c_profile(k * h);
  return simpson(v, h);
}

EquilibriumCondition verify_equilibrium_condition(const VectorField& b, const GroupElement& xbar,
                                                  const HomogeneousDistance& dst, const Box& box, double horizon,
                                                  int samples, std::uint64_t seed, double threshold) {
  if (samples < 1) throw ConfigError("verify_equilibrium_condition: samples must be >= 1");
  if (!(horizon >= 0.0)) throw ConfigError("verify_equilibrium_condition: horizon must be non-negative");
  const GradedAlgebra& alg = b.algebra();
  if (xbar.size() != alg.dimension() || box.dimension() != alg.dimension()) {
    throw DimensionError("verify_equilibrium_condition: dimension mismatch");
  }
  box.validate();

  EquilibriumCondition cond;
  cond.xbar = xbar;
  cond.samples = samples;
  cond.seed = seed;
  cond.horizon = horizon;

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  double worst_distance = 0.0;
  auto probe = [&](double t, const GroupElement& x) {
    const double d = dst(x, xbar);
    if (d == 0.0) return;
    const Vector a = b.coefficients_at(t, x.coords());
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!std::isfinite(a[i])) {
        std::ostringstream os;
        os << "field undefined at a sample point (coefficient " << i + 1 << ", t=" << t << ")";
        throw DomainError(os.str());
      }
      sum += std::pow(std::abs(a[i]), 1.0 / alg.degree(static_cast<int>(i)));
    }
    const double ratio = sum / d;
    if (ratio > worst) {
      worst = ratio;
      worst_distance = d;
    }
  };

  for (int k = 0; k < samples; ++k) {
    const double t = b.time_dependent() ? horizon * unit(rng) : 0.0;
    probe(t, sample_in_box(box, rng));
  }
  // Dyadic approach toward x-bar: the condition is only informative near x-bar.
  constexpr int directions = 8;
  for (int dir = 0; dir < directions; ++dir) {
    const GroupElement z = sample_in_cube(alg.dimension(), 1.0, rng);
    for (int k = 1; k <= 40; ++k) {
      const GroupElement x = bch_multiply(alg, xbar, dilate(alg, std::ldexp(1.0, -k), z));
      if (!box.contains(x.coords())) continue;
      const double t = b.time_dependent() ? horizon * unit(rng) : 0.0;
      probe(t, x);
    }
  }

  cond.estimated_c = worst;
  cond.holds = std::isfinite(worst) && worst <= threshold;
  if (!cond.holds) {
    std::ostringstream os;
    os << "degeneracy condition fails: ratio " << worst << " at distance " << worst_distance
       << " from the equilibrium exceeds " << threshold;
    cond.warnings.push_back(os.str());
  }
  return cond;
}

StabilityReport stability_monitor(const VectorField& b, const HomogeneousDistance& dst,
                                  const EquilibriumCondition& cond, const std::vector<GroupElement>& initial_points,
                                  double horizon, const IntegratorConfig& cfg, int threads, std::uint64_t seed) {
  StabilityReport rep;
  if (!cond.holds || !std::isfinite(cond.estimated_c)) {
    rep.refusal = "precondition violated: the degeneracy condition at the equilibrium does not hold "
                  "(estimated c = " + std::to_string(cond.estimated_c) + "); stability is not certified";
    return rep;
  }
  const GradedAlgebra& alg = b.algebra();
  rep.kappa = equivalence_constants(alg, SmoothGauge(alg), dst.gauge(), 4096, seed).kappa();
  rep.c_integral = cond.c_integral(horizon);
  rep.c_bound = rep.kappa * std::exp(rep.kappa * rep.c_integral);

  rep.runs.resize(initial_points.size());
  parallel_for(initial_points.size(), threads, [&](std::size_t k) {
    CauchyProblem p{b, initial_points[k], horizon, Domain::whole_space()};
    const Trajectory tr = integrate(p, cfg);
    StabilityRun run;
    run.x0 = initial_points[k];
    run.initial_distance = dst(run.x0, cond.xbar);
    for (const auto& s : tr.states) run.sup_distance = std::max(run.sup_distance, dst(s, cond.xbar));
    run.ratio = run.initial_distance > 0.0 ? run.sup_distance / run.initial_distance
                                           : (run.sup_distance <= 1e-12 ? 1.0
                                                                        : std::numeric_limits<double>::infinity());
    rep.runs[k] = run;
  });

  rep.max_ratio = 0.0;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& r : rep.runs) {
    if (r.initial_distance > 0.0) {
      rep.max_ratio = std::max(rep.max_ratio, r.ratio);
      rep.min_ratio = std::min(rep.min_ratio, r.ratio);
    }
    if (r.initial_distance == 0.0 && r.sup_distance > 1e-12) {
      rep.failures.push_back("solution from the equilibrium left it: sup distance " + std::to_string(r.sup_distance));
    } else if (!(r.ratio <= rep.c_bound)) {
      std::ostringstream os;
      os << "ratio " << r.ratio << " from initial distance " << r.initial_distance << " exceeds the bound "
         << rep.c_bound;
      rep.failures.push_back(os.str());
    }
  }
  if (rep.max_ratio == 0.0) rep.max_ratio = rep.min_ratio = 1.0;
  rep.certified = rep.failures.empty();
  return rep;
}

InvolutiveModule::InvolutiveModule(FramePtr frame, std::vector<Vector> weights)
    : frame_(std::move(frame)), weights_(std::move(weights)) {
  const int q = frame_->dimension();
  const int m = frame_->algebra().horizontal_dimension();
  std::vector<Vector> basis;
  for (const auto& w : weights_) {
    if (static_cast<int>(w.size()) != m) throw DimensionError("involutive module weights must have one entry per X_i");
    Vector v(q, 0.0);
    std::copy(w.begin(), w.end(), v.begin());
    vectors_.push_back(v);
    // Gram-Schmidt for the projector.
    for (const auto& e : basis) {
      double dot = 0.0;
      for (int i = 0; i < q; ++i) dot += v[i] * e[i];
      for (int i = 0; i < q; ++i) v[i] -= dot * e[i];
    }
    double norm = 0.0;
    for (double c : v) norm += c * c;
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw DimensionError("involutive module generators are linearly dependent");
    for (double& c : v) c /= norm;
    basis.push_back(std::move(v));
  }
  projector_.assign(q, Vector(q, 0.0));
  for (const auto& e : basis) {
    for (int i = 0; i < q; ++i) {
      for (int j = 0; j < q; ++j) projector_[i][j] += e[i] * e[j];
    }
  }
}

double InvolutiveModule::sigma(std::span<const double> x) const {
  const std::size_t q = projector_.size();
  double s = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    double r = x[i];
    for (std::size_t j = 0; j < q; ++j) r -= projector_[i][j] * x[j];
    s += r * r;
  }
  return std::sqrt(s);
}

GroupElement InvolutiveModule::lift(const GroupElement& x0, std::span<const double> s) const {
  if (static_cast<int>(s.size()) != rank()) throw DimensionError("lift: wrong number of module coordinates");
  Vector v(frame_->dimension(), 0.0);
  for (int j = 0; j < rank(); ++j) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += s[j] * vectors_[j][i];
  }
  return bch_multiply(frame_->algebra(), x0, GroupElement(std::move(v)));
}

VectorField InvolutiveModule::field(std::vector<Coefficient> coefficients, bool time_dependent) const {
  if (static_cast<int>(coefficients.size()) != rank()) {
    throw DimensionError("module field needs one coefficient per generator");
  }
  const int m = frame_->algebra().horizontal_dimension();
  std::vector<Coefficient> combined;
  for (int i = 0; i < m; ++i) {
    combined.push_back([coefficients, w = weights_, i](double t, std::span<const double> x) {
      double s = 0.0;
      for (std::size_t j = 0; j < coefficients.size(); ++j) {
        if (w[j][i] != 0.0) s += w[j][i] * coefficients[j](t, x);
      }
      return s;
    });
  }
  return make_horizontal_field(frame_, std::move(combined), time_dependent);
}

InvolutiveInvariants InvolutiveModule::check_invariants(int samples, std::uint64_t seed) const {
  InvolutiveInvariants out;
  const GradedAlgebra& alg = frame_->algebra();
  const int q = frame_->dimension();
  Rng rng(seed);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  auto sample_s = [&] {
    Vector s(rank());
    for (double& c : s) c = coord(rng);
    return lift(GroupElement::zero(q), s);
  };
  for (int k = 0; k < samples; ++k) {
    const GroupElement s1 = sample_s(), s2 = sample_s();
    for (int j = 0; j < rank(); ++j) {
      Vector y(q, 0.0);
      for (int i = 0; i < alg.horizontal_dimension(); ++i) {
        const Vector xi = frame_->operator[](i).evaluate(s1.coords());
        for (int l = 0; l < q; ++l) y[l] += weights_[j][i] * xi[l];
      }
      for (int l = 0; l < q; ++l) out.restriction_max_err = std::max(out.restriction_max_err, std::abs(y[l] - vectors_[j][l]));
    }
    const GroupElement prod = bch_multiply(alg, s1, s2);
    for (int l = 0; l < q; ++l) {
      out.addition_max_err = std::max(out.addition_max_err, std::abs(prod[l] - (s1[l] + s2[l])));
    }
  }
  return out;
}

InvolutiveModule check_involutive(FramePtr frame, std::vector<Vector> weights) {
  if (weights.empty()) throw DimensionError("involutive module needs at least one generator");
  const GradedAlgebra& alg = frame->algebra();
  const int q = alg.dimension();
  const int m = alg.horizontal_dimension();
  for (std::size_t a = 0; a < weights.size(); ++a) {
    if (static_cast<int>(weights[a].size()) != m) {
      throw DimensionError("generator " + std::to_string(a + 1) + " is not a horizontal combination of X_1..X_m");
    }
  }
  const double tol = alg.validation_tolerance();
  for (std::size_t a = 0; a < weights.size(); ++a) {
    for (std::size_t c = a + 1; c < weights.size(); ++c) {
      Vector va(q, 0.0), vc(q, 0.0);
      std::copy(weights[a].begin(), weights[a].end(), va.begin());
      std::copy(weights[c].begin(), weights[c].end(), vc.begin());
      const Vector br = bracket(alg, va, vc);
      double mx = 0.0;
      for (double x : br) mx = std::max(mx, std::abs(x));
      if (mx > tol) {
        std::ostringstream os;
        os << "generators " << a + 1 << " and " << c + 1 << " do not commute: bracket = (";
        for (int k = 0; k < q; ++k) os << (k ? ", " : "") << br[k];
        os << ")";
        throw AlgebraError(os.str());
      }
    }
  }
  return InvolutiveModule(std::move(frame), std::move(weights));
}

InvolutiveModule check_involutive(FramePtr frame, const std::vector<int>& indices) {
  const int m = frame->algebra().horizontal_dimension();
  std::vector<Vector> weights;
  for (int i : indices) {
    if (i < 0 || i >= m) throw DimensionError("generator X_" + std::to_string(i + 1) + " is not horizontal");
    Vector w(m, 0.0);
    w[i] = 1.0;
    weights.push_back(std::move(w));
  }
  return check_involutive(std::move(frame), std::move(weights));
}

double confinement_check(const Trajectory& tr, const InvolutiveModule& mod, const GroupElement& x0) {
  const GroupElement x0inv = inverse(x0);
  double worst = 0.0;
  for (const auto& s : tr.states) {
    worst = std::max(worst, mod.sigma(bch_multiply(mod.frame().algebra(), x0inv, s).coords()));
  }
  return worst;
}

Trajectory reduced_solve(const InvolutiveModule& mod, const std::vector<Coefficient>& coefficients,
                         const GroupElement& x0, double horizon, const IntegratorConfig& cfg) {
  if (static_cast<int>(coefficients.size()) != mod.rank()) {
    throw DimensionError("reduced_solve: one coefficient per generator required");
  }
  if (x0.size() != mod.frame().dimension()) throw DimensionError("reduced_solve: initial point has wrong dimension");
  OdeSystem sys;
  sys.dim = mod.rank();
  sys.rhs = [&](double t, std::span<const double> s, std::span<double> ds) {
    const GroupElement x = mod.lift(x0, s);
    for (int j = 0; j < mod.rank(); ++j) ds[j] = coefficients[j](t, x.coords());
  };
  const OdeSolution sol = solve_ode(sys, Vector(mod.rank(), 0.0), horizon, cfg);
  std::vector<GroupElement> states;
  states.reserve(sol.states.size());
  for (const auto& s : sol.states) states.push_back(mod.lift(x0, s));
  Trajectory tr = make_trajectory(sol.times, std::move(states), to_string(cfg.method));
  tr.meta = {to_string(cfg.method), cfg.abs_tol, cfg.rel_tol, cfg.max_step, cfg.min_step, sol.stats};
  return tr;
}

}  // namespace horoflow
