#include "horoflow/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "horoflow/errors.hpp"

namespace horoflow {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// Continuous extension of order 4 (Hairer, Norsett, Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

class Stepper {
 public:
  Stepper(const OdeSystem& sys, StepStatistics& stats) : sys_(sys), stats_(stats), n_(sys.dim) {
    for (auto* k : {&k2_, &k3_, &k4_, &k5_, &k6_, &tmp_}) k->assign(n_, 0.0);
  }

  void eval(double t, std::span<const double> y, Vector& out) {
    sys_.rhs(t, y, out);
    ++stats_.rhs_evaluations;
    for (double v : out) {
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "non-finite right-hand side at t=" << t;
        throw IntegrationError(os.str());
      }
    }
  }

  // Classical RK4 from (t, y) with derivative f0 = f(t, y) already known.
  void rk4(double t, double h, const Vector& y, const Vector& f0, Vector& ynew) {
    for (int i = 0; i < n_; ++i) tmp_[i] = y[i] + 0.5 * h * f0[i];
    eval(t + 0.5 * h, tmp_, k2_);
    for (int i = 0; i < n_; ++i) tmp_[i] = y[i] + 0.5 * h * k2_[i];
    eval(t + 0.5 * h, tmp_, k3_);
    for (int i = 0; i < n_; ++i) tmp_[i] = y[i] + h * k3_[i];
    eval(t + h, tmp_, k4_);
    for (int i = 0; i < n_; ++i) ynew[i] = y[i] + h / 6.0 * (f0[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

  // One Dormand-Prince step; fills ynew, f1 = f(t+h, ynew) and err.
  void dopri(double t, double h, const Vector& y, const Vector& f0, Vector& ynew, Vector& f1, Vector& err) {
    const Vector& k1 = f0;
    for (int i = 0; i < n_; ++i) tmp_[i] = y[i] + h * a21 * k1[i];
    eval(t + c2 * h, tmp_, k2_);
    for (int i = 0; i < n_; ++i) tmp_[i] = y[i] + h * (a31 * k1[i] + a32 * k2_[i]);
    eval(t + c3 * h, tmp_, k3_);
    for (int i = 0; i < n_; ++i) tmp_[i] = y[i] + h * (a41 * k1[i] + a42 * k2_[i] + a43 * k3_[i]);
    eval(t + c4 * h, tmp_, k4_);
    for (int i = 0; i < n_; ++i) tmp_[i] = y[i] + h * (a51 * k1[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
    eval(t + c5 * h, tmp_, k5_);
    for (int i = 0; i < n_; ++i) {
      tmp_[i] = y[i] + h * (a61 * k1[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] + a65 * k5_[i]);
    }
    eval(t + h, tmp_, k6_);
    for (int i = 0; i < n_; ++i) {
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3_[i] + a74 * k4_[i] + a75 * k5_[i] + a76 * k6_[i]);
    }
    eval(t + h, ynew, f1);
    for (int i = 0; i < n_; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] + e7 * f1[i]);
    }
  }

  // Dense-output coefficient for the last accepted Dormand-Prince step.
  void prepare_dense(double h, const Vector& f0, const Vector& f1) {
    dense_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      dense_[i] = h * (d1 * f0[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] + d6 * k6_[i] + d7 * f1[i]);
    }
  }

  void dopri_dense(double t0, double h, const Vector& y0, const Vector& f0, const Vector& y1, const Vector& f1,
                   double t, Vector& out) const {
    const double th = (t - t0) / h, th1 = 1.0 - th;
    out.resize(n_);
    for (int i = 0; i < n_; ++i) {
      const double diff = y1[i] - y0[i];
      const double bspl = h * f0[i] - diff;
      out[i] = y0[i] + th * (diff + th1 * (bspl + th * (diff - h * f1[i] - bspl + th1 * dense_[i])));
    }
  }

 private:
  const OdeSystem& sys_;
  StepStatistics& stats_;
  int n_;
  Vector k2_, k3_, k4_, k5_, k6_, tmp_, dense_;
};

void hermite(double t0, double h, const Vector& y0, const Vector& f0, const Vector& y1, const Vector& f1, double t,
             Vector& out) {
  const double th = (t - t0) / h;
  const double th2 = th * th, th3 = th2 * th;
  const double h00 = 2 * th3 - 3 * th2 + 1, h10 = th3 - 2 * th2 + th;
  const double h01 = -2 * th3 + 3 * th2, h11 = th3 - th2;
  out.resize(y0.size());
  for (std::size_t i = 0; i < y0.size(); ++i) {
    out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
  }
}

double error_norm(const Vector& err, const Vector& y0, const Vector& y1, double atol, double rtol) {
  double e = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    e = std::max(e, std::abs(err[i]) / sc);
  }
  return e;
}

}  // namespace

std::string to_string(Method m) { return m == Method::rk4 ? "rk4" : "dopri5"; }

Method method_from_string(const std::string& s) {
  if (s == "rk4") return Method::rk4;
  if (s == "dopri5" || s == "adaptive") return Method::dopri5;
  throw ConfigError("unknown integrator method '" + s + "'");
}

void IntegratorConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ConfigError("integrator tolerances must be positive");
  if (!(min_step > 0.0) || !(max_step > 0.0)) throw ConfigError("integrator step bounds must be positive");
  if (min_step > max_step) throw ConfigError("integrator min_step exceeds max_step");
  if (dense_output_grid < 2) throw ConfigError("dense output grid needs at least two points");
  if (max_steps < 1) throw ConfigError("max_steps must be positive");
}

OdeSolution solve_ode(const OdeSystem& sys, const Vector& y0, double horizon, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("horizon must be positive and finite");
  if (static_cast<int>(y0.size()) != sys.dim) throw DimensionError("initial state has wrong dimension");
  if (sys.inside && !sys.inside(y0)) throw DomainError("initial state lies outside the domain");

  OdeSolution sol;
  Stepper stepper(sys, sol.stats);
  const int grid = cfg.dense_output_grid;
  auto grid_time = [&](int k) { return k == grid - 1 ? horizon : horizon * k / (grid - 1); };

  sol.times.push_back(0.0);
  sol.states.push_back(y0);
  int next_out = 1;

  Vector y = y0, f0(sys.dim), y1(sys.dim), f1(sys.dim), err(sys.dim), buf;
  stepper.eval(0.0, y, f0);
  double t = 0.0;

  double h;
  if (cfg.method == Method::rk4) {
    const long n = static_cast<long>(std::ceil(horizon / cfg.max_step - 1e-12));
    h = horizon / static_cast<double>(std::max(1L, n));
  } else {
    // Hairer-Wanner starting step heuristic.
    double d0 = 0.0, d1 = 0.0;
    for (int i = 0; i < sys.dim; ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
      d0 = std::max(d0, std::abs(y[i]) / sc);
      d1 = std::max(d1, std::abs(f0[i]) / sc);
    }
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::clamp(h, cfg.min_step, std::min(cfg.max_step, horizon));
  }
  sol.stats.smallest_step = h;

  // Samples the dense output of the step [t, t + h] onto the output grid
  // and handles domain exit. Returns true if the state left the domain.
  const bool use_dopri_dense = cfg.method == Method::dopri5;
  auto interpolate = [&](double t0, double step, double at, Vector& out) {
    if (use_dopri_dense) stepper.dopri_dense(t0, step, y, f0, y1, f1, at, out);
    else hermite(t0, step, y, f0, y1, f1, at, out);
  };
  auto emit = [&](double t0, double step, double t1) {
    const bool exited = sys.inside && !sys.inside(y1);
    double t_stop = t1;
    if (exited) {
      double lo = t0, hi = t1;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        interpolate(t0, step, mid, buf);
        if (sys.inside(buf)) lo = mid;
        else hi = mid;
      }
      t_stop = lo;
      sol.exit_time = hi;
      interpolate(t0, step, hi, sol.exit_state);
    }
    while (next_out < grid) {
      const double to = grid_time(next_out);
      if (to > t_stop) break;
      if (to == t1) buf = y1;
      else interpolate(t0, step, to, buf);
      sol.times.push_back(to);
      sol.states.push_back(buf);
      ++next_out;
    }
    return exited;
  };

  long steps = 0;
  bool last_rejected = false;
  while (t < horizon) {
    if (++steps > cfg.max_steps) {
      std::ostringstream os;
      os << "maximum step count exceeded at t=" << t;
      throw IntegrationError(os.str());
    }
    if (t + h > horizon || horizon - (t + h) < 1e-14 * horizon) h = horizon - t;
    const bool final_step = (t + h >= horizon);
    double h_next = h;

    if (cfg.method == Method::rk4) {
      stepper.rk4(t, h, y, f0, y1);
      stepper.eval(t + h, y1, f1);
    } else {
      stepper.dopri(t, h, y, f0, y1, f1, err);
      const double e = error_norm(err, y, y1, cfg.abs_tol, cfg.rel_tol);
      if (!(e <= 1.0)) {
        ++sol.stats.rejected;
        last_rejected = true;
        const double fac = std::isfinite(e) ? std::max(0.2, 0.9 * std::pow(e, -0.2)) : 0.2;
        h *= std::min(1.0, fac);
        if (h < cfg.min_step) {
          std::ostringstream os;
          os << "step size underflow at t=" << t << " (h=" << h << "); possible singularity or stiffness";
          throw IntegrationError(os.str());
        }
        continue;
      }
      const double fac = e > 0.0 ? 0.9 * std::pow(e, -0.2) : 5.0;
      h_next = std::min(h * std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0), cfg.max_step);
      last_rejected = false;
    }

    if (use_dopri_dense) stepper.prepare_dense(h, f0, f1);
    ++sol.stats.accepted;
    sol.stats.smallest_step = std::min(sol.stats.smallest_step, h);
    sol.stats.largest_step = std::max(sol.stats.largest_step, h);
    const double t1 = final_step ? horizon : t + h;
    if (emit(t, h, t1)) return sol;
    t = t1;
    y.swap(y1);
    f0.swap(f1);
    h = h_next;
  }
  return sol;
}

}  // namespace horoflow
