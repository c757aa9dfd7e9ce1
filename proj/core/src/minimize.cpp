#include "horoflow/minimize.hpp"

#include <cmath>

#include "horoflow/errors.hpp"

namespace horoflow {

ScalarMinimum minimize_convex(const std::function<double(double)>& f, const std::function<double(double)>& df,
                              double x_tol, double half_width) {
  double lo = -half_width, hi = half_width, width = 2.0 * half_width;
  int expansions = 0;
  while (df(lo) > 0.0) {
    hi = lo;
    lo -= width;
    width *= 2.0;
    if (++expansions > 200) throw Error("minimize_convex: failed to bracket the minimizer");
  }
  while (df(hi) < 0.0) {
    lo = hi;
    hi += width;
    width *= 2.0;
    if (++expansions > 200) throw Error("minimize_convex: failed to bracket the minimizer");
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  int it = 0;
  while (hi - lo > x_tol * std::max(1.0, std::abs(lo) + std::abs(hi)) && it < 500) {
    ++it;
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  const double x = 0.5 * (lo + hi);
  double fx = f(x);
  // The midpoint can lose to an interior probe when f is flat at rounding level.
  if (f1 < fx) return {x1, f1, it};
  if (f2 < fx) return {x2, f2, it};
  return {x, fx, it};
}

ScalarMinimum minimize_quartic(double a, double b, double c) {
  auto f = [a, b, c](double s) {
    const double p = s * s + a, r = b * s + c;
    return p * p + r * r;
  };
  auto df = [a, b, c](double s) { return 4.0 * s * (s * s + a) + 2.0 * b * (b * s + c); };
  return minimize_convex(f, df);
}

}  // namespace horoflow
