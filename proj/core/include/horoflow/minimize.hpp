#pragma once

#include <functional>

namespace horoflow {

struct ScalarMinimum {
  double argmin;
  double value;
  int iterations;
};

// Minimizes a strictly convex, coercive f. The minimizer is bracketed by the
// sign of the derivative `df` (expanding from [-half_width, half_width]) and
// then located by golden-section search to `x_tol`. Throws Error if no
// bracket is found, which means f is not coercive.
ScalarMinimum minimize_convex(const std::function<double(double)>& f, const std::function<double(double)>& df,
                              double x_tol = 1e-12, double half_width = 1.0);

// Unique minimum of f(s) = (s^2 + a)^2 + (b s + c)^2, a >= 0.
ScalarMinimum minimize_quartic(double a, double b, double c);

}  // namespace horoflow
