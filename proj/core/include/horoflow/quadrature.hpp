#pragma once

#include <span>
#include <vector>

namespace horoflow {

// Running integral I_k = int_{t_0}^{t_k} f on a uniform grid with spacing h:
// composite Simpson over pairs of intervals, with the first interval closed
// by the quadratic through f_0, f_1, f_2. Requires at least three samples.
std::vector<double> cumulative_simpson(std::span<const double> values, double h);

// Composite Simpson over the whole grid (any number of samples >= 3).
double simpson(std::span<const double> values, double h);

}  // namespace horoflow
