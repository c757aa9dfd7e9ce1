#include "horoflow/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "horoflow/errors.hpp"
#include "horoflow/sampling.hpp"

namespace horoflow {
namespace {

int default_exponent(const GradedAlgebra& alg) {
  int l = 1;
  for (int d : alg.degrees()) l = std::lcm(l, d);
  return 2 * l;
}

double int_pow(double x, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

GroupElement project_to_sphere(const GradedAlgebra& alg, const HomogeneousGauge& g, const GroupElement& x) {
  const double s = g(x);
  return dilate(alg, 1.0 / s, x);
}

bool is_nonzero(const GroupElement& x) {
  return std::any_of(x.coords().begin(), x.coords().end(), [](double v) { return v != 0.0; });
}

}  // namespace

SmoothGauge::SmoothGauge(const GradedAlgebra& alg) : SmoothGauge(alg, default_exponent(alg)) {}

SmoothGauge::SmoothGauge(const GradedAlgebra& alg, int exponent_n) : n_(exponent_n) {
  for (int d : alg.degrees()) {
    if (n_ <= 0 || n_ % d != 0 || (n_ / d) % 2 != 0) {
      throw AlgebraError("smooth gauge exponent N must make every N/d_i an even natural number");
    }
    rho_.push_back(n_ / d);
  }
}

double SmoothGauge::power_n(const GroupElement& x) const {
  if (x.size() != static_cast<int>(rho_.size())) throw DimensionError("smooth gauge: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) s += int_pow(x[i], rho_[i]);
  return s;
}

double SmoothGauge::operator()(const GroupElement& x) const {
  return std::pow(power_n(x), 1.0 / n_);
}

double koranyi_norm(const GroupElement& x) {
  if (x.size() != 3) throw DimensionError("Korányi norm is defined on the Heisenberg group only");
  const double h = x[0] * x[0] + x[1] * x[1];
  return std::pow(h * h + x[2] * x[2], 0.25);
}

KoranyiGauge::KoranyiGauge(const GradedAlgebra& alg) {
  if (!alg.is_heisenberg()) throw AlgebraError("Korányi gauge requires the Heisenberg algebra");
}

double KoranyiGauge::operator()(const GroupElement& x) const { return koranyi_norm(x); }

HomogeneousDistance::HomogeneousDistance(AlgebraPtr alg, GaugePtr gauge, double quasi_triangle_constant)
    : alg_(std::move(alg)), gauge_(std::move(gauge)), quasi_triangle_constant_(quasi_triangle_constant) {
  if (!alg_ || !gauge_) throw Error("HomogeneousDistance needs an algebra and a gauge");
}

double HomogeneousDistance::operator()(const GroupElement& x, const GroupElement& y) const {
  return (*gauge_)(bch_multiply(*alg_, inverse(x), y));
}

HomogeneousDistance default_distance(AlgebraPtr alg, std::uint64_t seed) {
  if (alg->is_heisenberg()) {
    return HomogeneousDistance(alg, std::make_shared<const KoranyiGauge>(*alg), 1.0);
  }
  auto g = std::make_shared<const SmoothGauge>(*alg);
  const double c = std::max(1.0, estimate_quasi_triangle_constant(*alg, *g, 2000, seed));
  return HomogeneousDistance(alg, g, c);
}

double distance(const HomogeneousDistance& dst, const GroupElement& x, const GroupElement& y) {
  if (x.size() != dst.algebra().dimension() || y.size() != dst.algebra().dimension()) {
    throw DimensionError("distance: element does not belong to the distance's algebra");
  }
  return dst(x, y);
}

double EquivalenceConstants::kappa() const { return std::max(upper, 1.0 / lower); }

EquivalenceConstants equivalence_constants(const GradedAlgebra& alg, const HomogeneousGauge& g1,
                                           const HomogeneousGauge& g2, int sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw Error("equivalence_constants: sample_count must be at least 1");
  const int q = alg.dimension();
  std::vector<GroupElement> pts;
  for (int i = 0; i < q; ++i) {
    for (double s : {1.0, -1.0}) {
      GroupElement e = GroupElement::zero(q);
      e[i] = s;
      pts.push_back(e);
    }
  }
  Rng rng(seed);
  while (static_cast<int>(pts.size()) < sample_count + 2 * q) {
    GroupElement x = sample_in_cube(q, 1.0, rng);
    if (is_nonzero(x)) pts.push_back(x);
  }
  EquivalenceConstants out{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& x : pts) {
    const GroupElement y = project_to_sphere(alg, g1, x);
    const double ratio = g2(y) / g1(y);
    if (!(ratio > 0.0) || !std::isfinite(ratio)) throw Error("equivalence_constants: degenerate gauge ratio");
    out.lower = std::min(out.lower, ratio);
    out.upper = std::max(out.upper, ratio);
  }
  return out;
}

double estimate_quasi_triangle_constant(const GradedAlgebra& alg, const HomogeneousGauge& g, int sample_count,
                                        std::uint64_t seed) {
  Rng rng(seed);
  const int q = alg.dimension();
  double worst = 0.0;
  for (int n = 0; n < sample_count; ++n) {
    const GroupElement x = sample_in_cube(q, 1.0, rng);
    const GroupElement y = sample_in_cube(q, 1.0, rng);
    const double denom = g(x) + g(y);
    if (denom > 0.0) worst = std::max(worst, g(bch_multiply(alg, x, y)) / denom);
  }
  return worst;
}

double domination_constant(const GradedAlgebra& alg, const HomogeneousGauge& g,
                           const std::function<double(const GroupElement&)>& f, double lambda, int sample_count,
                           std::uint64_t seed) {
  Rng rng(seed);
  const int q = alg.dimension();
  double worst = 0.0;
  for (int n = 0; n < sample_count; ++n) {
    const GroupElement x = sample_in_cube(q, 1.0, rng);
    if (!is_nonzero(x)) continue;
    const GroupElement y = project_to_sphere(alg, g, x);
    worst = std::max(worst, std::abs(f(y)) / std::pow(g(y), lambda));
  }
  return worst;
}

GaugeCheckReport check_gauge(const GradedAlgebra& alg, const HomogeneousGauge& g, const HomogeneousGauge& reference,
                             int sample_count, std::uint64_t seed) {
  GaugeCheckReport rep;
  Rng rng(seed);
  const int q = alg.dimension();
  std::uniform_real_distribution<double> log_r(std::log(1e-3), std::log(1e3));
  for (int n = 0; n < sample_count; ++n) {
    const GroupElement x = sample_in_cube(q, 10.0, rng);
    const GroupElement y = sample_in_cube(q, 10.0, rng);
    const double r = std::exp(log_r(rng));
    const double gx = g(x);
    if (gx > 0.0) {
      rep.homogeneity_max_err = std::max(rep.homogeneity_max_err, std::abs(g(dilate(alg, r, x)) - r * gx) / (r * gx));
      rep.symmetry_max_err = std::max(rep.symmetry_max_err, std::abs(g(inverse(x)) - gx) / gx);
    }
    const double lhs = g(bch_multiply(alg, x, y));
    const double rhs = gx + g(y);
    ++rep.triangle_samples;
    if (lhs > rhs * (1.0 + 1e-12)) ++rep.triangle_violations;
    if (rhs > 0.0) rep.quasi_triangle_constant = std::max(rep.quasi_triangle_constant, lhs / rhs);
  }
  rep.equivalence = equivalence_constants(alg, reference, g, sample_count, seed + 1);
  return rep;
}

}  // namespace horoflow
