#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "horoflow/group.hpp"

namespace horoflow {

// Continuous, 1-homogeneous, symmetric function vanishing only at 0.
class HomogeneousGauge {
 public:
  virtual ~HomogeneousGauge() = default;
  virtual double operator()(const GroupElement& x) const = 0;
  virtual std::string name() const = 0;
};

using GaugePtr = std::shared_ptr<const HomogeneousGauge>;

// ||x|| = (sum_i x_i^{rho_i})^{1/N} with rho_i = N / d_i even. N is the
// smallest positive integer making every rho_i an even natural number.
class SmoothGauge final : public HomogeneousGauge {
 public:
  explicit SmoothGauge(const GradedAlgebra& alg);
  SmoothGauge(const GradedAlgebra& alg, int exponent_n);

  int exponent() const { return n_; }
  const std::vector<int>& rho() const { return rho_; }
  // ||x||^N, a polynomial in x.
  double power_n(const GroupElement& x) const;
  double operator()(const GroupElement& x) const override;
  std::string name() const override { return "smooth"; }

 private:
  int n_;
  std::vector<int> rho_;
};

// ((x1^2 + x2^2)^2 + x3^2)^{1/4} on the Heisenberg group.
double koranyi_norm(const GroupElement& x);

class KoranyiGauge final : public HomogeneousGauge {
 public:
  // Throws AlgebraError unless alg is the Heisenberg preset.
  explicit KoranyiGauge(const GradedAlgebra& alg);
  double operator()(const GroupElement& x) const override;
  std::string name() const override { return "koranyi"; }
};

// d(x, y) = ||x^{-1} y||; left invariant and 1-homogeneous under dilations.
class HomogeneousDistance {
 public:
  HomogeneousDistance(AlgebraPtr alg, GaugePtr gauge, double quasi_triangle_constant = 1.0);

  double operator()(const GroupElement& x, const GroupElement& y) const;
  double norm(const GroupElement& x) const { return (*gauge_)(x); }
  const GradedAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  const HomogeneousGauge& gauge() const { return *gauge_; }
  const GaugePtr& gauge_ptr() const { return gauge_; }
  double quasi_triangle_constant() const { return quasi_triangle_constant_; }

 private:
  AlgebraPtr alg_;
  GaugePtr gauge_;
  double quasi_triangle_constant_;
};

// Korányi on Heisenberg, smooth gauge elsewhere. The quasi-triangle constant
// is 1 for Korányi and estimated by sampling for the smooth gauge.
HomogeneousDistance default_distance(AlgebraPtr alg, std::uint64_t seed = 1);

double distance(const HomogeneousDistance& dst, const GroupElement& x, const GroupElement& y);

struct EquivalenceConstants {
  double lower;  // C^{-1}: min of g2/g1 over the g1 unit sphere
  double upper;  // C:      max of g2/g1 over the g1 unit sphere
  // Single constant C with C^{-1} g1 <= g2 <= C g1.
  double kappa() const;
};

// Samples points uniformly in a cube, projects them to the g1 unit sphere by
// dilation, and records the extreme ratios. Throws on a degenerate ratio.
EquivalenceConstants equivalence_constants(const GradedAlgebra& alg, const HomogeneousGauge& g1,
                                           const HomogeneousGauge& g2, int sample_count, std::uint64_t seed = 1);

// max ||x y|| / (||x|| + ||y||) over sampled pairs.
double estimate_quasi_triangle_constant(const GradedAlgebra& alg, const HomogeneousGauge& g, int sample_count,
                                        std::uint64_t seed = 1);

// sup |f(x)| / ||x||^lambda over sampled points of the unit sphere.
double domination_constant(const GradedAlgebra& alg, const HomogeneousGauge& g,
                           const std::function<double(const GroupElement&)>& f, double lambda, int sample_count,
                           std::uint64_t seed = 1);

struct GaugeCheckReport {
  double homogeneity_max_err = 0.0;
  double symmetry_max_err = 0.0;
  long triangle_violations = 0;
  long triangle_samples = 0;
  double quasi_triangle_constant = 1.0;
  EquivalenceConstants equivalence{1.0, 1.0};
};

// Homogeneity, symmetry and triangle-inequality sweep for `g`, plus its
// equivalence constants against `reference`.
GaugeCheckReport check_gauge(const GradedAlgebra& alg, const HomogeneousGauge& g, const HomogeneousGauge& reference,
                             int sample_count, std::uint64_t seed = 1);

}  // namespace horoflow
