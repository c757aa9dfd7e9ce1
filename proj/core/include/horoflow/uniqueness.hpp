#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "horoflow/fields.hpp"
#include "horoflow/flow.hpp"
#include "horoflow/gauge.hpp"
#include "horoflow/sampling.hpp"

namespace horoflow {

// Degeneracy condition at an equilibrium point x-bar:
//   sum_i |a_i(t, x)|^{1/d_i} <= c_t d(x, x-bar).
struct EquilibriumCondition {
  GroupElement xbar;
  // t -> c_t; empty means the constant profile estimated_c.
  std::function<double(double)> c_profile;
  double estimated_c = 0.0;
  bool holds = false;
  std::vector<std::string> warnings;
  int samples = 0;
  std::uint64_t seed = 0;
  double horizon = 0.0;

  double c_at(double t) const { return c_profile ? c_profile(t) : estimated_c; }
  // int_0^T c_s ds, by Simpson on 1025 nodes for a user profile.
  double c_integral(double horizon_t) const;
};

// Samples (t, x) with t in [0, horizon] and x in `box`, plus dyadic
// approaches x-bar delta_{2^-k}(z) toward x-bar, and records the largest
// ratio. The condition is declared failed when the ratio exceeds
// `threshold`. Throws DomainError where the field is undefined.
EquilibriumCondition verify_equilibrium_condition(const VectorField& b, const GroupElement& xbar,
                                                  const HomogeneousDistance& dst, const Box& box, double horizon,
                                                  int samples, std::uint64_t seed = 1, double threshold = 1e6);

struct StabilityRun {
  GroupElement x0;
  double initial_distance = 0.0;
  double sup_distance = 0.0;
  // sup_t d(gamma(t), x-bar) / d(x0, x-bar); 1 by convention when x0 = x-bar
  // and the solution stays there.
  double ratio = 1.0;
};

struct StabilityReport {
  bool certified = false;
  std::optional<std::string> refusal;
  double kappa = 0.0;
  double c_integral = 0.0;
  double c_bound = 0.0;  // kappa exp(kappa int_0^T c_s ds)
  std::vector<StabilityRun> runs;
  // Extremes over runs with x0 != x-bar (1 when there are none).
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  std::vector<std::string> failures;
};

// Integrates from each initial point and compares the distance ratios with
// the certified bound. Refuses (certified = false, refusal set) if the
// condition does not hold.
StabilityReport stability_monitor(const VectorField& b, const HomogeneousDistance& dst,
                                  const EquilibriumCondition& cond, const std::vector<GroupElement>& initial_points,
                                  double horizon, const IntegratorConfig& cfg, int threads = 1,
                                  std::uint64_t seed = 1);

struct InvolutiveInvariants {
  double restriction_max_err = 0.0;  // |Y_j(s) - v_j| over sampled s in S
  double addition_max_err = 0.0;     // |s1 s2 - (s1 + s2)|
};

// Module spanned by commuting horizontal left-invariant fields
// Y_j = sum_i w_{j,i} X_i. S is the span of v_j = Y_j(0) and the projector is
// orthogonal for the inner product making the graded basis orthonormal.
class InvolutiveModule {
 public:
  InvolutiveModule(FramePtr frame, std::vector<Vector> weights);

  const Frame& frame() const { return *frame_; }
  int rank() const { return static_cast<int>(weights_.size()); }
  const std::vector<Vector>& weights() const { return weights_; }
  const std::vector<Vector>& vectors() const { return vectors_; }
  const std::vector<Vector>& projector() const { return projector_; }

  // |(I - P_S) x|
  double sigma(std::span<const double> x) const;
  // x0 (sum_j s_j v_j)
  GroupElement lift(const GroupElement& x0, std::span<const double> s) const;
  // b = sum_j a_j Y_j as a horizontal field.
  VectorField field(std::vector<Coefficient> coefficients, bool time_dependent = true) const;

  InvolutiveInvariants check_invariants(int samples, std::uint64_t seed = 1) const;

 private:
  FramePtr frame_;
  std::vector<Vector> weights_;
  std::vector<Vector> vectors_;
  std::vector<Vector> projector_;
};

// Builds the module iff every pairwise bracket vanishes; throws AlgebraError
// naming the first non-commuting pair and its bracket otherwise, and
// DimensionError for dependent or non-horizontal weights.
InvolutiveModule check_involutive(FramePtr frame, std::vector<Vector> weights);
// Module generated by the frame fields X_i, i in `indices` (0-based).
InvolutiveModule check_involutive(FramePtr frame, const std::vector<int>& indices);

// max_t sigma(x0^{-1} gamma(t)).
double confinement_check(const Trajectory& tr, const InvolutiveModule& mod, const GroupElement& x0);

// Solves s_j' = a_j(t, x0 s) in R^r and lifts s to x0 s.
Trajectory reduced_solve(const InvolutiveModule& mod, const std::vector<Coefficient>& coefficients,
                         const GroupElement& x0, double horizon, const IntegratorConfig& cfg);

}  // namespace horoflow
