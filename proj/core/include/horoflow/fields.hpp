#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "horoflow/gauge.hpp"
#include "horoflow/group.hpp"
#include "horoflow/polynomial.hpp"
#include "horoflow/sampling.hpp"

namespace horoflow {

// Real coefficient a(t, x). Must be pure.
using Coefficient = std::function<double(double t, std::span<const double> x)>;

// X_i(x) = sum_j p_i^j(x) d_j, the left-invariant field with X_i(0) = e_i.
class LeftInvariantField {
 public:
  LeftInvariantField(int index, std::vector<Polynomial> row) : index_(index), row_(std::move(row)) {}

  int index() const { return index_; }
  const std::vector<Polynomial>& row() const { return row_; }
  const Polynomial& p(int j) const { return row_.at(j); }
  Vector evaluate(std::span<const double> x) const;

 private:
  int index_;
  std::vector<Polynomial> row_;
};

// Differentiates s -> x (s e_i) at s = 0 symbolically through the BCH
// product. `i` is 0-based.
LeftInvariantField compute_p(const GradedAlgebra& alg, int i);

// All q left-invariant fields of an algebra.
class Frame {
 public:
  explicit Frame(AlgebraPtr alg);

  const GradedAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  int dimension() const { return alg_->dimension(); }
  const LeftInvariantField& operator[](int i) const { return fields_.at(i); }

 private:
  AlgebraPtr alg_;
  std::vector<LeftInvariantField> fields_;
};

using FramePtr = std::shared_ptr<const Frame>;

FramePtr make_frame(AlgebraPtr alg);

// b(t, x) = sum_i a_i(t, x) X_i(x). With at most m = dim H^1 coefficients
// the field is horizontal.
class VectorField {
 public:
  VectorField(FramePtr frame, std::vector<Coefficient> coefficients, bool time_dependent = true);

  const Frame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  const GradedAlgebra& algebra() const { return frame_->algebra(); }
  int dimension() const { return frame_->dimension(); }
  int num_coefficients() const { return static_cast<int>(coefficients_.size()); }
  const std::vector<Coefficient>& coefficients() const { return coefficients_; }
  bool is_horizontal() const { return num_coefficients() <= algebra().horizontal_dimension(); }
  bool time_dependent() const { return time_dependent_; }

  std::optional<double> lipschitz_estimate() const { return lipschitz_estimate_; }
  VectorField with_lipschitz_estimate(double l) const;

  double coefficient(int i, double t, std::span<const double> x) const { return coefficients_[i](t, x); }
  Vector coefficients_at(double t, std::span<const double> x) const;
  // Writes b(t, x) into out (length q).
  void evaluate(double t, std::span<const double> x, std::span<double> out) const;
  Vector evaluate(double t, std::span<const double> x) const;

 private:
  FramePtr frame_;
  std::vector<Coefficient> coefficients_;
  bool time_dependent_;
  std::optional<double> lipschitz_estimate_;
};

// Throws DimensionError if more than m coefficients are given.
VectorField make_horizontal_field(FramePtr frame, std::vector<Coefficient> coefficients, bool time_dependent = true);

// b(t, x) as a vector in coordinates; throws DomainError outside `domain`.
Vector evaluate_field(const VectorField& b, double t, const GroupElement& x,
                      const Domain& domain = Domain::whole_space());

// Smooth test function given with its coordinate gradient.
struct TestFunction {
  std::function<double(std::span<const double>)> value;
  std::function<Vector(std::span<const double>)> gradient;
};

// eta_j(x) = x_j.
TestFunction coordinate_function(int q, int j);
// eta_j(xbar^{-1} x).
TestFunction translated_coordinate(const GradedAlgebra& alg, const GroupElement& xbar, int j);
TestFunction product(const TestFunction& f, const TestFunction& g);

// (X_1 f, ..., X_m f)(x).
Vector horizontal_gradient(const Frame& frame, const TestFunction& f, std::span<const double> x);

// D_b f(x) = sum_i a_i(t, x) X_i f(x).
double apply_derivation(const VectorField& b, const TestFunction& f, std::span<const double> x, double t = 0.0);

// Linear map on test functions with pointwise bound |D f|(x) <= h(x) |grad_H f|(x).
struct Derivation {
  std::function<double(const TestFunction&, std::span<const double>)> action;
  std::function<double(std::span<const double>)> bound;
};

// D_b with h = sqrt(sum_i a_i^2).
Derivation derivation_of(const VectorField& b, double t = 0.0);

// (D eta-bar_1 (xbar), ..., D eta-bar_m (xbar)) where eta-bar_j is the j-th
// coordinate recentred at xbar. Throws MonitorError if the derivation bound
// fails on any recentred coordinate beyond `tol`, i.e. D is not horizontal.
Vector recover_coefficients(const Derivation& d, const Frame& frame, const GroupElement& xbar, double tol = 1e-9);

// Sampled lower bound for the Lipschitz constant of a(t, .) with respect to
// `dst` on `box`. Throws DomainError when the box is a single point.
double estimate_lipschitz(const Coefficient& a, const HomogeneousDistance& dst, const Box& box, int samples,
                          std::uint64_t seed, double t = 0.0);

}  // namespace horoflow
