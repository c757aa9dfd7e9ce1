#include "horoflow/fields.hpp"

#include <algorithm>
#include <cmath>

#include "horoflow/errors.hpp"

namespace horoflow {

Vector LeftInvariantField::evaluate(std::span<const double> x) const {
  Vector v(row_.size());
  for (std::size_t j = 0; j < row_.size(); ++j) v[j] = row_[j].evaluate(x);
  return v;
}

LeftInvariantField compute_p(const GradedAlgebra& alg, int i) {
  const int q = alg.dimension();
  if (i < 0 || i >= q) throw DimensionError("compute_p: basis index out of range");
  const int nv = q + 1;  // x_1..x_q and the parameter s
  std::vector<Polynomial> x, y;
  for (int k = 0; k < q; ++k) {
    x.push_back(Polynomial::variable(nv, k));
    y.push_back(k == i ? Polynomial::variable(nv, q) : Polynomial(nv));
  }
  const auto prod = symbolic_product(alg, x, y);
  std::vector<Polynomial> row;
  row.reserve(q);
  for (const auto& component : prod) {
    row.push_back(component.derivative(q).substitute(q, 0.0).truncate_vars(q));
  }
  return LeftInvariantField(i, std::move(row));
}

Frame::Frame(AlgebraPtr alg) : alg_(std::move(alg)) {
  for (int i = 0; i < alg_->dimension(); ++i) fields_.push_back(compute_p(*alg_, i));
}

FramePtr make_frame(AlgebraPtr alg) { return std::make_shared<const Frame>(std::move(alg)); }

VectorField::VectorField(FramePtr frame, std::vector<Coefficient> coefficients, bool time_dependent)
    : frame_(std::move(frame)), coefficients_(std::move(coefficients)), time_dependent_(time_dependent) {
  if (!frame_) throw Error("VectorField needs a frame");
  if (num_coefficients() > frame_->dimension()) throw DimensionError("more coefficients than basis fields");
}

VectorField VectorField::with_lipschitz_estimate(double l) const {
  VectorField copy = *this;
  copy.lipschitz_estimate_ = l;
  return copy;
}

Vector VectorField::coefficients_at(double t, std::span<const double> x) const {
  Vector a(coefficients_.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = coefficients_[i](t, x);
  return a;
}

void VectorField::evaluate(double t, std::span<const double> x, std::span<double> out) const {
  const int q = dimension();
  if (static_cast<int>(x.size()) != q || static_cast<int>(out.size()) != q) {
    throw DimensionError("VectorField::evaluate: dimension mismatch");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (int i = 0; i < num_coefficients(); ++i) {
    const double a = coefficients_[i](t, x);
    if (a == 0.0) continue;
    const auto& row = (*frame_)[i].row();
    for (int j = 0; j < q; ++j) {
      if (!row[j].is_zero()) out[j] += a * row[j].evaluate(x);
    }
  }
}

Vector VectorField::evaluate(double t, std::span<const double> x) const {
  Vector out(dimension());
  evaluate(t, x, out);
  return out;
}

VectorField make_horizontal_field(FramePtr frame, std::vector<Coefficient> coefficients, bool time_dependent) {
  if (static_cast<int>(coefficients.size()) > frame->algebra().horizontal_dimension()) {
    throw DimensionError("horizontal field has more coefficients than dim H^1");
  }
  return VectorField(std::move(frame), std::move(coefficients), time_dependent);
}

Vector evaluate_field(const VectorField& b, double t, const GroupElement& x, const Domain& domain) {
  if (x.size() != b.dimension()) throw DimensionError("evaluate_field: dimension mismatch");
  if (!domain.contains(b.algebra(), x.coords())) throw DomainError("evaluate_field: point outside the domain");
  return b.evaluate(t, x.coords());
}

TestFunction coordinate_function(int q, int j) {
  if (j < 0 || j >= q) throw DimensionError("coordinate_function: index out of range");
  return {[j](std::span<const double> x) { return x[j]; },
          [q, j](std::span<const double>) {
            Vector g(q, 0.0);
            g[j] = 1.0;
            return g;
          }};
}

TestFunction translated_coordinate(const GradedAlgebra& alg, const GroupElement& xbar, int j) {
  const int q = alg.dimension();
  if (j < 0 || j >= q) throw DimensionError("translated_coordinate: index out of range");
  auto polys = left_translation(alg, inverse(xbar));
  auto value = std::make_shared<const Polynomial>(polys[j]);
  auto grad = std::make_shared<std::vector<Polynomial>>();
  for (int k = 0; k < q; ++k) grad->push_back(polys[j].derivative(k));
  return {[value](std::span<const double> x) { return value->evaluate(x); },
          [grad](std::span<const double> x) {
            Vector g(grad->size());
            for (std::size_t k = 0; k < g.size(); ++k) g[k] = (*grad)[k].evaluate(x);
            return g;
          }};
}

TestFunction product(const TestFunction& f, const TestFunction& g) {
  return {[f, g](std::span<const double> x) { return f.value(x) * g.value(x); },
          [f, g](std::span<const double> x) {
            const double fv = f.value(x), gv = g.value(x);
            Vector df = f.gradient(x);
            const Vector dg = g.gradient(x);
            for (std::size_t k = 0; k < df.size(); ++k) df[k] = fv * dg[k] + gv * df[k];
            return df;
          }};
}

namespace {

double directional(const LeftInvariantField& field, const Vector& grad, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t j = 0; j < grad.size(); ++j) {
    const auto& p = field.p(static_cast<int>(j));
    if (!p.is_zero() && grad[j] != 0.0) s += grad[j] * p.evaluate(x);
  }
  return s;
}

}  // namespace

Vector horizontal_gradient(const Frame& frame, const TestFunction& f, std::span<const double> x) {
  const Vector grad = f.gradient(x);
  const int m = frame.algebra().horizontal_dimension();
  Vector out(m);
  for (int i = 0; i < m; ++i) out[i] = directional(frame[i], grad, x);
  return out;
}

double apply_derivation(const VectorField& b, const TestFunction& f, std::span<const double> x, double t) {
  const Vector grad = f.gradient(x);
  double s = 0.0;
  for (int i = 0; i < b.num_coefficients(); ++i) {
    const double a = b.coefficient(i, t, x);
    if (a != 0.0) s += a * directional(b.frame()[i], grad, x);
  }
  return s;
}

Derivation derivation_of(const VectorField& b, double t) {
  return {[b, t](const TestFunction& f, std::span<const double> x) { return apply_derivation(b, f, x, t); },
          [b, t](std::span<const double> x) {
            double s = 0.0;
            for (int i = 0; i < b.num_coefficients(); ++i) {
              const double a = b.coefficient(i, t, x);
              s += a * a;
            }
            return std::sqrt(s);
          }};
}

Vector recover_coefficients(const Derivation& d, const Frame& frame, const GroupElement& xbar, double tol) {
  const GradedAlgebra& alg = frame.algebra();
  const int q = alg.dimension();
  if (xbar.size() != q) throw DimensionError("recover_coefficients: dimension mismatch");
  const double h = d.bound(xbar.coords());
  Vector out(alg.horizontal_dimension());
  for (int j = 0; j < q; ++j) {
    const TestFunction eta = translated_coordinate(alg, xbar, j);
    const double value = d.action(eta, xbar.coords());
    const Vector gh = horizontal_gradient(frame, eta, xbar.coords());
    double norm = 0.0;
    for (double g : gh) norm += g * g;
    norm = std::sqrt(norm);
    if (std::abs(value) > h * norm + tol) {
      throw MonitorError("derivation bound violated on recentred coordinate " + std::to_string(j + 1) +
                         ": |D f| = " + std::to_string(std::abs(value)) + " > h |grad_H f| = " +
                         std::to_string(h * norm) + " (derivation is not horizontal)");
    }
    if (j < alg.horizontal_dimension()) out[j] = value;
  }
  return out;
}

double estimate_lipschitz(const Coefficient& a, const HomogeneousDistance& dst, const Box& box, int samples,
                          std::uint64_t seed, double t) {
  box.validate();
  if (samples < 2) throw Error("estimate_lipschitz: need at least two samples");
  if (box.dimension() != dst.algebra().dimension()) throw DimensionError("estimate_lipschitz: box dimension mismatch");
  bool single_point = true;
  for (int i = 0; i < box.dimension(); ++i) single_point = single_point && box.upper[i] == box.lower[i];
  if (single_point) throw DomainError("estimate_lipschitz: degenerate domain");

  Rng rng(seed);
  std::vector<GroupElement> pts;
  pts.reserve(samples);
  for (int n = 0; n < samples; ++n) pts.push_back(sample_in_box(box, rng));
  std::vector<double> values(pts.size());
  for (std::size_t n = 0; n < pts.size(); ++n) values[n] = a(t, pts[n].coords());

  double best = 0.0;
  for (std::size_t n = 0; n < pts.size(); ++n) {
    for (std::size_t k = n + 1; k < pts.size(); ++k) {
      const double d = dst(pts[n], pts[k]);
      if (d > 0.0) best = std::max(best, std::abs(values[n] - values[k]) / d);
    }
  }
  return best;
}

}  // namespace horoflow
