#include "horoflow/sampling.hpp"

#include "horoflow/errors.hpp"

namespace horoflow {

Box Box::cube(int q, double half_width) { return {Vector(q, -half_width), Vector(q, half_width)}; }

bool Box::contains(std::span<const double> x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

void Box::validate() const {
  if (lower.size() != upper.size() || lower.empty()) throw DomainError("box bounds have mismatched lengths");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) throw DomainError("box lower bound exceeds upper bound");
  }
}

bool Box::degenerate() const {
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(upper[i] > lower[i])) return true;
  }
  return false;
}

bool Domain::contains(const GradedAlgebra& alg, std::span<const double> x) const {
  if (!box) return true;
  if (!translation) return box->contains(x);
  const GroupElement local =
      bch_multiply(alg, inverse(*translation), GroupElement(Vector(x.begin(), x.end())));
  return box->contains(local.coords());
}

GroupElement sample_in_box(const Box& box, Rng& rng) {
  Vector c(box.lower.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uniform_real_distribution<double> dist(box.lower[i], box.upper[i]);
    c[i] = box.upper[i] > box.lower[i] ? dist(rng) : box.lower[i];
  }
  return GroupElement(std::move(c));
}

GroupElement sample_in_cube(int q, double half_width, Rng& rng) {
  return sample_in_box(Box::cube(q, half_width), rng);
}

}  // namespace horoflow
