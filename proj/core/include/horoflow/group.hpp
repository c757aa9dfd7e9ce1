#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "horoflow/polynomial.hpp"

namespace horoflow {

using Vector = std::vector<double>;

// A point of the group in exponential coordinates of the first kind with
// respect to a graded basis (e_1, ..., e_q). The identity is the zero vector.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<double> coords) : coords_(std::move(coords)) {}
  GroupElement(std::initializer_list<double> coords) : coords_(coords) {}

  static GroupElement zero(int q) { return GroupElement(std::vector<double>(q, 0.0)); }

  int size() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }
  double& operator[](int i) { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& vector() const { return coords_; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  std::vector<double> coords_;
};

// [e_i, e_j] contains `c` times e_k. Indices are 0-based.
struct StructureConstant {
  int i;
  int j;
  int k;
  double c;
};

// One word of the Dynkin series for log(exp X exp Y): the right-nested
// bracket [w_0, [w_1, ... [w_{L-2}, w_{L-1}]]] weighted by `coefficient`
// (already divided by the word length). Bit k of `letters` is set when
// letter k is Y.
struct DynkinWord {
  std::uint32_t letters;
  int length;
  double coefficient;
};

// Graded nilpotent Lie algebra Lie(G) = V_1 + ... + V_step with
// [V_i, V_j] contained in V_{i+j}. Immutable after construction.
class GradedAlgebra {
 public:
  // Throws AlgebraError naming the first violated identity when the
  // constants are not antisymmetric, not graded, or fail Jacobi. Pairs given
  // only as (i, j) are completed antisymmetrically.
  GradedAlgebra(std::vector<int> layer_dims, const std::vector<StructureConstant>& constants,
                std::string name = "");

  int dimension() const { return static_cast<int>(degrees_.size()); }
  int step() const { return static_cast<int>(layer_dims_.size()); }
  // m = dim H^1.
  int horizontal_dimension() const { return layer_dims_.front(); }
  const std::vector<int>& layer_dims() const { return layer_dims_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(int i) const { return degrees_.at(i); }
  // m_j = dim H^1 + ... + dim H^j, with m_0 = 0.
  int layer_end(int j) const;
  const std::string& name() const { return name_; }

  double structure_constant(int i, int j, int k) const;
  // Nonzero (k, c) entries of [e_i, e_j].
  const std::vector<std::pair<int, double>>& basis_bracket(int i, int j) const;
  bool integer_valued() const { return integer_valued_; }
  double validation_tolerance() const { return integer_valued_ ? 0.0 : 1e-12; }
  const std::vector<DynkinWord>& dynkin_words() const { return dynkin_words_; }

  // Same layers and brackets as heisenberg().
  bool is_heisenberg() const;
  std::vector<StructureConstant> nonzero_constants() const;

 private:
  std::vector<int> layer_dims_;
  std::vector<int> degrees_;
  std::vector<std::vector<std::pair<int, double>>> table_;  // q*q entries
  std::vector<DynkinWord> dynkin_words_;
  bool integer_valued_ = true;
  std::string name_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

// Lie bracket [X, Y] of two algebra vectors.
Vector bracket(const GradedAlgebra& alg, std::span<const double> x, std::span<const double> y);

// Group product via the Baker-Campbell-Hausdorff series truncated at the step.
GroupElement bch_multiply(const GradedAlgebra& alg, const GroupElement& x, const GroupElement& y);

GroupElement inverse(const GroupElement& x);

// Intrinsic dilation: coordinate i is scaled by r^{d_i}. Requires r > 0.
GroupElement dilate(const GradedAlgebra& alg, double r, const GroupElement& x);

class Dilation {
 public:
  explicit Dilation(double r);
  double scale() const { return r_; }
  GroupElement operator()(const GradedAlgebra& alg, const GroupElement& x) const {
    return dilate(alg, r_, x);
  }

 private:
  double r_;
};

// Heisenberg group on R^3 with (x1,x2,x3)(y1,y2,y3) =
// (x1+y1, x2+y2, x3+y3 + x1 y2 - x2 y1), i.e. [e1, e2] = 2 e3.
GradedAlgebra heisenberg();
AlgebraPtr heisenberg_ptr();

// Symbolic BCH product of two vectors of polynomials (all in the same
// variables).
std::vector<Polynomial> symbolic_product(const GradedAlgebra& alg, const std::vector<Polynomial>& x,
                                         const std::vector<Polynomial>& y);

// Left translation y -> z y as polynomials in y_1..y_q.
std::vector<Polynomial> left_translation(const GradedAlgebra& alg, const GroupElement& z);

struct GroupCheckReport {
  double associativity_max_err = 0.0;  // |(xy)z - x(yz)| / max(1, |x(yz)|)
  double automorphism_max_err = 0.0;   // |d_r(xy) - d_r(x) d_r(y)|, relative
  double inverse_max_err = 0.0;        // |x x^{-1}|
  double identity_max_err = 0.0;       // |x 0 - x|, |0 x - x|
  int samples = 0;
};

// Samples triples in [-10, 10]^q and dilation factors log-uniform in
// [1e-3, 1e3].
GroupCheckReport check_group(const GradedAlgebra& alg, int samples, std::uint64_t seed = 1);

}  // namespace horoflow
