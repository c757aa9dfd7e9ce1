#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace horoflow {

// Sparse multivariate polynomial with real coefficients in a fixed number of
// variables. Monomials are keyed by their exponent vectors.
class Polynomial {
 public:
  using Exponents = std::vector<std::uint8_t>;

  explicit Polynomial(int num_vars = 0) : num_vars_(num_vars) {}

  static Polynomial constant(int num_vars, double c);
  static Polynomial variable(int num_vars, int index);

  int num_vars() const { return num_vars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, double>& terms() const { return terms_; }

  // Adds c * x^exponents, dropping the monomial if it cancels.
  void add_term(const Exponents& exponents, double c);

  double evaluate(std::span<const double> x) const;
  Polynomial derivative(int var) const;
  // Substitutes x_var = value.
  Polynomial substitute(int var, double value) const;
  // Keeps the first n variables; the others must not occur.
  Polynomial truncate_vars(int n) const;

  // Each monomial's weighted degree sum_k weights[k]*exponent[k]; returns -1
  // for the zero polynomial and -2 if monomials have different weights.
  int weighted_degree(std::span<const int> weights) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double c) { return a *= c; }
  friend Polynomial operator*(double c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  std::string to_string(const std::string& var_prefix = "x") const;

 private:
  int num_vars_;
  std::map<Exponents, double> terms_;
};

}  // namespace horoflow
