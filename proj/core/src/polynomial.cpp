#include "horoflow/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "horoflow/errors.hpp"

namespace horoflow {

Polynomial Polynomial::constant(int num_vars, double c) {
  Polynomial p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) throw DimensionError("polynomial variable index out of range");
  Polynomial p(num_vars);
  Exponents e(num_vars, 0);
  e[index] = 1;
  p.add_term(e, 1.0);
  return p;
}

void Polynomial::add_term(const Exponents& exponents, double c) {
  if (static_cast<int>(exponents.size()) != num_vars_) {
    throw DimensionError("monomial arity does not match polynomial");
  }
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) < num_vars_) throw DimensionError("too few values to evaluate polynomial");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (int k = 0; k < num_vars_; ++k) {
      for (int p = 0; p < e[k]; ++p) m *= x[k];
    }
    sum += m;
  }
  return sum;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial d(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    d.add_term(f, c * e[var]);
  }
  return d;
}

Polynomial Polynomial::substitute(int var, double value) const {
  Polynomial s(num_vars_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    f[var] = 0;
    s.add_term(f, c * std::pow(value, e[var]));
  }
  return s;
}

Polynomial Polynomial::truncate_vars(int n) const {
  Polynomial t(n);
  for (const auto& [e, c] : terms_) {
    for (int k = n; k < num_vars_; ++k) {
      if (e[k] != 0) throw DimensionError("truncated variable still occurs in polynomial");
    }
    t.add_term(Exponents(e.begin(), e.begin() + n), c);
  }
  return t;
}

int Polynomial::weighted_degree(std::span<const int> weights) const {
  int degree = -1;
  for (const auto& [e, c] : terms_) {
    int w = 0;
    for (int k = 0; k < num_vars_; ++k) w += weights[k] * e[k];
    if (degree == -1) {
      degree = w;
    } else if (degree != w) {
      return -2;
    }
  }
  return degree;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.num_vars_ != num_vars_) throw DimensionError("polynomial arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.num_vars_ != num_vars_) throw DimensionError("polynomial arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw DimensionError("polynomial arity mismatch");
  Polynomial r(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e(a.num_vars_);
      for (int k = 0; k < a.num_vars_; ++k) e[k] = static_cast<std::uint8_t>(ea[k] + eb[k]);
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

std::string Polynomial::to_string(const std::string& var_prefix) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const double mag = std::abs(c);
    bool has_var = false;
    for (int k = 0; k < num_vars_; ++k) has_var = has_var || e[k] > 0;
    if (mag != 1.0 || !has_var) os << mag;
    bool need_sep = mag != 1.0;
    for (int k = 0; k < num_vars_; ++k) {
      if (e[k] == 0) continue;
      if (need_sep) os << "*";
      os << var_prefix << (k + 1);
      if (e[k] > 1) os << "^" << int(e[k]);
      need_sep = true;
    }
  }
  return os.str();
}

}  // namespace horoflow
