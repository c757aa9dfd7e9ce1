#include "horoflow/group.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "horoflow/errors.hpp"

namespace horoflow {
namespace {

bool is_zero(double v) { return v == 0.0; }
bool is_zero(const Polynomial& p) { return p.is_zero(); }

template <class S>
std::vector<S> bracket_impl(const GradedAlgebra& alg, const std::vector<S>& x, const std::vector<S>& y,
                            const S& zero) {
  const int q = alg.dimension();
  std::vector<S> out(q, zero);
  for (int i = 0; i < q; ++i) {
    if (is_zero(x[i])) continue;
    for (int j = 0; j < q; ++j) {
      if (is_zero(y[j])) continue;
      const auto& entries = alg.basis_bracket(i, j);
      if (entries.empty()) continue;
      const S prod = x[i] * y[j];
      for (const auto& [k, c] : entries) out[k] += c * prod;
    }
  }
  return out;
}

// Sum over Dynkin words of coefficient * right-nested bracket. Nested
// brackets of all suffixes are built bottom-up: suffix index bit 0 is the
// first letter of the suffix.
template <class S>
std::vector<S> bch_impl(const GradedAlgebra& alg, const std::vector<S>& x, const std::vector<S>& y,
                        const S& zero) {
  const int step = alg.step();
  std::vector<std::vector<std::vector<S>>> nested(step + 1);
  nested[1] = {x, y};
  for (int len = 2; len <= step; ++len) {
    const std::size_t count = std::size_t{1} << len;
    nested[len].reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
      const auto& head = (idx & 1u) ? y : x;
      nested[len].push_back(bracket_impl(alg, head, nested[len - 1][idx >> 1], zero));
    }
  }
  std::vector<S> out(alg.dimension(), zero);
  for (const auto& w : alg.dynkin_words()) {
    const auto& term = nested[w.length][w.letters];
    for (int k = 0; k < alg.dimension(); ++k) {
      if (!is_zero(term[k])) out[k] += w.coefficient * term[k];
    }
  }
  return out;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Coefficient of the word in the formal series log(e^X e^Y): sum over
// factorizations into nonempty blocks X^r Y^s of (-1)^{n-1}/n prod 1/(r! s!).
double dynkin_word_coefficient(std::uint32_t letters, int length) {
  auto letter = [&](int k) { return (letters >> k) & 1u; };
  // weight[a][b]: 1/(r! s!) if letters a..b-1 form X^r Y^s, else 0.
  std::vector<std::vector<double>> weight(length + 1, std::vector<double>(length + 1, 0.0));
  for (int a = 0; a < length; ++a) {
    int r = 0, s = 0;
    for (int b = a; b < length; ++b) {
      if (letter(b) == 0) {
        if (s > 0) break;
        ++r;
      } else {
        ++s;
      }
      weight[a][b + 1] = 1.0 / (factorial(r) * factorial(s));
    }
  }
  // ways[pos][n]: weighted count of factorizations of the prefix [0,pos)
  // into n blocks.
  std::vector<std::vector<double>> ways(length + 1, std::vector<double>(length + 1, 0.0));
  ways[0][0] = 1.0;
  for (int pos = 0; pos < length; ++pos) {
    for (int n = 0; n <= pos; ++n) {
      if (ways[pos][n] == 0.0) continue;
      for (int end = pos + 1; end <= length; ++end) {
        if (weight[pos][end] == 0.0) break;
        ways[end][n + 1] += ways[pos][n] * weight[pos][end];
      }
    }
  }
  double c = 0.0;
  for (int n = 1; n <= length; ++n) {
    c += ((n % 2 == 1) ? 1.0 : -1.0) / n * ways[length][n];
  }
  return c;
}

std::string basis_name(int i) { return "e" + std::to_string(i + 1); }

}  // namespace

GradedAlgebra::GradedAlgebra(std::vector<int> layer_dims, const std::vector<StructureConstant>& constants,
                             std::string name)
    : layer_dims_(std::move(layer_dims)), name_(std::move(name)) {
  if (layer_dims_.empty()) throw AlgebraError("graded algebra needs at least one layer");
  for (std::size_t j = 0; j < layer_dims_.size(); ++j) {
    if (layer_dims_[j] <= 0) {
      throw AlgebraError("layer " + std::to_string(j + 1) + " has non-positive dimension");
    }
    for (int n = 0; n < layer_dims_[j]; ++n) degrees_.push_back(static_cast<int>(j) + 1);
  }
  if (step() > 16) throw AlgebraError("step larger than 16 is not supported");
  const int q = dimension();
  std::vector<double> dense(static_cast<std::size_t>(q) * q * q, 0.0);
  std::vector<char> given(static_cast<std::size_t>(q) * q, 0);
  auto at = [&](int i, int j, int k) -> double& { return dense[(static_cast<std::size_t>(i) * q + j) * q + k]; };

  for (const auto& sc : constants) {
    if (sc.i < 0 || sc.i >= q || sc.j < 0 || sc.j >= q || sc.k < 0 || sc.k >= q) {
      throw AlgebraError("structure constant index out of range");
    }
    if (!std::isfinite(sc.c)) throw AlgebraError("structure constant is not finite");
    at(sc.i, sc.j, sc.k) += sc.c;
    given[static_cast<std::size_t>(sc.i) * q + sc.j] = 1;
    if (sc.c != std::round(sc.c)) integer_valued_ = false;
  }
  const double tol = validation_tolerance();

  for (int i = 0; i < q; ++i) {
    for (int j = i; j < q; ++j) {
      const bool gij = given[static_cast<std::size_t>(i) * q + j];
      const bool gji = given[static_cast<std::size_t>(j) * q + i];
      for (int k = 0; k < q; ++k) {
        if (i == j) {
          if (std::abs(at(i, i, k)) > tol) {
            throw AlgebraError("antisymmetry violated: [" + basis_name(i) + "," + basis_name(i) +
                               "] has nonzero component along " + basis_name(k));
          }
          continue;
        }
        if (gij && gji) {
          if (std::abs(at(i, j, k) + at(j, i, k)) > tol) {
            throw AlgebraError("antisymmetry violated: [" + basis_name(i) + "," + basis_name(j) + "] != -[" +
                               basis_name(j) + "," + basis_name(i) + "] along " + basis_name(k));
          }
        } else if (gij) {
          at(j, i, k) = -at(i, j, k);
        } else if (gji) {
          at(i, j, k) = -at(j, i, k);
        }
      }
    }
  }

  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      for (int k = 0; k < q; ++k) {
        if (at(i, j, k) != 0.0 && degrees_[k] != degrees_[i] + degrees_[j]) {
          std::ostringstream os;
          os << "grading violated: [" << basis_name(i) << "," << basis_name(j) << "] has component "
             << at(i, j, k) << " along " << basis_name(k) << " of degree " << degrees_[k] << " != "
             << degrees_[i] << "+" << degrees_[j];
          throw AlgebraError(os.str());
        }
      }
    }
  }

  table_.assign(static_cast<std::size_t>(q) * q, {});
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      for (int k = 0; k < q; ++k) {
        if (at(i, j, k) != 0.0) table_[static_cast<std::size_t>(i) * q + j].emplace_back(k, at(i, j, k));
      }
    }
  }

  auto basis = [q](int i) {
    Vector e(q, 0.0);
    e[i] = 1.0;
    return e;
  };
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      for (int k = j + 1; k < q; ++k) {
        const Vector ei = basis(i), ej = basis(j), ek = basis(k);
        const Vector a = bracket(*this, ei, bracket(*this, ej, ek));
        const Vector b = bracket(*this, ej, bracket(*this, ek, ei));
        const Vector c = bracket(*this, ek, bracket(*this, ei, ej));
        for (int n = 0; n < q; ++n) {
          const double s = a[n] + b[n] + c[n];
          if (std::abs(s) > tol) {
            std::ostringstream os;
            os << "Jacobi identity violated on (" << basis_name(i) << "," << basis_name(j) << ","
               << basis_name(k) << "): component " << basis_name(n) << " = " << s;
            throw AlgebraError(os.str());
          }
        }
      }
    }
  }

  for (int len = 1; len <= step(); ++len) {
    for (std::uint32_t letters = 0; letters < (1u << len); ++letters) {
      const double c = dynkin_word_coefficient(letters, len);
      if (std::abs(c) > 1e-15) dynkin_words_.push_back({letters, len, c / len});
    }
  }
}

int GradedAlgebra::layer_end(int j) const {
  int m = 0;
  for (int n = 0; n < j && n < step(); ++n) m += layer_dims_[n];
  return m;
}

double GradedAlgebra::structure_constant(int i, int j, int k) const {
  for (const auto& [kk, c] : basis_bracket(i, j)) {
    if (kk == k) return c;
  }
  return 0.0;
}

const std::vector<std::pair<int, double>>& GradedAlgebra::basis_bracket(int i, int j) const {
  return table_[static_cast<std::size_t>(i) * dimension() + j];
}

bool GradedAlgebra::is_heisenberg() const {
  if (layer_dims_ != std::vector<int>{2, 1}) return false;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        double expected = 0.0;
        if (i == 0 && j == 1 && k == 2) expected = 2.0;
        if (i == 1 && j == 0 && k == 2) expected = -2.0;
        if (structure_constant(i, j, k) != expected) return false;
      }
    }
  }
  return true;
}

std::vector<StructureConstant> GradedAlgebra::nonzero_constants() const {
  std::vector<StructureConstant> out;
  const int q = dimension();
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      for (const auto& [k, c] : basis_bracket(i, j)) out.push_back({i, j, k, c});
    }
  }
  return out;
}

Vector bracket(const GradedAlgebra& alg, std::span<const double> x, std::span<const double> y) {
  const auto q = static_cast<std::size_t>(alg.dimension());
  if (x.size() != q || y.size() != q) throw DimensionError("bracket: vector length differs from algebra dimension");
  return bracket_impl(alg, Vector(x.begin(), x.end()), Vector(y.begin(), y.end()), 0.0);
}

GroupElement bch_multiply(const GradedAlgebra& alg, const GroupElement& x, const GroupElement& y) {
  if (x.size() != alg.dimension() || y.size() != alg.dimension()) {
    throw DimensionError("bch_multiply: element dimension differs from algebra dimension");
  }
  return GroupElement(bch_impl(alg, x.vector(), y.vector(), 0.0));
}

GroupElement inverse(const GroupElement& x) {
  Vector c(x.coords().begin(), x.coords().end());
  for (auto& v : c) v = -v;
  return GroupElement(std::move(c));
}

GroupElement dilate(const GradedAlgebra& alg, double r, const GroupElement& x) {
  if (!(r > 0.0)) throw DomainError("dilation factor must be positive");
  if (x.size() != alg.dimension()) throw DimensionError("dilate: element dimension differs from algebra dimension");
  Vector c(x.coords().begin(), x.coords().end());
  for (int i = 0; i < alg.dimension(); ++i) {
    double s = 1.0;
    for (int p = 0; p < alg.degree(i); ++p) s *= r;
    c[i] *= s;
  }
  return GroupElement(std::move(c));
}

Dilation::Dilation(double r) : r_(r) {
  if (!(r > 0.0)) throw DomainError("dilation factor must be positive");
}

GradedAlgebra heisenberg() { return GradedAlgebra({2, 1}, {{0, 1, 2, 2.0}}, "heisenberg"); }

AlgebraPtr heisenberg_ptr() { return std::make_shared<const GradedAlgebra>(heisenberg()); }

std::vector<Polynomial> symbolic_product(const GradedAlgebra& alg, const std::vector<Polynomial>& x,
                                         const std::vector<Polynomial>& y) {
  const auto q = static_cast<std::size_t>(alg.dimension());
  if (x.size() != q || y.size() != q) throw DimensionError("symbolic_product: length differs from algebra dimension");
  const int nv = x.front().num_vars();
  return bch_impl(alg, x, y, Polynomial(nv));
}

std::vector<Polynomial> left_translation(const GradedAlgebra& alg, const GroupElement& z) {
  const int q = alg.dimension();
  if (z.size() != q) throw DimensionError("left_translation: element dimension differs from algebra dimension");
  std::vector<Polynomial> zp, yp;
  for (int i = 0; i < q; ++i) {
    zp.push_back(Polynomial::constant(q, z[i]));
    yp.push_back(Polynomial::variable(q, i));
  }
  return symbolic_product(alg, zp, yp);
}

GroupCheckReport check_group(const GradedAlgebra& alg, int samples, std::uint64_t seed) {
  if (samples < 1) throw DimensionError("check_group: samples must be positive");
  const int q = alg.dimension();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-10.0, 10.0), logr(std::log(1e-3), std::log(1e3));
  auto sample = [&] {
    std::vector<double> v(q);
    for (double& c : v) c = coord(rng);
    return GroupElement(std::move(v));
  };
  auto rel = [q](const GroupElement& a, const GroupElement& b) {
    double diff = 0.0, scale = 1.0;
    for (int i = 0; i < q; ++i) {
      diff = std::max(diff, std::abs(a[i] - b[i]));
      scale = std::max(scale, std::abs(b[i]));
    }
    return diff / scale;
  };
  const GroupElement zero = GroupElement::zero(q);
  GroupCheckReport rep;
  rep.samples = samples;
  for (int k = 0; k < samples; ++k) {
    const GroupElement x = sample(), y = sample(), z = sample();
    const GroupElement lhs = bch_multiply(alg, bch_multiply(alg, x, y), z);
    const GroupElement rhs = bch_multiply(alg, x, bch_multiply(alg, y, z));
    rep.associativity_max_err = std::max(rep.associativity_max_err, rel(lhs, rhs));
    const double r = std::exp(logr(rng));
    rep.automorphism_max_err = std::max(
        rep.automorphism_max_err,
        rel(dilate(alg, r, bch_multiply(alg, x, y)), bch_multiply(alg, dilate(alg, r, x), dilate(alg, r, y))));
    const GroupElement e = bch_multiply(alg, x, inverse(x));
    for (int i = 0; i < q; ++i) rep.inverse_max_err = std::max(rep.inverse_max_err, std::abs(e[i]));
    rep.identity_max_err =
        std::max({rep.identity_max_err, rel(bch_multiply(alg, x, zero), x), rel(bch_multiply(alg, zero, x), x)});
  }
  return rep;
}

}  // namespace horoflow
