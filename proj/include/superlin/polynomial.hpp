#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "superlin/rational.hpp"

namespace superlin {

// Exponent vector of a single power product. The length always equals the
// variable count of the owning polynomial. Ordered graded-lexicographically:
// by total degree first, then lexicographically on the exponent vector.
class Monomial {
 public:
  explicit Monomial(std::vector<std::uint32_t> exponents)
      : exps_(std::move(exponents)) {}

  static Monomial unit(int n_vars) {
    return Monomial(std::vector<std::uint32_t>(static_cast<size_t>(n_vars), 0));
  }
  static Monomial variable(int n_vars, int index, std::uint32_t power = 1);

  int n_vars() const { return static_cast<int>(exps_.size()); }
  int degree() const;
  std::uint32_t operator[](int i) const { return exps_[static_cast<size_t>(i)]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator<(const Monomial& o) const;

 private:
  std::vector<std::uint32_t> exps_;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Invariants: no stored zero coefficients; every monomial has n_vars
// exponents. Immutable in practice: all operations return new values.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  // Degree of the zero polynomial. Only ever compared against, never used
  // in arithmetic.
  static constexpr int kNegInfinity = std::numeric_limits<int>::min();

  explicit Polynomial(int n_vars) : n_vars_(n_vars) {}
  Polynomial(int n_vars, TermMap terms);

  static Polynomial constant(int n_vars, const Rational& c);
  static Polynomial variable(int n_vars, int index);
  static Polynomial term(const Monomial& m, const Rational& c);

  int n_vars() const { return n_vars_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  const TermMap& terms() const { return terms_; }
  Rational coefficient(const Monomial& m) const;

  // Accumulates c * m, erasing the term if the sum cancels.
  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  bool operator==(const Polynomial& o) const {
    return n_vars_ == o.n_vars_ && terms_ == o.terms_;
  }

  // Canonical text form: terms in graded-lex order, each printed as
  // "num/den * x1^e1 x2^e2 ...". The zero polynomial prints as "0/1".
  std::string to_string() const;

 private:
  int n_vars_;
  TermMap terms_;
};

// Formal partial derivative with respect to variable var_index.
Polynomial partial_derivative(const Polynomial& p, int var_index);

// Homogeneous part of degree i; zero for i < 0 or i > deg p.
Polynomial homogeneous_part(const Polynomial& p, int i);

// Exact evaluation at a rational point.
Rational evaluate(const Polynomial& p, const RatVector& point);

// Floating evaluation; terms are accumulated in graded-lex order so the
// result is reproducible run to run.
double evaluate(const Polynomial& p, const Eigen::VectorXd& point);

// Substitutes x = T x' + c and expands: returns p(T x' + c).
Polynomial compose_affine(const Polynomial& p, const RatMatrix& T,
                          const RatVector& c);

}  // namespace superlin
