#include "superlin/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace superlin {

Monomial Monomial::variable(int n_vars, int index, std::uint32_t power) {
  if (index < 0 || index >= n_vars)
    throw DimensionMismatch("monomial variable index out of range");
  std::vector<std::uint32_t> e(static_cast<size_t>(n_vars), 0);
  e[static_cast<size_t>(index)] = power;
  return Monomial(std::move(e));
}

int Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), 0,
                         [](int acc, std::uint32_t e) { return acc + static_cast<int>(e); });
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (exps_.size() != o.exps_.size())
    throw DimensionMismatch("monomial product across different variable counts");
  std::vector<std::uint32_t> e(exps_.size());
  for (size_t i = 0; i < e.size(); ++i) e[i] = exps_[i] + o.exps_[i];
  return Monomial(std::move(e));
}

bool Monomial::operator<(const Monomial& o) const {
  const int da = degree();
  const int db = o.degree();
  if (da != db) return da < db;
  return std::lexicographical_compare(exps_.begin(), exps_.end(),
                                      o.exps_.begin(), o.exps_.end());
}

Polynomial::Polynomial(int n_vars, TermMap terms) : n_vars_(n_vars) {
  for (auto& [m, c] : terms) {
    if (m.n_vars() != n_vars_)
      throw DimensionMismatch("term exponent length does not match variable count");
    if (!c.is_zero()) terms_.emplace(m, c);
  }
}

Polynomial Polynomial::constant(int n_vars, const Rational& c) {
  Polynomial p(n_vars);
  p.add_term(Monomial::unit(n_vars), c);
  return p;
}

Polynomial Polynomial::variable(int n_vars, int index) {
  Polynomial p(n_vars);
  p.add_term(Monomial::variable(n_vars, index), Rational(1));
  return p;
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p(m.n_vars());
  p.add_term(m, c);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return kNegInfinity;
  // graded order: the last term carries the total degree
  return terms_.rbegin()->first.degree();
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.n_vars() != n_vars_)
    throw DimensionMismatch("term exponent length does not match variable count");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(n_vars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.n_vars_ != b.n_vars_)
    throw DimensionMismatch("polynomial addition across different variable counts");
  Polynomial r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  if (a.n_vars_ != b.n_vars_)
    throw DimensionMismatch("polynomial subtraction across different variable counts");
  Polynomial r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.n_vars_ != b.n_vars_)
    throw DimensionMismatch("polynomial product across different variable counts");
  Polynomial r(a.n_vars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  Polynomial r(p.n_vars_);
  if (c.is_zero()) return r;
  for (const auto& [m, pc] : p.terms_) r.terms_.emplace(m, c * pc);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  *this = *this + o;
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  *this = *this - o;
  return *this;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0/1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << format_rational(c) << " *";
    for (int i = 0; i < n_vars_; ++i) os << " x" << (i + 1) << "^" << m[i];
  }
  return os.str();
}

Polynomial partial_derivative(const Polynomial& p, int var_index) {
  if (var_index < 0 || var_index >= p.n_vars())
    throw DimensionMismatch("partial derivative index out of range");
  Polynomial r(p.n_vars());
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t e = m[var_index];
    if (e == 0) continue;
    std::vector<std::uint32_t> exps = m.exponents();
    exps[static_cast<size_t>(var_index)] = e - 1;
    r.add_term(Monomial(std::move(exps)), c * Rational(static_cast<long long>(e)));
  }
  return r;
}

Polynomial homogeneous_part(const Polynomial& p, int i) {
  Polynomial r(p.n_vars());
  if (i < 0) return r;
  for (const auto& [m, c] : p.terms())
    if (m.degree() == i) r.add_term(m, c);
  return r;
}

Rational evaluate(const Polynomial& p, const RatVector& point) {
  if (point.size() != p.n_vars())
    throw DimensionMismatch("evaluation point length does not match variable count");
  Rational acc(0);
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (int i = 0; i < p.n_vars(); ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) t *= point(i);
    acc += t;
  }
  return acc;
}

double evaluate(const Polynomial& p, const Eigen::VectorXd& point) {
  if (point.size() != p.n_vars())
    throw DimensionMismatch("evaluation point length does not match variable count");
  double acc = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double t = c.to_double();
    for (int i = 0; i < p.n_vars(); ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) t *= point(i);
    acc += t;
  }
  return acc;
}

Polynomial compose_affine(const Polynomial& p, const RatMatrix& T,
                          const RatVector& c) {
  const int n = p.n_vars();
  if (T.rows() != n || T.cols() != n || c.size() != n)
    throw DimensionMismatch("affine substitution shape does not match variable count");

  // substitution image of each variable
  std::vector<Polynomial> sub;
  sub.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Polynomial s(n);
    s.add_term(Monomial::unit(n), c(i));
    for (int j = 0; j < n; ++j)
      s.add_term(Monomial::variable(n, j), T(i, j));
    sub.push_back(std::move(s));
  }

  // lazily grown power tables, one per variable
  std::vector<std::vector<Polynomial>> powers(static_cast<size_t>(n));
  auto power = [&](int i, std::uint32_t e) -> const Polynomial& {
    auto& table = powers[static_cast<size_t>(i)];
    if (table.empty()) table.push_back(Polynomial::constant(n, Rational(1)));
    while (table.size() <= e) table.push_back(table.back() * sub[static_cast<size_t>(i)]);
    return table[e];
  };

  Polynomial out(n);
  for (const auto& [m, coeff] : p.terms()) {
    Polynomial t = Polynomial::constant(n, coeff);
    for (int i = 0; i < n; ++i)
      if (m[i] > 0) t = t * power(i, m[i]);
    out += t;
  }
  return out;
}

}  // namespace superlin
