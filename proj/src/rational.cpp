#include "superlin/rational.hpp"

#include <cctype>
#include <ostream>

namespace superlin {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw SingularMatrix("rational with zero denominator");
  v_ = den < 0 ? Rep(-num, BigInt(-den)) : Rep(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw SingularMatrix("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw SingularMatrix("rational division by zero");
  return Rational(Rational::Rep(a.v_ / b.v_));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << format_rational(r);
}

std::string format_rational(const Rational& r) {
  return r.num().str() + "/" + r.den().str();
}

Rational parse_rational(const std::string& text) {
  const auto bad = [&]() -> ParseError {
    return ParseError("malformed rational \"" + text + "\" (expected num or num/den)");
  };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  const std::string num_s = text.substr(0, slash);
  const std::string den_s =
      slash == std::string::npos ? std::string("1") : text.substr(slash + 1);

  auto check_int = [&](const std::string& s, bool allow_sign) {
    if (s.empty()) throw bad();
    size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw bad();
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw bad();
  };
  check_int(num_s, true);
  check_int(den_s, false);

  BigInt num(num_s);
  BigInt den(den_s);
  if (den == 0) throw ParseError("rational with zero denominator: \"" + text + "\"");
  return Rational(num, den);
}

Eigen::MatrixXd to_double(const RatMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

Eigen::VectorXd to_double(const RatVector& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).to_double();
  return out;
}

}  // namespace superlin
