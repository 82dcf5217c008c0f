#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <utility>

#include "superlin/errors.hpp"

namespace superlin {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. Always stored canonically: positive denominator,
// coprime numerator/denominator, zero as 0/1. All identity checks in this
// library compare these values exactly; there is no tolerance anywhere in
// the algebraic layer.
class Rational {
 public:
  using Rep = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(int v) : v_(v) {}                 // NOLINT: implicit by design
  Rational(long long v) : v_(v) {}           // NOLINT
  Rational(const BigInt& num) : v_(num) {}   // NOLINT
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(Rep rep) : v_(std::move(rep)) {}

  const Rep& rep() const { return v_; }
  BigInt num() const { return numerator(v_); }
  BigInt den() const { return denominator(v_); }
  bool is_zero() const { return v_.is_zero(); }
  int sign() const { return v_.sign(); }
  double to_double() const { return v_.convert_to<double>(); }

  Rational operator-() const { return Rational(Rep(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend Rational abs(const Rational& a) {
    return Rational(Rep(boost::multiprecision::abs(a.v_)));
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  Rep v_{};
};

// Text form used everywhere a rational leaves the process: "num/den" with
// den > 0, e.g. "-2/3", "0/1". parse_rational also accepts a bare integer.
std::string format_rational(const Rational& r);
Rational parse_rational(const std::string& text);

}  // namespace superlin

// The specialization has to precede the first Matrix<Rational> instantiation.
namespace Eigen {

template <>
struct NumTraits<superlin::Rational> {
  using Real = superlin::Rational;
  using NonInteger = superlin::Rational;
  using Literal = superlin::Rational;
  using Nested = superlin::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 40
  };
  static superlin::Rational epsilon() { return superlin::Rational(0); }
  static superlin::Rational dummy_precision() { return superlin::Rational(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace superlin {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix = DenseMatrix<Rational>;
using RatVector = DenseVector<Rational>;

Eigen::MatrixXd to_double(const RatMatrix& m);
Eigen::VectorXd to_double(const RatVector& v);

inline bool is_zero(const RatMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

inline bool is_zero(const RatVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return false;
  return true;
}

}  // namespace superlin
