#include "superlin/vectorfield.hpp"

namespace superlin {

PolyVectorField::PolyVectorField(int n_vars, std::vector<Polynomial> components)
    : n_vars_(n_vars), comps_(std::move(components)) {
  for (const Polynomial& c : comps_)
    if (c.n_vars() != n_vars_)
      throw DimensionMismatch("field component over the wrong variable count");
}

PolyVectorField PolyVectorField::zero(int n_vars, int count) {
  return PolyVectorField(n_vars,
                         std::vector<Polynomial>(static_cast<size_t>(count), Polynomial(n_vars)));
}

PolyVectorField PolyVectorField::linear(const RatMatrix& A) {
  const int n = static_cast<int>(A.cols());
  std::vector<Polynomial> comps;
  comps.reserve(static_cast<size_t>(A.rows()));
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Polynomial p(n);
    for (int j = 0; j < n; ++j) p.add_term(Monomial::variable(n, j), A(i, j));
    comps.push_back(std::move(p));
  }
  return PolyVectorField(n, std::move(comps));
}

PolyVectorField PolyVectorField::constant(int n_vars, const RatVector& b) {
  std::vector<Polynomial> comps;
  comps.reserve(static_cast<size_t>(b.size()));
  for (Eigen::Index i = 0; i < b.size(); ++i)
    comps.push_back(Polynomial::constant(n_vars, b(i)));
  return PolyVectorField(n_vars, std::move(comps));
}

RatVector PolyVectorField::eval(const RatVector& point) const {
  RatVector out(size());
  for (int i = 0; i < size(); ++i) out(i) = evaluate(comps_[static_cast<size_t>(i)], point);
  return out;
}

Eigen::VectorXd PolyVectorField::eval(const Eigen::VectorXd& point) const {
  Eigen::VectorXd out(size());
  for (int i = 0; i < size(); ++i) out(i) = evaluate(comps_[static_cast<size_t>(i)], point);
  return out;
}

Polynomial lie_derivative(const PolyVectorField& f, const Polynomial& p) {
  if (f.n_vars() != p.n_vars() || f.size() != f.n_vars())
    throw DimensionMismatch("lie_derivative needs a square field over p's variables");
  Polynomial acc(p.n_vars());
  for (int j = 0; j < p.n_vars(); ++j) acc += partial_derivative(p, j) * f[j];
  return acc;
}

PolyVectorField lie_derivative(const PolyVectorField& f, const PolyVectorField& p) {
  std::vector<Polynomial> comps;
  comps.reserve(static_cast<size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) comps.push_back(lie_derivative(f, p[i]));
  return PolyVectorField(p.n_vars(), std::move(comps));
}

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
  if (a.n_vars() != b.n_vars() || a.size() != b.size())
    throw DimensionMismatch("field addition shape mismatch");
  std::vector<Polynomial> comps;
  comps.reserve(static_cast<size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) comps.push_back(a[i] + b[i]);
  return PolyVectorField(a.n_vars(), std::move(comps));
}

PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b) {
  if (a.n_vars() != b.n_vars() || a.size() != b.size())
    throw DimensionMismatch("field subtraction shape mismatch");
  std::vector<Polynomial> comps;
  comps.reserve(static_cast<size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) comps.push_back(a[i] - b[i]);
  return PolyVectorField(a.n_vars(), std::move(comps));
}

PolyVectorField lie_bracket(const PolyVectorField& f, const PolyVectorField& g) {
  if (f.n_vars() != g.n_vars() || f.size() != f.n_vars() || g.size() != g.n_vars())
    throw DimensionMismatch("lie_bracket needs square fields on the same space");
  return lie_derivative(f, g) - lie_derivative(g, f);
}

Polynomial iterated_lie_scalar(const RatMatrix& A, const Polynomial& q, int k) {
  if (k < 0) throw DimensionMismatch("iterated Lie derivative order must be non-negative");
  if (A.rows() != A.cols() || A.rows() != q.n_vars())
    throw DimensionMismatch("iterated_lie_scalar shape mismatch");
  const PolyVectorField field = PolyVectorField::linear(A);
  Polynomial out = q;
  for (int i = 0; i < k; ++i) out = lie_derivative(field, out);
  return out;
}

std::vector<std::vector<Polynomial>> jacobian(const PolyVectorField& p) {
  std::vector<std::vector<Polynomial>> J;
  J.reserve(static_cast<size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) {
    std::vector<Polynomial> row;
    row.reserve(static_cast<size_t>(p.n_vars()));
    for (int j = 0; j < p.n_vars(); ++j) row.push_back(partial_derivative(p[i], j));
    J.push_back(std::move(row));
  }
  return J;
}

}  // namespace superlin
