#pragma once

#include <vector>

#include "superlin/polynomial.hpp"

namespace superlin {

// Polynomial map R^n_vars -> R^size. Vector fields are the square case
// (size == n_vars); observables p : R^n -> R^m use the general one.
class PolyVectorField {
 public:
  PolyVectorField(int n_vars, std::vector<Polynomial> components);

  static PolyVectorField zero(int n_vars, int count);
  // x -> A x
  static PolyVectorField linear(const RatMatrix& A);
  // x -> b
  static PolyVectorField constant(int n_vars, const RatVector& b);

  int n_vars() const { return n_vars_; }
  int size() const { return static_cast<int>(comps_.size()); }
  const Polynomial& operator[](int i) const { return comps_[static_cast<size_t>(i)]; }
  const std::vector<Polynomial>& components() const { return comps_; }

  RatVector eval(const RatVector& point) const;
  Eigen::VectorXd eval(const Eigen::VectorXd& point) const;

  bool operator==(const PolyVectorField& o) const = default;

 private:
  int n_vars_;
  std::vector<Polynomial> comps_;
};

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b);
PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b);

// Directional derivative of p along f: (dp/dx) f, computed exactly.
Polynomial lie_derivative(const PolyVectorField& f, const Polynomial& p);
PolyVectorField lie_derivative(const PolyVectorField& f, const PolyVectorField& p);

// [f, g] = (dg/dx) f - (df/dx) g for square fields on the same space.
PolyVectorField lie_bracket(const PolyVectorField& f, const PolyVectorField& g);

// k-fold Lie derivative of a scalar along the linear field x -> A x. The
// degree never grows, so iterates stay in the span of q's degrees.
Polynomial iterated_lie_scalar(const RatMatrix& A, const Polynomial& q, int k);

// Jacobian entries d p_i / d x_j as a size x n_vars grid of polynomials.
std::vector<std::vector<Polynomial>> jacobian(const PolyVectorField& p);

}  // namespace superlin
