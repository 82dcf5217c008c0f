#pragma once

#include <doctest.h>

#include <initializer_list>
#include <utility>

#include "superlin/discovery.hpp"
#include "superlin/model.hpp"
#include "superlin/selftest.hpp"

namespace testsup {

using namespace superlin;

inline Monomial mono(std::initializer_list<std::uint32_t> exps) {
  return Monomial(std::vector<std::uint32_t>(exps));
}

// {{coeff, {e1, e2, ...}}, ...}
inline Polynomial poly(int n_vars,
                       std::initializer_list<std::pair<long long, std::initializer_list<std::uint32_t>>> terms) {
  Polynomial p(n_vars);
  for (const auto& [c, e] : terms)
    p.add_term(Monomial(std::vector<std::uint32_t>(e)), Rational(c));
  return p;
}

inline RatMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
  const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index nc = nr == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
  RatMatrix M(nr, nc);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long long v : row) M(i, j++) = Rational(v);
    ++i;
  }
  return M;
}

inline RatVector vec(std::initializer_list<long long> entries) {
  RatVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (long long e : entries) v(i++) = Rational(e);
  return v;
}

// xdot = -x + y^2 + u, ydot = -y; observable w = y^2 lifts it to a
// three-dimensional linear system with wdot = -2w.
inline ControlSystem example_system() {
  return ControlSystem(2,
                       PolyVectorField(2, {poly(2, {{-1, {1, 0}}, {1, {0, 2}}}),
                                           poly(2, {{-1, {0, 1}}})}),
                       PolyVectorField(2, {poly(2, {{1, {0, 0}}}), Polynomial(2)}));
}

inline Embedding example_embedding() {
  return Embedding(2, 1, mat({{-1, 0, 1}, {0, -1, 0}, {0, 0, -2}}), vec({1, 0, 0}),
                   vec({0, 0, 0}),
                   PolyVectorField(2, {poly(2, {{1, {0, 2}}})}));
}

// Three-state system with a rotation in the trailing pair and a visible
// observable mixing both trailing variables, so the invariant subspace is
// exactly the leading axis.
//   x1dot = -x1 + q(x2, x3) + u,  x2dot = x3,  x3dot = -x2
//   q = x2^2 + x2 x3 + x3^2, hidden monomial observables close the lift.
inline ControlSystem mixing_system() {
  return ControlSystem(
      3,
      PolyVectorField(3, {poly(3, {{-1, {1, 0, 0}},
                                   {1, {0, 2, 0}},
                                   {1, {0, 1, 1}},
                                   {1, {0, 0, 2}}}),
                          poly(3, {{1, {0, 0, 1}}}),
                          poly(3, {{-1, {0, 1, 0}}})}),
      PolyVectorField(3, {poly(3, {{1, {0, 0, 0}}}), Polynomial(3), Polynomial(3)}));
}

inline Embedding mixing_embedding() {
  // observables (q, x2^2, x2 x3, x3^2); derivatives along the rotation:
  //   qdot       = x3^2 - x2^2
  //   d(x2^2)    = 2 x2 x3
  //   d(x2 x3)   = x3^2 - x2^2
  //   d(x3^2)    = -2 x2 x3
  RatMatrix A_ell = RatMatrix::Zero(7, 7);
  A_ell.block(0, 0, 3, 3) = mat({{-1, 0, 0}, {0, 0, 1}, {0, -1, 0}});
  A_ell(0, 3) = Rational(1);  // G = e1 e1^T
  A_ell.block(3, 3, 4, 4) =
      mat({{0, -1, 0, 1}, {0, 0, 2, 0}, {0, -1, 0, 1}, {0, 0, -2, 0}});
  RatVector B_ell = RatVector::Zero(7);
  B_ell(0) = Rational(1);
  return Embedding(3, 4, std::move(A_ell), std::move(B_ell), RatVector(RatVector::Zero(7)),
                   PolyVectorField(3, {poly(3, {{1, {0, 2, 0}}, {1, {0, 1, 1}}, {1, {0, 0, 2}}}),
                                       poly(3, {{1, {0, 2, 0}}}),
                                       poly(3, {{1, {0, 1, 1}}}),
                                       poly(3, {{1, {0, 0, 2}}})}));
}

}  // namespace testsup
