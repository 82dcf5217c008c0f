#include "support.hpp"

using namespace testsup;

TEST_CASE("lie derivative on fixed examples") {
  // f = (-x, -y), p = y^2: derivative along the flow is -2y^2
  const PolyVectorField f(2, {poly(2, {{-1, {1, 0}}}), poly(2, {{-1, {0, 1}}})});
  const Polynomial y2 = poly(2, {{1, {0, 2}}});
  CHECK(lie_derivative(f, y2) == poly(2, {{-2, {0, 2}}}));

  CHECK(lie_derivative(f, poly(2, {{7, {0, 0}}})).is_zero());

  // f = (y, -x), p = x^2 -> 2xy
  const PolyVectorField rot(2, {poly(2, {{1, {0, 1}}}), poly(2, {{-1, {1, 0}}})});
  const Polynomial x2 = poly(2, {{1, {2, 0}}});
  CHECK(lie_derivative(rot, x2) == poly(2, {{2, {1, 1}}}));

  // directional finite-difference oracle: L_f p (x0) ~ d/dh p(x0 + h f(x0))
  for (double sx : {0.4, -1.1}) {
    for (double sy : {0.9, 1.7}) {
      Eigen::VectorXd x0(2);
      x0 << sx, sy;
      const Eigen::VectorXd dir = rot.eval(x0);
      const double h = 1e-6;
      const double fd =
          (evaluate(x2, Eigen::VectorXd(x0 + h * dir)) - evaluate(x2, Eigen::VectorXd(x0 - h * dir))) /
          (2.0 * h);
      CHECK(evaluate(lie_derivative(rot, x2), x0) == doctest::Approx(fd).epsilon(1e-5));
    }
  }

  CHECK_THROWS_AS(lie_derivative(PolyVectorField(2, {poly(2, {{1, {0, 1}}})}), y2),
                  DimensionMismatch);
}

TEST_CASE("lie bracket on fixed examples") {
  Rng rng(3);
  const PolyVectorField f = random_field(rng, 2, 2, 3);
  const PolyVectorField zero = lie_bracket(f, f);
  for (int i = 0; i < zero.size(); ++i) CHECK(zero[i].is_zero());

  // constant field against a linear field: [B, Ax] = AB
  const RatMatrix A = mat({{1, 2}, {3, 4}});
  const RatVector B = vec({1, -1});
  const PolyVectorField bracket =
      lie_bracket(PolyVectorField::constant(2, B), PolyVectorField::linear(A));
  const RatVector AB = A * B;
  for (int i = 0; i < 2; ++i)
    CHECK(bracket[i] == Polynomial::constant(2, AB(i)));

  // f = (x^2, 0), g = (0, 1): both derivative terms vanish
  const PolyVectorField fx(2, {poly(2, {{1, {2, 0}}}), Polynomial(2)});
  const PolyVectorField gy(2, {Polynomial(2), poly(2, {{1, {0, 0}}})});
  const PolyVectorField br = lie_bracket(fx, gy);
  CHECK(br[0].is_zero());
  CHECK(br[1].is_zero());
}

TEST_CASE("bracket identities on random fields") {
  Rng rng(29);
  for (int i = 0; i < 25; ++i) {
    const int n = static_cast<int>(rng.uniform_int(2, 3));
    const PolyVectorField f = random_field(rng, n, 2, 3);
    const PolyVectorField g = random_field(rng, n, 2, 3);
    const PolyVectorField h = random_field(rng, n, 2, 3);
    const Polynomial p = random_polynomial(rng, n, 3, 4);

    // L_{[f,g]} p = L_f L_g p - L_g L_f p
    CHECK(lie_derivative(lie_bracket(f, g), p) ==
          lie_derivative(f, lie_derivative(g, p)) - lie_derivative(g, lie_derivative(f, p)));

    // antisymmetry
    const PolyVectorField s = lie_bracket(f, g) + lie_bracket(g, f);
    for (int c = 0; c < n; ++c) CHECK(s[c].is_zero());

    // Jacobi identity
    const PolyVectorField j = lie_bracket(f, lie_bracket(g, h)) +
                              lie_bracket(g, lie_bracket(h, f)) +
                              lie_bracket(h, lie_bracket(f, g));
    for (int c = 0; c < n; ++c) CHECK(j[c].is_zero());
  }
}

TEST_CASE("degree range of the derivative") {
  Rng rng(37);
  for (int i = 0; i < 40; ++i) {
    const int n = static_cast<int>(rng.uniform_int(2, 3));
    const PolyVectorField f = random_field(rng, n, 3, 3);
    const Polynomial p = random_polynomial(rng, n, 3, 3);
    const Polynomial lp = lie_derivative(f, p);
    if (lp.is_zero() || p.is_zero()) continue;

    int f_min = std::numeric_limits<int>::max(), f_max = Polynomial::kNegInfinity;
    for (int c = 0; c < n; ++c)
      for (const auto& [m, coeff] : f[c].terms()) {
        f_min = std::min(f_min, m.degree());
        f_max = std::max(f_max, m.degree());
      }
    if (f_max == Polynomial::kNegInfinity) continue;
    int p_min = std::numeric_limits<int>::max(), p_max = 0;
    for (const auto& [m, coeff] : p.terms()) {
      p_min = std::min(p_min, m.degree());
      p_max = std::max(p_max, m.degree());
    }
    for (const auto& [m, coeff] : lp.terms()) {
      CHECK(m.degree() >= f_min + p_min - 1);
      CHECK(m.degree() <= f_max + p_max - 1);
    }
  }
}

TEST_CASE("iterated derivative along a linear field") {
  const RatMatrix A = mat({{-1, 0}, {0, -1}});
  const Polynomial y2 = poly(2, {{1, {0, 2}}});

  CHECK(iterated_lie_scalar(A, y2, 0) == y2);
  CHECK(iterated_lie_scalar(A, y2, 1) == poly(2, {{-2, {0, 2}}}));

  // oracle: three explicit single steps
  const PolyVectorField lin = PolyVectorField::linear(A);
  const Polynomial manual =
      lie_derivative(lin, lie_derivative(lin, lie_derivative(lin, y2)));
  CHECK(iterated_lie_scalar(A, y2, 3) == manual);
  CHECK(iterated_lie_scalar(A, y2, 3) == poly(2, {{-8, {0, 2}}}));

  CHECK_THROWS_AS(iterated_lie_scalar(A, y2, -1), DimensionMismatch);
}

TEST_CASE("iterated derivative composes additively") {
  Rng rng(43);
  for (int i = 0; i < 20; ++i) {
    const int n = static_cast<int>(rng.uniform_int(1, 3));
    const RatMatrix A = random_matrix(rng, n, n, -2, 2);
    const Polynomial q = random_polynomial(rng, n, 3, 3);
    const int j = static_cast<int>(rng.uniform_int(0, 2));
    const int k = static_cast<int>(rng.uniform_int(0, 2));
    CHECK(iterated_lie_scalar(A, q, j + k) ==
          iterated_lie_scalar(A, iterated_lie_scalar(A, q, k), j));
    // affine fields never raise the degree
    if (!q.is_zero() && !iterated_lie_scalar(A, q, k).is_zero())
      CHECK(iterated_lie_scalar(A, q, k).degree() <= q.degree());
  }
}
