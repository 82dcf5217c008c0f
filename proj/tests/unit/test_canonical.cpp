#include "support.hpp"

using namespace testsup;

TEST_CASE("annihilation of the Krylov directions on the worked example") {
  const KrylovCheck res = krylov_annihilation_check(example_system(), example_embedding());
  CHECK(res.ok);
  CHECK_FALSE(res.witness.has_value());
}

TEST_CASE("a visible observable on a controllable direction fails the check") {
  // q = x^2 depends on the direction B = (1,0) pushes
  RatMatrix A_ell = RatMatrix::Zero(3, 3);
  A_ell.block(0, 0, 2, 2) = mat({{-1, 0}, {0, -1}});
  A_ell(1, 2) = Rational(1);  // gbar = (0,1)
  const Embedding emb(2, 1, A_ell, vec({1, 0, 0}), vec({0, 0, 0}),
                      PolyVectorField(2, {poly(2, {{1, {2, 0}}})}));
  const KrylovCheck res = krylov_annihilation_check(
      ControlSystem(2, PolyVectorField::linear(mat({{-1, 0}, {0, -1}})),
                    PolyVectorField::constant(2, vec({1, 0}))),
      emb);
  CHECK_FALSE(res.ok);
  REQUIRE(res.residual.has_value());
  CHECK(*res.residual == poly(2, {{2, {1, 0}}}));  // dq/dx B = 2x
  REQUIRE(res.witness.has_value());
  CHECK(*res.witness == vec({1, 0}));
}

TEST_CASE("mixing example passes the annihilation check") {
  const KrylovCheck res = krylov_annihilation_check(mixing_system(), mixing_embedding());
  CHECK(res.ok);
}

TEST_CASE("check requires the normalized form") {
  RatMatrix A_ell = RatMatrix::Zero(4, 4);
  A_ell.block(0, 0, 2, 2) = mat({{-1, 0}, {0, -1}});
  A_ell(0, 3) = Rational(1);  // nonzero second column only
  const Embedding emb(2, 2, A_ell, RatVector(RatVector::Zero(4)), RatVector(RatVector::Zero(4)),
                      PolyVectorField(2, {poly(2, {{1, {2, 0}}}), poly(2, {{1, {0, 2}}})}));
  CHECK_THROWS_AS(
      krylov_annihilation_check(ControlSystem(2, PolyVectorField::zero(2, 2),
                                       PolyVectorField::zero(2, 2)),
                         emb),
      NotSingleVisible);
}

TEST_CASE("invariant subspace on fixed examples") {
  // worked example: the kernel of (0, 2y) in coefficient form is the x-axis
  const auto V = compute_invariant_subspace(example_embedding());
  REQUIRE(V.size() == 1);
  CHECK(V[0] == vec({1, 0}));

  // no observables: the whole space
  const Embedding lin(2, 0, mat({{-1, 0}, {0, -1}}), vec({1, 0}), vec({0, 0}),
                      PolyVectorField::zero(2, 0));
  CHECK(compute_invariant_subspace(lin).size() == 2);

  // p = x^2 + y^2 constrains both directions
  RatMatrix A_ell = RatMatrix::Zero(3, 3);
  A_ell.block(0, 0, 2, 2) = mat({{0, 1}, {-1, 0}});
  A_ell(0, 2) = Rational(1);
  const Embedding full(2, 1, A_ell, vec({0, 0, 0}), vec({0, 0, 0}),
                       PolyVectorField(2, {poly(2, {{1, {2, 0}}, {1, {0, 2}}})}));
  CHECK(compute_invariant_subspace(full).empty());
}

TEST_CASE("invariant subspace stays inside the pointwise kernel and is A-invariant") {
  Rng rng(71);
  for (int i = 0; i < 15; ++i) {
    const GeneratedSystem gen = generate_random_balanced(
        rng.next(), static_cast<int>(rng.uniform_int(1, 2)),
        static_cast<int>(rng.uniform_int(1, 3)), static_cast<int>(rng.uniform_int(2, 3)));
    const Embedding norm = normalize_single_visible(gen.embedding);
    const auto V = compute_invariant_subspace(norm);
    REQUIRE(!V.empty());
    const Blocks b = partition(norm);
    const RatMatrix Vm = columns_to_matrix(V, norm.n);
    for (const RatVector& v : V) {
      // pointwise kernel: dq/dx v == 0 as a polynomial
      Polynomial r(norm.n);
      for (int j = 0; j < norm.n; ++j) r += v(j) * partial_derivative(norm.p[0], j);
      CHECK(r.is_zero());
      CHECK(in_span(Vm, RatVector(b.A * v)));
    }
  }
}

TEST_CASE("canonical form of the worked example") {
  const CanonicalForm cf = canonicalize(example_system(), example_embedding());
  CHECK(cf.k == 1);
  CHECK(cf.T == mat({{1, 0}, {0, 1}}));
  CHECK(cf.A11 == mat({{-1}}));
  CHECK(cf.A12 == mat({{0}}));
  CHECK(cf.A22 == mat({{-1}}));
  CHECK(cf.Bp == vec({1}));
  CHECK(cf.Gbar_p == vec({1}));
  CHECK(is_zero(cf.Dp));
  CHECK(cf.qp == poly(2, {{1, {0, 2}}}));  // (x2')^2
}

TEST_CASE("canonicalization undoes a shear of the mixing example") {
  // scramble x -> T0 x with a shear that drags the invariant axis
  const RatMatrix T0 = mat({{1, 0, 0}, {1, 1, 0}, {0, 0, 1}});
  const RatMatrix T0i = invert(T0);
  const ControlSystem base = mixing_system();
  const Embedding base_emb = mixing_embedding();

  const Blocks b = partition(base_emb);
  Blocks s;
  s.A = T0 * b.A * T0i;
  s.G = T0 * b.G;
  s.H = b.H * T0i;
  s.M = b.M;
  s.B = T0 * b.B;
  s.C = b.C;
  s.D = T0 * b.D;
  s.E = b.E;
  std::vector<Polynomial> ps;
  for (int j = 0; j < base_emb.m; ++j)
    ps.push_back(compose_affine(base_emb.p[j], T0i, RatVector(RatVector::Zero(3))));
  const Embedding emb = reassemble(3, 4, s, PolyVectorField(3, std::move(ps)));

  std::vector<Polynomial> fs;
  for (int i = 0; i < 3; ++i) {
    Polynomial fi(3);
    for (int j = 0; j < 3; ++j) fi.add_term(Monomial::variable(3, j), s.A(i, j));
    fi += s.G(i, 0) * emb.p[0];
    fs.push_back(std::move(fi));
  }
  const ControlSystem sys(3, PolyVectorField(3, std::move(fs)),
                          PolyVectorField::constant(3, s.B));
  REQUIRE(verify_embedding(sys, emb).sufficient_ok);

  const CanonicalForm cf = canonicalize(sys, emb);
  CHECK(cf.k == 1);
  // the invariant axis is T0 e1 = (1,1,0)
  CHECK(RatVector(cf.T.col(0)) == vec({1, 1, 0}));
  // exact zero blocks and a nonlinearity in the trailing variables only
  for (int j = 0; j < cf.k; ++j) CHECK(partial_derivative(cf.qp, j).is_zero());
  // mapping back through T recovers the scrambled observable exactly
  CHECK(compose_affine(cf.qp, cf.T_inv, RatVector(RatVector::Zero(3))) == emb.p[0]);
  CHECK(cf.qp.degree() == base_emb.p[0].degree());
}

TEST_CASE("a linear system canonicalizes to the full-space block") {
  const ControlSystem lin(2, PolyVectorField::linear(mat({{-1, 1}, {0, -2}})),
                          PolyVectorField::constant(2, vec({1, 0})));
  const Embedding emb(2, 0, mat({{-1, 1}, {0, -2}}), vec({1, 0}), vec({0, 0}),
                      PolyVectorField::zero(2, 0));
  const CanonicalForm cf = canonicalize(lin, emb);
  CHECK(cf.k == 2);
  CHECK(cf.T == mat({{1, 0}, {0, 1}}));
  CHECK(cf.A11 == mat({{-1, 1}, {0, -2}}));
  CHECK(cf.A12.cols() == 0);
  CHECK(cf.A22.rows() == 0);
  CHECK(cf.qp.is_zero());
}

TEST_CASE("canonicalization precondition failures") {
  // unbalanced: hidden cubic with visible quadratic
  {
    RatMatrix A_ell = RatMatrix::Zero(4, 4);
    A_ell.block(0, 0, 2, 2) = mat({{-1, 0}, {0, -1}});
    A_ell(0, 2) = Rational(1);
    A_ell(2, 2) = Rational(-2);
    A_ell(3, 3) = Rational(-3);
    const Embedding unb(2, 2, A_ell, RatVector(RatVector::Zero(4)),
                        RatVector(RatVector::Zero(4)),
                        PolyVectorField(2, {poly(2, {{1, {0, 2}}}), poly(2, {{1, {0, 3}}})}));
    ControlSystem sys(2,
                      PolyVectorField(2, {poly(2, {{-1, {1, 0}}, {1, {0, 2}}}),
                                          poly(2, {{-1, {0, 1}}})}),
                      PolyVectorField::zero(2, 2));
    REQUIRE(verify_embedding(sys, unb).sufficient_ok);
    CHECK_THROWS_AS(canonicalize(sys, unb), NotBalanced);
  }

  // closure failure is rejected up front
  {
    Embedding bad = example_embedding();
    bad.A_ell(2, 2) = Rational(-3);
    CHECK_THROWS_AS(canonicalize(example_system(), bad), Error);
  }
}

TEST_CASE("annihilation oracle on fixed examples") {
  const Polynomial y2 = poly(2, {{1, {0, 2}}});
  CHECK(annihilation_oracle(y2, y2, vec({1, 0})) == OracleVerdict::conclusion_holds);

  // phi = 2x y^2 has degree 3 > deg q = 2
  const Polynomial x2 = poly(2, {{1, {2, 0}}});
  CHECK(annihilation_oracle(x2, y2, vec({1, 0})) == OracleVerdict::hypothesis_not_met);

  CHECK(annihilation_oracle(Polynomial(2), y2, vec({0, 1})) == OracleVerdict::conclusion_holds);

  // constant or linear parts in psi leave the hypothesis
  CHECK(annihilation_oracle(poly(2, {{1, {0, 2}}, {1, {0, 0}}}), y2, vec({1, 0})) ==
        OracleVerdict::hypothesis_not_met);
  // the zero q carries no degree information
  CHECK(annihilation_oracle(y2, Polynomial(2), vec({0, 1})) == OracleVerdict::hypothesis_not_met);

  CHECK_THROWS_AS(annihilation_oracle(y2, poly(1, {{1, {2}}}), vec({1, 0})), DimensionMismatch);
}

TEST_CASE("annihilation oracle never reports a violation") {
  Rng rng(83);
  for (int i = 0; i < 150; ++i) {
    const int n = static_cast<int>(rng.uniform_int(1, 3));
    const Polynomial psi = random_reduced_polynomial(rng, n, 4, 4);
    const Polynomial q = random_polynomial(rng, n, 4, 3);
    RatVector gbar(n);
    for (int j = 0; j < n; ++j) gbar(j) = Rational(rng.uniform_int(-2, 2));
    CHECK(annihilation_oracle(psi, q, gbar) != OracleVerdict::violation);
  }
}

TEST_CASE("round trips over the generated family") {
  Rng rng(97);
  for (int i = 0; i < 10; ++i) {
    const GeneratedSystem gen = generate_random_balanced(
        rng.next(), static_cast<int>(rng.uniform_int(1, 2)),
        static_cast<int>(rng.uniform_int(1, 3)), static_cast<int>(rng.uniform_int(2, 3)));
    REQUIRE(verify_embedding(gen.system, gen.embedding).sufficient_ok);
    const Embedding norm = normalize_single_visible(gen.embedding);
    CHECK(krylov_annihilation_check(gen.system, norm).ok);

    const CanonicalForm cf = canonicalize(gen.system, norm);
    CHECK(cf.k >= gen.designed_k);
    for (int j = 0; j < cf.k; ++j) CHECK(partial_derivative(cf.qp, j).is_zero());

    // the designed leading subspace sits inside the recovered one
    const RatMatrix lead = cf.T.block(0, 0, norm.n, cf.k);
    for (int j = 0; j < gen.designed_k; ++j)
      CHECK(in_span(lead, RatVector(gen.scramble.col(j))));

    // krylov containment
    const Blocks b = partition(norm);
    RatMatrix vb(norm.n, 1), vg(norm.n, 1);
    vb.col(0) = b.B;
    vg.col(0) = b.G.col(0);
    const RatMatrix KB = krylov_span(b.A, vb);
    const RatMatrix KG = krylov_span(b.A, vg);
    for (Eigen::Index c = 0; c < KB.cols(); ++c) CHECK(in_span(lead, RatVector(KB.col(c))));
    for (Eigen::Index c = 0; c < KG.cols(); ++c) CHECK(in_span(lead, RatVector(KG.col(c))));
  }
}
