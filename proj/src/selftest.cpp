#include "superlin/selftest.hpp"

#include "superlin/sim.hpp"

namespace superlin {

Polynomial random_polynomial(Rng& rng, int n_vars, int max_degree, int n_terms,
                             long long coeff_lo, long long coeff_hi) {
  Polynomial p(n_vars);
  for (int t = 0; t < n_terms; ++t) {
    std::vector<std::uint32_t> exps(static_cast<size_t>(n_vars), 0);
    int budget = static_cast<int>(rng.uniform_int(0, max_degree));
    for (int i = 0; i < n_vars && budget > 0; ++i) {
      const int e = static_cast<int>(rng.uniform_int(0, budget));
      exps[static_cast<size_t>(i)] = static_cast<std::uint32_t>(e);
      budget -= e;
    }
    p.add_term(Monomial(std::move(exps)), Rational(rng.uniform_int(coeff_lo, coeff_hi)));
  }
  return p;
}

PolyVectorField random_field(Rng& rng, int n_vars, int max_degree, int n_terms) {
  std::vector<Polynomial> comps;
  comps.reserve(static_cast<size_t>(n_vars));
  for (int i = 0; i < n_vars; ++i)
    comps.push_back(random_polynomial(rng, n_vars, max_degree, n_terms));
  return PolyVectorField(n_vars, std::move(comps));
}

RatMatrix random_matrix(Rng& rng, int rows, int cols, long long lo, long long hi) {
  RatMatrix M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = Rational(rng.uniform_int(lo, hi));
  return M;
}

RatMatrix random_unimodular(Rng& rng, int n) {
  RatMatrix T = RatMatrix::Identity(n, n);
  if (n < 2) return T;
  for (int s = 0; s < 2 * n; ++s) {
    const int i = static_cast<int>(rng.uniform_int(0, n - 1));
    int j = static_cast<int>(rng.uniform_int(0, n - 2));
    if (j >= i) ++j;
    const Rational c(rng.uniform_int(0, 1) == 0 ? -1 : 1);
    T.row(i) += c * T.row(j);
  }
  return T;
}

Polynomial random_reduced_polynomial(Rng& rng, int n_vars, int max_degree, int n_terms) {
  Polynomial p = random_polynomial(rng, n_vars, max_degree, n_terms);
  return p - homogeneous_part(p, 0) - homogeneous_part(p, 1);
}

namespace {

void run_case(SelftestSuite& suite, bool ok) {
  ++suite.total;
  if (ok) ++suite.passed;
}

SelftestSuite ring_axioms(Rng& rng) {
  SelftestSuite suite{"ring axioms"};
  for (int i = 0; i < 150; ++i) {
    const int n = static_cast<int>(rng.uniform_int(1, 3));
    const Polynomial a = random_polynomial(rng, n, 3, 4);
    const Polynomial b = random_polynomial(rng, n, 3, 4);
    const Polynomial c = random_polynomial(rng, n, 3, 4);
    bool ok = ((a + b) + c == a + (b + c));
    ok = ok && (a * b == b * a);
    ok = ok && ((a * b) * c == a * (b * c));
    ok = ok && (a * (b + c) == a * b + a * c);
    run_case(suite, ok);
  }
  return suite;
}

SelftestSuite derivative_identities(Rng& rng) {
  SelftestSuite suite{"derivative identities"};
  for (int i = 0; i < 100; ++i) {
    const int n = static_cast<int>(rng.uniform_int(1, 3));
    const int j = static_cast<int>(rng.uniform_int(0, n - 1));
    const Polynomial a = random_polynomial(rng, n, 3, 4);
    const Polynomial b = random_polynomial(rng, n, 3, 4);
    const Polynomial lhs = partial_derivative(a * b, j);
    const Polynomial rhs = a * partial_derivative(b, j) + b * partial_derivative(a, j);
    run_case(suite, lhs == rhs);
  }
  return suite;
}

SelftestSuite bracket_identities(Rng& rng) {
  SelftestSuite suite{"bracket identities"};
  for (int i = 0; i < 60; ++i) {
    const int n = static_cast<int>(rng.uniform_int(2, 3));
    const PolyVectorField f = random_field(rng, n, 2, 3);
    const PolyVectorField g = random_field(rng, n, 2, 3);
    const Polynomial p = random_polynomial(rng, n, 3, 4);
    const Polynomial lhs = lie_derivative(lie_bracket(f, g), p);
    const Polynomial rhs =
        lie_derivative(f, lie_derivative(g, p)) - lie_derivative(g, lie_derivative(f, p));
    run_case(suite, lhs == rhs);
  }
  return suite;
}

SelftestSuite oracle_sweep(Rng& rng) {
  SelftestSuite suite{"annihilation oracle sweep"};
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(rng.uniform_int(1, 3));
    const Polynomial psi = random_reduced_polynomial(rng, n, 4, 4);
    const Polynomial q = random_polynomial(rng, n, 4, 3);
    RatVector gbar(n);
    for (int j = 0; j < n; ++j) gbar(j) = Rational(rng.uniform_int(-2, 2));
    run_case(suite, annihilation_oracle(psi, q, gbar) != OracleVerdict::violation);
  }
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(rng.uniform_int(2, 3));
    const RatMatrix S = random_unimodular(rng, n);
    // psi depends only on directions complementary to gbar = first column
    Polynomial psi_tilde(n);
    {
      const Polynomial raw = random_reduced_polynomial(rng, n, 4, 4);
      for (const auto& [mono, c] : raw.terms())
        if (mono[0] == 0) psi_tilde.add_term(mono, c);
    }
    const Polynomial psi = compose_affine(psi_tilde, invert(S), RatVector(RatVector::Zero(n)));
    Polynomial q = random_polynomial(rng, n, 4, 3);
    if (q.is_zero()) q = Polynomial::constant(n, Rational(1));
    const RatVector gbar = S.col(0);
    run_case(suite, annihilation_oracle(psi, q, gbar) == OracleVerdict::conclusion_holds);
  }
  return suite;
}

SelftestSuite roundtrip_family(Rng& rng) {
  SelftestSuite suite{"round-trip canonicalization"};
  for (int i = 0; i < 24; ++i) {
    const int k = static_cast<int>(rng.uniform_int(1, 2));
    const int n2 = static_cast<int>(rng.uniform_int(1, 3));
    const int deg = static_cast<int>(rng.uniform_int(2, 3));
    const GeneratedSystem gen = generate_random_balanced(rng.next(), k, n2, deg);
    bool ok = verify_embedding(gen.system, gen.embedding).sufficient_ok;
    try {
      const Embedding norm = normalize_single_visible(gen.embedding);
      ok = ok && krylov_annihilation_check(gen.system, norm).ok;
      const CanonicalForm cf = canonicalize(gen.system, norm);
      ok = ok && cf.k >= gen.designed_k;
    } catch (const Error&) {
      ok = false;
    }
    run_case(suite, ok);
  }
  return suite;
}

SelftestSuite integrator_order(Rng& rng) {
  SelftestSuite suite{"integrator order"};
  (void)rng;
  // xdot = -x, closed form e^{-t}
  Polynomial fx(1);
  fx.add_term(Monomial::variable(1, 0), Rational(-1));
  ControlSystem sys(1, PolyVectorField(1, {fx}), PolyVectorField::zero(1, 1));
  Eigen::VectorXd x0(1);
  x0 << 1.0;
  const ControlSignal u = ControlSignal::zero(1.0);
  const auto field = system_field(sys);
  const double e1 =
      std::abs(integrate(field, x0, u, 1.0, 1e-2).states.back()(0) - std::exp(-1.0));
  const double e2 =
      std::abs(integrate(field, x0, u, 1.0, 5e-3).states.back()(0) - std::exp(-1.0));
  run_case(suite, e1 < 1e-8 && e2 > 0.0 && e1 / e2 > 8.0);
  return suite;
}

}  // namespace

std::vector<SelftestSuite> run_selftest(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SelftestSuite> suites;
  suites.push_back(ring_axioms(rng));
  suites.push_back(derivative_identities(rng));
  suites.push_back(bracket_identities(rng));
  suites.push_back(oracle_sweep(rng));
  suites.push_back(roundtrip_family(rng));
  suites.push_back(integrator_order(rng));
  return suites;
}

bool all_passed(const std::vector<SelftestSuite>& suites) {
  for (const SelftestSuite& s : suites)
    if (s.passed != s.total) return false;
  return true;
}

}  // namespace superlin
