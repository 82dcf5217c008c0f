#include "superlin/discovery.hpp"

#include <algorithm>
#include <set>

#include "superlin/random.hpp"

namespace superlin {

namespace {

bool is_constant_field(const PolyVectorField& g) {
  for (int i = 0; i < g.size(); ++i)
    if (g[i].degree() > 0) return false;
  return true;
}

// all monomials over vars [first, first+count) of total degree exactly deg,
// in graded-lex order
void enumerate_monomials(int n_vars, int first, int count, int deg,
                         std::vector<std::uint32_t>& current,
                         std::vector<Monomial>& out) {
  if (count == 1) {
    current[static_cast<size_t>(first)] = static_cast<std::uint32_t>(deg);
    out.emplace_back(current);
    current[static_cast<size_t>(first)] = 0;
    return;
  }
  for (int e = 0; e <= deg; ++e) {
    current[static_cast<size_t>(first)] = static_cast<std::uint32_t>(e);
    enumerate_monomials(n_vars, first + 1, count - 1, deg - e, current, out);
  }
  current[static_cast<size_t>(first)] = 0;
}

std::vector<Monomial> monomials_of_degree(int n_vars, int first, int count, int deg) {
  std::vector<std::uint32_t> current(static_cast<size_t>(n_vars), 0);
  std::vector<Monomial> out;
  enumerate_monomials(n_vars, first, count, deg, current, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

DiscoveryResult discover_embedding(const ControlSystem& sys, const DiscoveryConfig& cfg) {
  if (cfg.max_degree < 2 || cfg.max_observables < 1)
    throw DimensionMismatch("discovery bounds must be positive (max_degree >= 2)");
  if (!is_constant_field(sys.g))
    throw UnsupportedControlField("discovery requires a constant control field");

  const int n = sys.n;
  const RatVector B = sys.g.eval(RatVector(RatVector::Zero(n)));
  const PolyVectorField Bfield = PolyVectorField::constant(n, B);

  // observable set, insertion-ordered, seeded by the nonlinear part of f
  std::vector<Monomial> obs;
  std::set<Monomial> known;
  auto add = [&](const Monomial& m) {
    if (known.insert(m).second) obs.push_back(m);
  };
  for (int i = 0; i < n; ++i)
    for (const auto& [mono, c] : sys.f[i].terms())
      if (mono.degree() >= 2) add(mono);

  // grow until every Lie derivative is affine over (x, obs, 1)
  size_t processed = 0;
  std::vector<Polynomial> lie_f, lie_b;
  std::vector<Monomial> stalled;
  while (processed < obs.size()) {
    // bound checks on the still-open tail
    std::vector<Monomial> over;
    for (size_t i = processed; i < obs.size(); ++i)
      if (obs[i].degree() > cfg.max_degree) over.push_back(obs[i]);
    if (!over.empty()) return {std::nullopt, std::move(over)};
    if (static_cast<int>(obs.size()) > cfg.max_observables)
      return {std::nullopt, std::vector<Monomial>(obs.begin() + static_cast<long>(processed), obs.end())};

    const Monomial w = obs[processed];
    const Polynomial pw = Polynomial::term(w, Rational(1));
    lie_f.push_back(lie_derivative(sys.f, pw));
    lie_b.push_back(lie_derivative(Bfield, pw));
    for (const auto& [mono, c] : lie_f.back().terms())
      if (mono.degree() >= 2) add(mono);
    bool obstructed = false;
    for (const auto& [mono, c] : lie_b.back().terms()) {
      if (mono.degree() >= 2) add(mono);
      // a degree-1 monomial in L_B w can never be matched by the constant
      // control column of the lifted system
      obstructed = obstructed || mono.degree() == 1;
    }
    if (obstructed) stalled.push_back(w);
    ++processed;
  }
  if (!stalled.empty()) return {std::nullopt, std::move(stalled)};

  const int m = static_cast<int>(obs.size());

  // read the blocks off the closed set
  Blocks b;
  b.A = RatMatrix::Zero(n, n);
  b.G = RatMatrix::Zero(n, m);
  b.D = RatVector::Zero(n);
  b.B = B;
  b.H = RatMatrix::Zero(m, n);
  b.M = RatMatrix::Zero(m, m);
  b.C = RatVector::Zero(m);
  b.E = RatVector::Zero(m);

  std::map<Monomial, int> index;
  for (int l = 0; l < m; ++l) index.emplace(obs[static_cast<size_t>(l)], l);

  for (int i = 0; i < n; ++i) {
    for (const auto& [mono, c] : sys.f[i].terms()) {
      const int d = mono.degree();
      if (d == 0) {
        b.D(i) = c;
      } else if (d == 1) {
        for (int j = 0; j < n; ++j)
          if (mono[j] == 1) b.A(i, j) = c;
      } else {
        b.G(i, index.at(mono)) = c;
      }
    }
  }
  for (int l = 0; l < m; ++l) {
    for (const auto& [mono, c] : lie_f[static_cast<size_t>(l)].terms()) {
      const int d = mono.degree();
      if (d == 0) {
        b.E(l) = c;
      } else if (d == 1) {
        for (int j = 0; j < n; ++j)
          if (mono[j] == 1) b.H(l, j) = c;
      } else {
        b.M(l, index.at(mono)) = c;
      }
    }
    const Polynomial& cb = lie_b[static_cast<size_t>(l)];
    if (cb.degree() > 0)
      throw Error("internal: control derivative not constant after closure");
    b.C(l) = cb.coefficient(Monomial::unit(n));
  }

  std::vector<Polynomial> p_comps;
  p_comps.reserve(static_cast<size_t>(m));
  for (const Monomial& w : obs) p_comps.push_back(Polynomial::term(w, Rational(1)));
  Embedding emb = reassemble(n, m, b, PolyVectorField(n, std::move(p_comps)));

  const VerificationReport rep = verify_embedding(sys, emb);
  if (!rep.sufficient_ok || !rep.system_form_ok)
    throw Error("internal: discovered embedding failed re-verification");

  if (cfg.require_balanced && !is_balanced(emb)) {
    const ObservableClassification cls = classify_observables(emb);
    int min_visible = cfg.max_degree + 1;
    for (int j : cls.visible) min_visible = std::min(min_visible, emb.p[j].degree());
    std::vector<Monomial> over;
    for (int j : cls.hidden)
      if (emb.p[j].degree() > min_visible) over.push_back(obs[static_cast<size_t>(j)]);
    return {std::nullopt, std::move(over)};
  }
  return {std::move(emb), {}};
}

GeneratedSystem generate_random_balanced(std::uint64_t seed, int k, int n2, int deg) {
  if (k < 1 || n2 < 1 || deg < 2)
    throw DimensionMismatch("generator needs k >= 1, n2 >= 1, deg >= 2");
  Rng rng(seed);
  const int n = k + n2;

  auto draw = [&]() { return Rational(rng.uniform_int(-2, 2)); };

  RatMatrix A = RatMatrix::Zero(n, n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = draw();  // A11 and A12 rows
  for (int i = k; i < n; ++i)
    for (int j = k; j < n; ++j) A(i, j) = draw();  // A22; lower-left stays 0

  RatVector B = RatVector::Zero(n);
  for (int i = 0; i < k; ++i) B(i) = draw();

  RatVector gbar = RatVector::Zero(n);
  bool nz = false;
  while (!nz) {
    for (int i = 0; i < k; ++i) {
      gbar(i) = draw();
      nz = nz || !gbar(i).is_zero();
    }
  }

  // observables: every monomial of total degree deg over the trailing block
  const std::vector<Monomial> mons = monomials_of_degree(n, k, n2, deg);
  const int m = static_cast<int>(mons.size());

  RatVector c(m);
  nz = false;
  while (!nz) {
    for (int j = 0; j < m; ++j) {
      c(j) = draw();
      nz = nz || !c(j).is_zero();
    }
  }
  Polynomial q(n);
  for (int j = 0; j < m; ++j) q.add_term(mons[static_cast<size_t>(j)], c(j));

  // trailing block is linear and autonomous, so the derivative of each
  // monomial observable is again homogeneous of the same degree over the
  // trailing variables
  RatMatrix M = RatMatrix::Zero(m, m);
  std::map<Monomial, int> index;
  for (int j = 0; j < m; ++j) index.emplace(mons[static_cast<size_t>(j)], j);
  const PolyVectorField linear_part = PolyVectorField::linear(A);
  for (int j = 0; j < m; ++j) {
    const Polynomial dw =
        lie_derivative(linear_part, Polynomial::term(mons[static_cast<size_t>(j)], Rational(1)));
    for (const auto& [mono, coeff] : dw.terms()) M(j, index.at(mono)) = coeff;
  }

  Blocks base;
  base.A = A;
  base.G = gbar * c.transpose();
  base.H = RatMatrix::Zero(m, n);
  base.M = M;
  base.B = B;
  base.C = RatVector::Zero(m);
  base.D = RatVector::Zero(n);
  base.E = RatVector::Zero(m);

  std::vector<Polynomial> p_comps;
  p_comps.reserve(static_cast<size_t>(m));
  for (const Monomial& w : mons) p_comps.push_back(Polynomial::term(w, Rational(1)));
  const PolyVectorField p_base(n, p_comps);

  std::vector<Polynomial> f_comps;
  f_comps.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Polynomial fi(n);
    for (int j = 0; j < n; ++j) fi.add_term(Monomial::variable(n, j), A(i, j));
    fi += gbar(i) * q;
    f_comps.push_back(std::move(fi));
  }
  ControlSystem base_sys(n, PolyVectorField(n, std::move(f_comps)),
                         PolyVectorField::constant(n, B));
  Embedding base_emb = reassemble(n, m, base, p_base);

  // unimodular scramble from integer shears
  RatMatrix T0 = RatMatrix::Identity(n, n);
  if (n > 1) {
    for (int s = 0; s < 2 * n; ++s) {
      const int i = static_cast<int>(rng.uniform_int(0, n - 1));
      int j = static_cast<int>(rng.uniform_int(0, n - 2));
      if (j >= i) ++j;
      const Rational cshear(rng.uniform_int(0, 1) == 0 ? -1 : 1);
      T0.row(i) += cshear * T0.row(j);
    }
  }
  const RatMatrix T0_inv = invert(T0);

  Blocks scr;
  scr.A = T0 * A * T0_inv;
  scr.G = (T0 * gbar) * c.transpose();
  scr.H = RatMatrix::Zero(m, n);
  scr.M = M;
  scr.B = T0 * B;
  scr.C = RatVector::Zero(m);
  scr.D = RatVector::Zero(n);
  scr.E = RatVector::Zero(m);

  std::vector<Polynomial> ps_comps;
  ps_comps.reserve(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j)
    ps_comps.push_back(compose_affine(p_base[j], T0_inv, RatVector(RatVector::Zero(n))));
  const PolyVectorField p_scr(n, std::move(ps_comps));

  const RatVector gbar_s = T0 * gbar;
  Polynomial q_s = compose_affine(q, T0_inv, RatVector(RatVector::Zero(n)));
  std::vector<Polynomial> fs_comps;
  fs_comps.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Polynomial fi(n);
    for (int j = 0; j < n; ++j) fi.add_term(Monomial::variable(n, j), scr.A(i, j));
    fi += gbar_s(i) * q_s;
    fs_comps.push_back(std::move(fi));
  }
  ControlSystem scr_sys(n, PolyVectorField(n, std::move(fs_comps)),
                        PolyVectorField::constant(n, RatVector(T0 * B)));
  Embedding scr_emb = reassemble(n, m, scr, p_scr);

  return GeneratedSystem(std::move(scr_sys), std::move(scr_emb), std::move(base_sys),
                         std::move(base_emb), T0, k, q);
}

}  // namespace superlin
