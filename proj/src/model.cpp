#include "superlin/model.hpp"

#include <algorithm>
#include <set>

namespace superlin {

namespace {

// A x + G p + D as a polynomial map over the n state variables.
PolyVectorField drift_field(const Blocks& b, const PolyVectorField& p, int n, int m) {
  std::vector<Polynomial> comps;
  comps.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Polynomial c(n);
    c.add_term(Monomial::unit(n), b.D(i));
    for (int j = 0; j < n; ++j) c.add_term(Monomial::variable(n, j), b.A(i, j));
    for (int l = 0; l < m; ++l) c += b.G(i, l) * p[l];
    comps.push_back(std::move(c));
  }
  return PolyVectorField(n, std::move(comps));
}

// H x + M p + E, one polynomial per observable row.
std::vector<Polynomial> lifted_rows(const Blocks& b, const PolyVectorField& p, int n, int m) {
  std::vector<Polynomial> rows;
  rows.reserve(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    Polynomial r(n);
    r.add_term(Monomial::unit(n), b.E(j));
    for (int i = 0; i < n; ++i) r.add_term(Monomial::variable(n, i), b.H(j, i));
    for (int l = 0; l < m; ++l) r += b.M(j, l) * p[l];
    rows.push_back(std::move(r));
  }
  return rows;
}

// coefficient-matrix rows of the given observables over their common
// monomial support, for the linear-independence test
RatMatrix coefficient_matrix(const PolyVectorField& p, const std::vector<int>& rows) {
  std::set<Monomial> support;
  for (int j : rows)
    for (const auto& [mono, coeff] : p[j].terms()) support.insert(mono);
  RatMatrix M = RatMatrix::Zero(static_cast<Eigen::Index>(rows.size()),
                                static_cast<Eigen::Index>(support.size()));
  Eigen::Index col = 0;
  for (const Monomial& mono : support) {
    for (size_t r = 0; r < rows.size(); ++r)
      M(static_cast<Eigen::Index>(r), col) = p[rows[r]].coefficient(mono);
    ++col;
  }
  return M;
}

}  // namespace

ControlSystem::ControlSystem(int n_, PolyVectorField f_, PolyVectorField g_)
    : n(n_), f(std::move(f_)), g(std::move(g_)) {
  if (f.n_vars() != n || f.size() != n || g.n_vars() != n || g.size() != n)
    throw DimensionMismatch("control system fields must have n components over n variables");
}

RatVector ControlSystem::f_at_origin() const {
  return f.eval(RatVector(RatVector::Zero(n)));
}

Embedding::Embedding(int n_, int m_, RatMatrix A_ell_, RatVector B_ell_, RatVector D_ell_,
                     PolyVectorField p_)
    : n(n_), m(m_), A_ell(std::move(A_ell_)), B_ell(std::move(B_ell_)),
      D_ell(std::move(D_ell_)), p(std::move(p_)) {
  if (n < 1 || m < 0) throw DimensionMismatch("embedding needs n >= 1, m >= 0");
  const int nm = n + m;
  if (A_ell.rows() != nm || A_ell.cols() != nm || B_ell.size() != nm || D_ell.size() != nm)
    throw DimensionMismatch("lifted system blocks have inconsistent shapes");
  if (p.n_vars() != n || p.size() != m)
    throw DimensionMismatch("observable map must have m components over n variables");
}

Blocks partition(const Embedding& emb) {
  const int n = emb.n;
  const int m = emb.m;
  Blocks b;
  b.A = emb.A_ell.block(0, 0, n, n);
  b.G = emb.A_ell.block(0, n, n, m);
  b.H = emb.A_ell.block(n, 0, m, n);
  b.M = emb.A_ell.block(n, n, m, m);
  b.B = emb.B_ell.head(n);
  b.C = emb.B_ell.tail(m);
  b.D = emb.D_ell.head(n);
  b.E = emb.D_ell.tail(m);
  return b;
}

Embedding reassemble(int n, int m, const Blocks& blocks, const PolyVectorField& p) {
  RatMatrix A_ell(n + m, n + m);
  A_ell.block(0, 0, n, n) = blocks.A;
  A_ell.block(0, n, n, m) = blocks.G;
  A_ell.block(n, 0, m, n) = blocks.H;
  A_ell.block(n, n, m, m) = blocks.M;
  RatVector B_ell(n + m), D_ell(n + m);
  B_ell.head(n) = blocks.B;
  B_ell.tail(m) = blocks.C;
  D_ell.head(n) = blocks.D;
  D_ell.tail(m) = blocks.E;
  return Embedding(n, m, std::move(A_ell), std::move(B_ell), std::move(D_ell), p);
}

bool check_system_form(const ControlSystem& sys, const Embedding& emb) {
  if (sys.n != emb.n) throw DimensionMismatch("system and embedding dimension differ");
  const Blocks b = partition(emb);
  const PolyVectorField drift = drift_field(b, emb.p, emb.n, emb.m);
  for (int i = 0; i < emb.n; ++i) {
    if (!(sys.f[i] - drift[i]).is_zero()) return false;
    if (!(sys.g[i] - Polynomial::constant(emb.n, b.B(i))).is_zero()) return false;
  }
  return true;
}

VerificationReport verify_embedding(const ControlSystem& sys, const Embedding& emb) {
  if (sys.n != emb.n) throw DimensionMismatch("system and embedding dimension differ");
  const int n = emb.n;
  const int m = emb.m;
  const Blocks b = partition(emb);

  VerificationReport rep;
  rep.system_form_ok = true;
  rep.necessary_ok = true;
  rep.sufficient_ok = true;

  const PolyVectorField drift = drift_field(b, emb.p, n, m);
  for (int i = 0; i < n; ++i) {
    Polynomial rf = sys.f[i] - drift[i];
    if (!rf.is_zero()) {
      rep.system_form_ok = false;
      rep.failures.push_back({"state equation, component " + std::to_string(i + 1), std::move(rf)});
    }
    Polynomial rg = sys.g[i] - Polynomial::constant(n, b.B(i));
    if (!rg.is_zero()) {
      rep.system_form_ok = false;
      rep.failures.push_back({"control field, component " + std::to_string(i + 1), std::move(rg)});
    }
  }

  // closure residuals: (dp/dx) drift - (H x + M p + E) and (dp/dx) B - C
  const auto J = jacobian(emb.p);
  const auto rows = lifted_rows(b, emb.p, n, m);
  std::vector<Polynomial> closure, control;
  closure.reserve(static_cast<size_t>(m));
  control.reserve(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    Polynomial lhs(n);
    Polynomial lhs_u(n);
    for (int i = 0; i < n; ++i) {
      lhs += J[static_cast<size_t>(j)][static_cast<size_t>(i)] * drift[i];
      lhs_u += b.B(i) * J[static_cast<size_t>(j)][static_cast<size_t>(i)];
    }
    Polynomial rc = lhs - rows[static_cast<size_t>(j)];
    Polynomial ru = lhs_u - Polynomial::constant(n, b.C(j));
    if (!rc.is_zero()) {
      rep.sufficient_ok = false;
      rep.failures.push_back(
          {"observable derivative, row " + std::to_string(j + 1), rc});
    }
    if (!ru.is_zero()) {
      rep.sufficient_ok = false;
      rep.failures.push_back(
          {"observable control derivative, row " + std::to_string(j + 1), ru});
    }
    closure.push_back(std::move(rc));
    control.push_back(std::move(ru));
  }

  for (int i = 0; i < n; ++i) {
    Polynomial proj(n), proj_u(n);
    for (int j = 0; j < m; ++j) {
      proj += b.G(i, j) * closure[static_cast<size_t>(j)];
      proj_u += b.G(i, j) * control[static_cast<size_t>(j)];
    }
    if (!proj.is_zero()) {
      rep.necessary_ok = false;
      rep.failures.push_back(
          {"projected derivative identity, state " + std::to_string(i + 1), std::move(proj)});
    }
    if (!proj_u.is_zero()) {
      rep.necessary_ok = false;
      rep.failures.push_back(
          {"projected control identity, state " + std::to_string(i + 1), std::move(proj_u)});
    }
  }
  return rep;
}

ObservableClassification classify_observables(const Embedding& emb) {
  const Blocks b = partition(emb);
  ObservableClassification out;
  for (int j = 0; j < emb.m; ++j) {
    if (is_zero(RatVector(b.G.col(j))))
      out.hidden.push_back(j);
    else
      out.visible.push_back(j);
  }
  out.g_rank = emb.m == 0 ? 0 : rank(b.G);
  if (out.g_rank == 1) {
    const int j0 = out.visible.front();
    RatVector col = b.G.col(j0);
    Rational lead(0);
    for (Eigen::Index i = 0; i < col.size(); ++i)
      if (!col(i).is_zero()) {
        lead = col(i);
        break;
      }
    out.gbar = RatVector(col.size());
    for (Eigen::Index i = 0; i < col.size(); ++i) out.gbar(i) = col(i) / lead;
  }
  return out;
}

ReducedFormCheck is_reduced_visible_form(const Embedding& emb) {
  ReducedFormCheck check;
  check.ok = true;
  for (int j = 0; j < emb.m; ++j) {
    if (!homogeneous_part(emb.p[j], 0).is_zero()) {
      check.ok = false;
      check.diagnostics.push_back("constant term in observable " + std::to_string(j + 1));
    }
    if (!homogeneous_part(emb.p[j], 1).is_zero()) {
      check.ok = false;
      check.diagnostics.push_back("linear term in observable " + std::to_string(j + 1));
    }
  }
  const ObservableClassification cls = classify_observables(emb);
  if (!cls.visible.empty()) {
    const RatMatrix coeffs = coefficient_matrix(emb.p, cls.visible);
    if (rank(coeffs) != static_cast<int>(cls.visible.size())) {
      check.ok = false;
      check.diagnostics.push_back("dependent visible observables");
    }
  }
  return check;
}

Embedding reduce_observables(const Embedding& emb) {
  const int n = emb.n;
  const int m = emb.m;
  Blocks b = partition(emb);

  // p_j = c_j + l_j^T x + ptilde_j
  RatVector c(m);
  RatMatrix L = RatMatrix::Zero(m, n);
  std::vector<Polynomial> stripped;
  stripped.reserve(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    const Polynomial& pj = emb.p[j];
    c(j) = evaluate(homogeneous_part(pj, 0), RatVector(RatVector::Zero(n)));
    const Polynomial lin = homogeneous_part(pj, 1);
    for (int i = 0; i < n; ++i) L(j, i) = lin.coefficient(Monomial::variable(n, i));
    stripped.push_back(pj - homogeneous_part(pj, 0) - lin);
  }
  const PolyVectorField ptilde(n, std::move(stripped));

  // state rows absorb the shift: xdot = (A + G L) x + G ptilde + (D + G c)
  Blocks nb;
  nb.G = b.G;
  nb.B = b.B;
  nb.A = b.A + b.G * L;
  nb.D = b.D + b.G * c;
  // observable rows follow from d/dt ptilde = d/dt p - L xdot
  nb.M = b.M - L * b.G;
  nb.H = b.H + b.M * L - L * nb.A;
  nb.E = b.E + b.M * c - L * nb.D;
  nb.C = b.C - L * b.B;

  Embedding out = reassemble(n, m, nb, ptilde);

  const ObservableClassification cls = classify_observables(out);
  if (!cls.visible.empty()) {
    const RatMatrix coeffs = coefficient_matrix(out.p, cls.visible);
    if (rank(coeffs) != static_cast<int>(cls.visible.size()))
      throw UnsupportedReduction(
          "visible observables are linearly dependent after stripping; merging them is unsupported");
  }
  return out;
}

bool is_balanced(const Embedding& emb) {
  const ObservableClassification cls = classify_observables(emb);
  if (cls.hidden.empty()) return true;
  int max_hidden = Polynomial::kNegInfinity;
  for (int j : cls.hidden) max_hidden = std::max(max_hidden, emb.p[j].degree());
  // min over an empty visible set never constrains
  for (int j : cls.visible)
    if (max_hidden > emb.p[j].degree()) return false;
  return true;
}

bool is_single_visible_normalized(const Embedding& emb) {
  if (emb.m == 0) return false;
  const Blocks b = partition(emb);
  if (is_zero(RatVector(b.G.col(0)))) return false;
  for (int j = 1; j < emb.m; ++j)
    if (!is_zero(RatVector(b.G.col(j)))) return false;
  return true;
}

Embedding normalize_single_visible(const Embedding& emb) {
  const ObservableClassification cls = classify_observables(emb);
  if (cls.g_rank != 1)
    throw NotSingleVisible("normalization requires rank-1 G, got rank " +
                           std::to_string(cls.g_rank));
  const int n = emb.n;
  const int m = emb.m;
  Blocks b = partition(emb);

  // rank-1 factorization G = gbar c^T against the first nonzero column,
  // taken as is; its own factor is 1, so a lone visible observable moves
  // to the front unscaled
  const int j0 = cls.visible.front();
  const RatVector gbar = b.G.col(j0);
  int pivot_row = -1;
  for (Eigen::Index i = 0; i < n && pivot_row < 0; ++i)
    if (!gbar(i).is_zero()) pivot_row = static_cast<int>(i);
  RatVector c(m);
  for (int j = 0; j < m; ++j) c(j) = b.G(pivot_row, j) / gbar(pivot_row);

  // new observable basis: z2' = S z2 with first row c^T
  std::vector<RatVector> first = {c};
  const RatMatrix S = extend_basis(first, m).transpose();
  const RatMatrix S_inv = invert(S);

  std::vector<Polynomial> new_obs;
  new_obs.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    Polynomial q(n);
    for (int j = 0; j < m; ++j) q += S(i, j) * emb.p[j];
    new_obs.push_back(std::move(q));
  }

  Blocks nb;
  nb.A = b.A;
  nb.B = b.B;
  nb.D = b.D;
  nb.G = b.G * S_inv;
  nb.H = S * b.H;
  nb.M = S * b.M * S_inv;
  nb.C = S * b.C;
  nb.E = S * b.E;
  return reassemble(n, m, nb, PolyVectorField(n, std::move(new_obs)));
}

}  // namespace superlin
