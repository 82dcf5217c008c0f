#include "superlin/canonical.hpp"

#include <map>

namespace superlin {

namespace {

// G dp/dx as an n x n polynomial matrix, flattened into one coefficient
// matrix per monomial.
std::map<Monomial, RatMatrix> coupling_coefficients(const Embedding& emb) {
  const int n = emb.n;
  const Blocks b = partition(emb);
  const auto J = jacobian(emb.p);

  std::map<Monomial, RatMatrix> coeffs;
  for (int i = 0; i < n; ++i) {
    for (int col = 0; col < n; ++col) {
      Polynomial entry(n);
      for (int j = 0; j < emb.m; ++j)
        entry += b.G(i, j) * J[static_cast<size_t>(j)][static_cast<size_t>(col)];
      for (const auto& [mono, c] : entry.terms()) {
        auto [it, inserted] = coeffs.try_emplace(mono, RatMatrix::Zero(n, n));
        it->second(i, col) = c;
      }
    }
  }
  return coeffs;
}

Polynomial visible_observable(const Embedding& emb) {
  if (!is_single_visible_normalized(emb))
    throw NotSingleVisible("embedding is not in single-visible normalized form");
  return emb.p[0];
}

}  // namespace

KrylovCheck krylov_annihilation_check(const ControlSystem& sys, const Embedding& emb) {
  if (sys.n != emb.n) throw DimensionMismatch("system and embedding dimension differ");
  const Polynomial q = visible_observable(emb);
  const Blocks b = partition(emb);
  const RatVector gbar = b.G.col(0);

  std::vector<Polynomial> dq;
  dq.reserve(static_cast<size_t>(emb.n));
  for (int j = 0; j < emb.n; ++j) dq.push_back(partial_derivative(q, j));

  auto scan = [&](const RatMatrix& span) -> KrylovCheck {
    for (Eigen::Index c = 0; c < span.cols(); ++c) {
      Polynomial r(emb.n);
      for (int j = 0; j < emb.n; ++j) r += span(j, c) * dq[static_cast<size_t>(j)];
      if (!r.is_zero()) return {false, RatVector(span.col(c)), std::move(r)};
    }
    return {true, std::nullopt, std::nullopt};
  };

  RatMatrix vb(emb.n, 1);
  vb.col(0) = b.B;
  KrylovCheck rb = scan(krylov_span(b.A, vb));
  if (!rb.ok) return rb;
  RatMatrix vg(emb.n, 1);
  vg.col(0) = gbar;
  return scan(krylov_span(b.A, vg));
}

std::vector<RatVector> compute_invariant_subspace(const Embedding& emb) {
  const int n = emb.n;
  const auto coeffs = coupling_coefficients(emb);

  // K = { v : G (dp/dx)|_x v = 0 for all x }, read off the coefficient
  // matrices of the polynomial entries
  RatMatrix stack(static_cast<Eigen::Index>(coeffs.size()) * n, n);
  Eigen::Index row = 0;
  for (const auto& [mono, M] : coeffs) {
    stack.block(row, 0, n, n) = M;
    row += n;
  }
  std::vector<RatVector> basis = rref_nullspace(stack);

  // Shrink K to its largest A-invariant subspace: iterate
  // V <- V intersect A^{-1} V until the dimension stabilizes. The change
  // of basis needs invariance, not just membership in K: the leading
  // columns of T must stay inside V under A for the lower-left block of
  // T^{-1} A T to vanish.
  const RatMatrix A = partition(emb).A;
  while (!basis.empty()) {
    const RatMatrix V = columns_to_matrix(basis, n);
    // rows annihilating span(V); empty means V = R^n, trivially invariant
    const std::vector<RatVector> ann = rref_nullspace(RatMatrix(V.transpose()));
    if (ann.empty()) break;
    RatMatrix W(static_cast<Eigen::Index>(ann.size()) * 2, n);
    for (size_t i = 0; i < ann.size(); ++i) {
      W.row(static_cast<Eigen::Index>(i)) = ann[i].transpose();
      W.row(static_cast<Eigen::Index>(ann.size() + i)) = ann[i].transpose() * A;
    }
    std::vector<RatVector> next = rref_nullspace(W);
    if (next.size() == basis.size()) break;  // fixed point: A V in V
    basis = std::move(next);
  }
  return basis;
}

CanonicalForm canonicalize(const ControlSystem& sys, const Embedding& emb) {
  const int n = emb.n;
  const Blocks b = partition(emb);
  const bool coupled = !is_zero(b.G);

  const VerificationReport rep = verify_embedding(sys, emb);
  if (!rep.sufficient_ok)
    throw Error("canonicalize requires an embedding whose closure identities hold");
  if (!is_balanced(emb)) throw NotBalanced("embedding is not balanced");

  Polynomial q(n);
  RatVector gbar = RatVector::Zero(n);
  if (coupled) {
    q = visible_observable(emb);  // throws NotSingleVisible otherwise
    gbar = b.G.col(0);
  }

  const std::vector<RatVector> V = compute_invariant_subspace(emb);
  const int k = static_cast<int>(V.size());
  if (k == 0)
    throw BlockStructureViolation("invariant subspace is trivial; no canonical split exists");

  CanonicalForm cf;
  cf.T = extend_basis(V, n);
  cf.T_inv = invert(cf.T);
  cf.k = k;

  const RatMatrix Ap = cf.T_inv * b.A * cf.T;
  const RatVector Bp = cf.T_inv * b.B;
  const RatVector Gp = cf.T_inv * gbar;
  cf.Dp = cf.T_inv * b.D;
  cf.qp = compose_affine(q, cf.T, RatVector(RatVector::Zero(n)));

  // exact structure checks; these hold whenever the preconditions do
  if (!is_zero(RatMatrix(Ap.block(k, 0, n - k, k))))
    throw BlockStructureViolation("lower-left block of the transformed A is nonzero");
  if (!is_zero(RatVector(Bp.tail(n - k))))
    throw BlockStructureViolation("transformed B leaks into the autonomous block");
  if (!is_zero(RatVector(Gp.tail(n - k))))
    throw BlockStructureViolation("transformed gbar leaks into the autonomous block");
  for (int j = 0; j < k; ++j)
    if (!partial_derivative(cf.qp, j).is_zero())
      throw BlockStructureViolation("transformed observable depends on a leading coordinate");

  cf.A11 = Ap.block(0, 0, k, k);
  cf.A12 = Ap.block(0, k, k, n - k);
  cf.A22 = Ap.block(k, k, n - k, n - k);
  cf.Bp = Bp.head(k);
  cf.Gbar_p = Gp.head(k);
  return cf;
}

OracleVerdict annihilation_oracle(const Polynomial& psi, const Polynomial& q,
                                  const RatVector& gbar) {
  if (psi.n_vars() != q.n_vars() || gbar.size() != psi.n_vars())
    throw DimensionMismatch("oracle arguments over different spaces");
  const int n = psi.n_vars();

  if (!homogeneous_part(psi, 0).is_zero() || !homogeneous_part(psi, 1).is_zero())
    return OracleVerdict::hypothesis_not_met;
  // q must be a genuine polynomial of some degree; the zero polynomial
  // carries no degree information and proves nothing
  if (q.is_zero()) return OracleVerdict::hypothesis_not_met;

  Polynomial lie_gbar(n);
  for (int j = 0; j < n; ++j) lie_gbar += gbar(j) * partial_derivative(psi, j);
  const Polynomial phi = q * lie_gbar;  // L_{gbar q} psi

  if (!phi.is_zero() && phi.degree() > q.degree())
    return OracleVerdict::hypothesis_not_met;

  if (lie_gbar.is_zero() && phi.is_zero()) return OracleVerdict::conclusion_holds;
  return OracleVerdict::violation;
}

}  // namespace superlin
