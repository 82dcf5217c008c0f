#pragma once

#include <optional>

#include "superlin/model.hpp"

namespace superlin {

// Output of canonicalize: a linear change of variables x = T x' under which
// the dynamics splits as
//
//   d/dt [x1'; x2'] = [A11 A12; 0 A22] [x1'; x2'] + [gbar' q'(x2'); 0]
//                     + u [B'; 0] + D'
//
// Only the first k coordinates see the nonlinearity and the control, and
// the nonlinearity q' depends only on the trailing n-k coordinates, whose
// dynamics is linear and autonomous. All block zeros hold exactly and are
// re-verified before a CanonicalForm is returned.
struct CanonicalForm {
  RatMatrix T;       // n x n, invertible; first k columns span V
  RatMatrix T_inv;
  int k = 0;         // dim V
  RatMatrix A11;     // k x k
  RatMatrix A12;     // k x (n-k)
  RatMatrix A22;     // (n-k) x (n-k)
  RatVector Bp;      // upper block of T^-1 B
  RatVector Gbar_p;  // upper block of T^-1 gbar
  RatVector Dp;      // T^-1 D, full length (no block claim when D != 0)
  Polynomial qp;     // visible observable in x' variables, depends only on x2'

  CanonicalForm() : qp(0) {}
};

struct KrylovCheck {
  bool ok = false;
  // first offending direction and the nonzero polynomial dq/dx * v
  std::optional<RatVector> witness;
  std::optional<Polynomial> residual;
};

// Checks that the visible observable is annihilated by both Krylov spans:
// dq/dx * v == 0 (exact polynomial zero) for every column v of
// krylov_span(A, B) and krylov_span(A, gbar). Requires the embedding in
// single-visible normalized form.
KrylovCheck krylov_annihilation_check(const ControlSystem& sys, const Embedding& emb);

// Basis of the largest A-invariant subspace V with G (dp/dx)|_x V = 0 for
// all x. Membership in the kernel is linear in v, so stacking the
// coefficient matrices of the polynomial matrix G dp/dx over its monomials
// and taking the kernel realizes the pointwise condition exactly, with no
// sampling or genericity argument; the standard recursion
// V <- V intersect A^{-1} V then yields the largest A-invariant subspace
// inside it. Both Krylov spans live in V, so V is nontrivial for every
// verified balanced single-visible embedding.
std::vector<RatVector> compute_invariant_subspace(const Embedding& emb);

// The change of variables itself. Preconditions: the closure identities
// hold (verify_embedding(...).sufficient_ok), the embedding is balanced,
// and either G == 0 (the lifted coupling vanishes and the whole state is
// V) or the embedding is in single-visible normalized form. Throws
// NotBalanced / NotSingleVisible on the stated preconditions and
// BlockStructureViolation if any exact invariant of the result fails.
CanonicalForm canonicalize(const ControlSystem& sys, const Embedding& emb);

enum class OracleVerdict {
  hypothesis_not_met,
  conclusion_holds,
  violation,
};

// Brute-force oracle for the degree argument behind the canonical form:
// with psi free of constant and linear parts, q a nonzero polynomial and
// phi := L_{gbar q} psi of degree at most deg q, both L_gbar psi and phi
// must vanish identically. A `violation` verdict would falsify that
// statement and must never occur.
OracleVerdict annihilation_oracle(const Polynomial& psi, const Polynomial& q,
                            const RatVector& gbar);

}  // namespace superlin
