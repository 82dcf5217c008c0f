#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superlin/linalg.hpp"
#include "superlin/vectorfield.hpp"

namespace superlin {

// Polynomial control system xdot = f(x) + u g(x) on R^n, scalar control.
struct ControlSystem {
  ControlSystem(int n_, PolyVectorField f_, PolyVectorField g_);

  int n;
  PolyVectorField f;
  PolyVectorField g;

  RatVector f_at_origin() const;
};

// Lifted affine system zdot = A_ell z + B_ell u + D_ell on R^{n+m}, together
// with the observable map p : R^n -> R^m gluing the two state spaces via
// z = (x, p(x)).
struct Embedding {
  Embedding(int n_, int m_, RatMatrix A_ell_, RatVector B_ell_, RatVector D_ell_,
            PolyVectorField p_);

  int n;
  int m;
  RatMatrix A_ell;   // (n+m) x (n+m)
  RatVector B_ell;   // n+m
  RatVector D_ell;   // n+m
  PolyVectorField p; // m components over n variables
};

// Block partition of the lifted data:
//   A_ell = [A G; H M],  B_ell = [B; C],  D_ell = [D; E]
// with A: n x n, G: n x m, H: m x n, M: m x m.
struct Blocks {
  RatMatrix A, G, H, M;
  RatVector B, C, D, E;
};

Blocks partition(const Embedding& emb);
Embedding reassemble(int n, int m, const Blocks& blocks, const PolyVectorField& p);

struct FailedIdentity {
  std::string identity;
  Polynomial residual;
};

// Outcome of the exact polynomial identity checks on an embedding.
//   system_form_ok : f == A x + G p + D and g == B
//   necessary_ok   : G-projected derivative identities
//                      G (dp/dx)(A x + G p + D) == G (H x + M p + E)
//                      G (dp/dx) B == G C
//   sufficient_ok  : the same identities without the G projection; this is
//                    the closure that actually propagates z2(t) = p(x(t)).
// sufficient_ok implies necessary_ok. Together with system_form_ok it
// certifies trajectory equivalence under the standard projection.
struct VerificationReport {
  bool system_form_ok = false;
  bool necessary_ok = false;
  bool sufficient_ok = false;
  std::vector<FailedIdentity> failures;
};

bool check_system_form(const ControlSystem& sys, const Embedding& emb);
VerificationReport verify_embedding(const ControlSystem& sys, const Embedding& emb);

// Observable j is visible when column j of G is nonzero: it feeds back into
// the dynamics of the original state. Indices are 0-based.
struct ObservableClassification {
  std::vector<int> visible;
  std::vector<int> hidden;
  int g_rank = 0;
  // When rank G == 1: the first nonzero column of G scaled so its first
  // nonzero entry is 1. Empty otherwise.
  RatVector gbar;
};

ObservableClassification classify_observables(const Embedding& emb);

struct ReducedFormCheck {
  bool ok = false;
  std::vector<std::string> diagnostics;
};

// Reduced visible form: every observable has zero constant and linear
// parts, and the visible observables are linearly independent.
ReducedFormCheck is_reduced_visible_form(const Embedding& emb);

// Strips constant and linear parts off every observable and pushes them
// into the blocks (D absorbs G c, A absorbs G L, and the observable rows
// are re-derived so the closure identities keep holding). Requires a
// verified embedding; throws UnsupportedReduction when the stripped visible
// observables come out linearly dependent, since merging them would change
// the observable count.
Embedding reduce_observables(const Embedding& emb);

// Hidden degrees never exceed visible degrees (max over hidden vs min over
// visible); vacuously true without hidden observables.
bool is_balanced(const Embedding& emb);

// For rank-1 G: change the observable basis z2 -> S z2 so the new G equals
// gbar e1^T and the new first observable is the rank-1 factor q = c^T p.
// Throws NotSingleVisible when rank G != 1.
Embedding normalize_single_visible(const Embedding& emb);

// True when G has the shape gbar e1^T with nonzero first column and zero
// remaining columns (the form normalize_single_visible produces).
bool is_single_visible_normalized(const Embedding& emb);

}  // namespace superlin
