#pragma once

#include <vector>

#include "superlin/rational.hpp"

namespace superlin {

// Exact rational dense linear algebra. Elimination runs fraction-free
// (Bareiss) over big integers after clearing row denominators, then results
// are normalized back to reduced rationals. Pivoting is first-nonzero, so
// every routine here is deterministic.

struct RrefResult {
  RatMatrix R;                  // reduced row echelon form
  std::vector<int> pivot_cols;  // increasing
  int rank = 0;
};

RrefResult rref(const RatMatrix& M);

int rank(const RatMatrix& M);

// Basis of ker M read off the reduced echelon form, one vector per free
// column, free columns visited in increasing index order. Empty when M is
// injective.
std::vector<RatVector> rref_nullspace(const RatMatrix& M);

// Exact inverse; throws SingularMatrix.
RatMatrix invert(const RatMatrix& M);

// Column basis of span{V0, A V0, A^2 V0, ...}, grown one generation at a
// time with exact rank tests and stopped as soon as a generation adds
// nothing (the span is then A-invariant). The returned columns are actual
// Krylov vectors, in generation order.
RatMatrix krylov_span(const RatMatrix& A, const RatMatrix& V0);

// Invertible n x n matrix whose first columns are the given independent
// vectors, completed greedily with the first standard basis vectors that
// keep the columns independent. Throws DegenerateBasis on dependent input.
RatMatrix extend_basis(const std::vector<RatVector>& basis, int n);

// rank([basis]) == rank([basis | v]), i.e. v in the column span of basis.
bool in_span(const RatMatrix& basis, const RatVector& v);

RatMatrix columns_to_matrix(const std::vector<RatVector>& cols, int rows);

}  // namespace superlin
