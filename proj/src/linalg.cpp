#include "superlin/linalg.hpp"

#include <utility>

namespace superlin {

namespace {

struct IntEchelon {
  std::vector<std::vector<BigInt>> rows;
  std::vector<int> pivot_cols;
};

// Fraction-free (one-step Bareiss) row echelon form. Rows are scaled to a
// common integer denominator first; every interior division below is exact.
IntEchelon bareiss_echelon(const RatMatrix& M) {
  const int nr = static_cast<int>(M.rows());
  const int nc = static_cast<int>(M.cols());
  std::vector<std::vector<BigInt>> a(static_cast<size_t>(nr),
                                     std::vector<BigInt>(static_cast<size_t>(nc)));
  for (int i = 0; i < nr; ++i) {
    BigInt scale = 1;
    for (int j = 0; j < nc; ++j)
      scale = boost::multiprecision::lcm(scale, M(i, j).den());
    for (int j = 0; j < nc; ++j)
      a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          M(i, j).num() * (scale / M(i, j).den());
  }

  std::vector<int> pivots;
  BigInt prev = 1;
  int row = 0;
  for (int col = 0; col < nc && row < nr; ++col) {
    int pr = -1;
    for (int i = row; i < nr; ++i)
      if (a[static_cast<size_t>(i)][static_cast<size_t>(col)] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(a[static_cast<size_t>(row)], a[static_cast<size_t>(pr)]);
    const BigInt pivot = a[static_cast<size_t>(row)][static_cast<size_t>(col)];
    for (int i = row + 1; i < nr; ++i) {
      auto& ri = a[static_cast<size_t>(i)];
      const auto& rp = a[static_cast<size_t>(row)];
      const BigInt head = ri[static_cast<size_t>(col)];
      for (int j = col + 1; j < nc; ++j) {
        BigInt q, rem;
        boost::multiprecision::divide_qr(
            pivot * ri[static_cast<size_t>(j)] - head * rp[static_cast<size_t>(j)], prev,
            q, rem);
        if (rem != 0)
          throw Error("internal: fraction-free elimination produced a remainder");
        ri[static_cast<size_t>(j)] = std::move(q);
      }
      ri[static_cast<size_t>(col)] = 0;
    }
    prev = pivot;
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

}  // namespace

RrefResult rref(const RatMatrix& M) {
  const int nr = static_cast<int>(M.rows());
  const int nc = static_cast<int>(M.cols());
  IntEchelon ech = bareiss_echelon(M);
  const int rk = static_cast<int>(ech.pivot_cols.size());

  RatMatrix R = RatMatrix::Zero(nr, nc);
  for (int i = 0; i < rk; ++i) {
    const BigInt& pivot =
        ech.rows[static_cast<size_t>(i)][static_cast<size_t>(ech.pivot_cols[static_cast<size_t>(i)])];
    for (int j = 0; j < nc; ++j)
      R(i, j) = Rational(ech.rows[static_cast<size_t>(i)][static_cast<size_t>(j)], pivot);
  }
  // eliminate above the pivots
  for (int i = rk - 1; i >= 0; --i) {
    const int pc = ech.pivot_cols[static_cast<size_t>(i)];
    for (int u = 0; u < i; ++u) {
      const Rational factor = R(u, pc);
      if (factor.is_zero()) continue;
      for (int j = pc; j < nc; ++j) R(u, j) -= factor * R(i, j);
    }
  }
  return {std::move(R), std::move(ech.pivot_cols), rk};
}

int rank(const RatMatrix& M) {
  return static_cast<int>(bareiss_echelon(M).pivot_cols.size());
}

std::vector<RatVector> rref_nullspace(const RatMatrix& M) {
  const int nc = static_cast<int>(M.cols());
  RrefResult r = rref(M);

  std::vector<bool> is_pivot(static_cast<size_t>(nc), false);
  for (int pc : r.pivot_cols) is_pivot[static_cast<size_t>(pc)] = true;

  std::vector<RatVector> basis;
  for (int f = 0; f < nc; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    RatVector v = RatVector::Zero(nc);
    v(f) = Rational(1);
    for (int i = 0; i < r.rank; ++i)
      v(r.pivot_cols[static_cast<size_t>(i)]) = -r.R(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

RatMatrix invert(const RatMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const int n = static_cast<int>(M.rows());
  RatMatrix W(n, 2 * n);
  W.block(0, 0, n, n) = M;
  W.block(0, n, n, n) = RatMatrix::Identity(n, n);

  for (int col = 0; col < n; ++col) {
    int pr = -1;
    for (int i = col; i < n; ++i)
      if (!W(i, col).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) throw SingularMatrix("matrix is singular");
    if (pr != col) W.row(col).swap(W.row(pr));
    const Rational pivot = W(col, col);
    for (int j = col; j < 2 * n; ++j) W(col, j) /= pivot;
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const Rational factor = W(i, col);
      if (factor.is_zero()) continue;
      for (int j = col; j < 2 * n; ++j) W(i, j) -= factor * W(col, j);
    }
  }
  return W.block(0, n, n, n);
}

RatMatrix columns_to_matrix(const std::vector<RatVector>& cols, int rows) {
  RatMatrix M(rows, static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw DimensionMismatch("column length does not match requested row count");
    M.col(static_cast<Eigen::Index>(j)) = cols[j];
  }
  return M;
}

bool in_span(const RatMatrix& basis, const RatVector& v) {
  if (basis.cols() == 0) return is_zero(v);
  RatMatrix aug(basis.rows(), basis.cols() + 1);
  aug.block(0, 0, basis.rows(), basis.cols()) = basis;
  aug.col(basis.cols()) = v;
  return rank(aug) == rank(basis);
}

RatMatrix krylov_span(const RatMatrix& A, const RatMatrix& V0) {
  if (A.rows() != A.cols()) throw DimensionMismatch("krylov_span needs a square matrix");
  const int n = static_cast<int>(A.rows());
  if (V0.rows() != n)
    throw DimensionMismatch("krylov_span seed has the wrong number of rows");

  RatMatrix basis(n, 0);
  auto try_append = [&](const RatVector& v) -> bool {
    if (in_span(basis, v)) return false;
    RatMatrix next(n, basis.cols() + 1);
    next.block(0, 0, n, basis.cols()) = basis;
    next.col(basis.cols()) = v;
    basis = std::move(next);
    return true;
  };

  std::vector<RatVector> frontier;
  for (Eigen::Index j = 0; j < V0.cols(); ++j)
    if (try_append(V0.col(j))) frontier.push_back(V0.col(j));

  for (int gen = 1; gen < n && !frontier.empty() && basis.cols() < n; ++gen) {
    std::vector<RatVector> next_frontier;
    for (const RatVector& v : frontier) {
      RatVector av = A * v;
      if (try_append(av)) next_frontier.push_back(std::move(av));
    }
    frontier = std::move(next_frontier);
  }
  return basis;
}

RatMatrix extend_basis(const std::vector<RatVector>& basis, int n) {
  RatMatrix T(n, 0);
  auto append = [&](const RatVector& v) -> bool {
    if (in_span(T, v)) return false;
    RatMatrix next(n, T.cols() + 1);
    next.block(0, 0, n, T.cols()) = T;
    next.col(T.cols()) = v;
    T = std::move(next);
    return true;
  };

  for (const RatVector& v : basis) {
    if (v.size() != n)
      throw DimensionMismatch("basis vector length does not match dimension");
    if (!append(v)) throw DegenerateBasis("extend_basis input vectors are dependent");
  }
  for (int i = 0; i < n && T.cols() < n; ++i) {
    RatVector e = RatVector::Zero(n);
    e(i) = Rational(1);
    append(e);
  }
  return T;
}

}  // namespace superlin
