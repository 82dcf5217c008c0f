#include "support.hpp"

using namespace testsup;

TEST_CASE("nullspace on fixed examples") {
  const auto ker1 = rref_nullspace(mat({{0, 2}, {0, 0}}));
  REQUIRE(ker1.size() == 1);
  CHECK(ker1[0] == vec({1, 0}));

  CHECK(rref_nullspace(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());

  const auto ker2 = rref_nullspace(mat({{0, 0}, {0, 0}}));
  REQUIRE(ker2.size() == 2);
  CHECK(ker2[0] == vec({1, 0}));
  CHECK(ker2[1] == vec({0, 1}));
}

TEST_CASE("nullspace with fractional entries") {
  RatMatrix M(2, 2);
  M(0, 0) = Rational(1, 2);
  M(0, 1) = Rational(1, 3);
  M(1, 0) = Rational(1, 4);
  M(1, 1) = Rational(1, 6);
  const auto ker = rref_nullspace(M);
  REQUIRE(ker.size() == 1);
  CHECK(is_zero(RatVector(M * ker[0])));
  CHECK(rank(M) == 1);
}

TEST_CASE("nullspace properties on random matrices") {
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    const int r = static_cast<int>(rng.uniform_int(1, 4));
    const int c = static_cast<int>(rng.uniform_int(1, 4));
    const RatMatrix M = random_matrix(rng, r, c, -2, 2);
    const auto ker = rref_nullspace(M);
    for (const RatVector& v : ker) CHECK(is_zero(RatVector(M * v)));
    CHECK(static_cast<int>(ker.size()) + rank(M) == c);
  }
}

TEST_CASE("krylov span on fixed examples") {
  RatMatrix V0(2, 1);
  V0.col(0) = vec({1, 0});
  const RatMatrix K1 = krylov_span(mat({{-1, 0}, {0, -1}}), V0);
  REQUIRE(K1.cols() == 1);
  CHECK(K1.col(0) == vec({1, 0}));

  RatMatrix V1(2, 1);
  V1.col(0) = vec({0, 1});
  const RatMatrix K2 = krylov_span(mat({{0, 1}, {0, 0}}), V1);
  REQUIRE(K2.cols() == 2);
  CHECK(K2.col(0) == vec({0, 1}));
  CHECK(K2.col(1) == vec({1, 0}));

  RatMatrix Z(2, 1);
  Z.col(0) = vec({0, 0});
  CHECK(krylov_span(mat({{1, 2}, {3, 4}}), Z).cols() == 0);
}

TEST_CASE("krylov span properties") {
  Rng rng(13);
  for (int i = 0; i < 30; ++i) {
    const int n = static_cast<int>(rng.uniform_int(1, 4));
    const RatMatrix A = random_matrix(rng, n, n, -2, 2);
    const RatMatrix V0 = random_matrix(rng, n, static_cast<int>(rng.uniform_int(1, 2)), -2, 2);
    const RatMatrix K = krylov_span(A, V0);
    CHECK(rank(K) == K.cols());
    for (Eigen::Index j = 0; j < V0.cols(); ++j) CHECK(in_span(K, V0.col(j)));
    // stabilized: the span is closed under A
    for (Eigen::Index j = 0; j < K.cols(); ++j) CHECK(in_span(K, RatVector(A * K.col(j))));
  }
}

TEST_CASE("inverse on fixed examples") {
  const RatMatrix I2 = mat({{1, 0}, {0, 1}});
  CHECK(invert(I2) == I2);
  CHECK(invert(mat({{1, 1}, {0, 1}})) == mat({{1, -1}, {0, 1}}));
  CHECK_THROWS_AS(invert(mat({{0, 2}, {0, 0}})), SingularMatrix);
  CHECK_THROWS_AS(invert(mat({{1, 2, 3}, {4, 5, 6}})), DimensionMismatch);
}

TEST_CASE("inverse round-trip on random unimodular matrices") {
  Rng rng(17);
  for (int i = 0; i < 30; ++i) {
    const int n = static_cast<int>(rng.uniform_int(1, 4));
    const RatMatrix T = random_unimodular(rng, n);
    const RatMatrix Tinv = invert(T);
    CHECK(RatMatrix(T * Tinv) == RatMatrix(RatMatrix::Identity(n, n)));
    CHECK(RatMatrix(Tinv * T) == RatMatrix(RatMatrix::Identity(n, n)));
  }
}

TEST_CASE("basis extension on fixed examples") {
  CHECK(extend_basis({vec({1, 0})}, 2) == mat({{1, 0}, {0, 1}}));
  CHECK(extend_basis({}, 2) == mat({{1, 0}, {0, 1}}));
  CHECK(extend_basis({vec({1, 1})}, 2) == mat({{1, 1}, {1, 0}}));
  CHECK_THROWS_AS(extend_basis({vec({1, 1}), vec({2, 2})}, 2), DegenerateBasis);
}

TEST_CASE("basis extension properties") {
  Rng rng(19);
  for (int i = 0; i < 30; ++i) {
    const int n = static_cast<int>(rng.uniform_int(2, 4));
    // random independent columns out of a unimodular matrix
    const RatMatrix U = random_unimodular(rng, n);
    const int k = static_cast<int>(rng.uniform_int(1, n));
    std::vector<RatVector> vs;
    for (int j = 0; j < k; ++j) vs.push_back(U.col(j));
    const RatMatrix T = extend_basis(vs, n);
    CHECK(rank(T) == n);
    for (int j = 0; j < k; ++j) CHECK(RatVector(T.col(j)) == vs[static_cast<size_t>(j)]);
  }
}

TEST_CASE("rref shape edge cases") {
  CHECK(rref_nullspace(RatMatrix(0, 3)).size() == 3);
  CHECK(rank(RatMatrix(0, 3)) == 0);
  CHECK(rank(RatMatrix(3, 0)) == 0);
}

TEST_CASE("shape violations are structural errors") {
  CHECK_THROWS_AS(krylov_span(mat({{1, 2, 3}, {4, 5, 6}}), RatMatrix(2, 1)),
                  DimensionMismatch);
  CHECK_THROWS_AS(krylov_span(mat({{1, 0}, {0, 1}}), RatMatrix(3, 1)), DimensionMismatch);
  CHECK_THROWS_AS(extend_basis({vec({1, 0, 0})}, 2), DimensionMismatch);
}
