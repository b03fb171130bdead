// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "timkit/gf.hpp"

using namespace timkit;

TEST_CASE("primes") {
  CHECK(is_prime(2));
  CHECK(is_prime(257));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(255));
  CHECK(next_prime(258) == 263);
  CHECK(next_prime(514) == 521);
}

TEST_CASE("rank of identity and dependent rows") {
  CHECK(rank(FMatrix::identity(2, 2)) == 2);
  // [[1,2],[2,4]] over GF(5): second row is twice the first.
  CHECK(rank(FMatrix(2, 2, 5, {1, 2, 2, 4})) == 1);
}

TEST_CASE("rank of a constructed independent-column matrix over GF(257)") {
  // Built from a known RREF basis: columns e1, e3, e5 of height 5 mixed by an
  // invertible 3x3; independence holds by construction.
  FMatrix basis(5, 3, 257);
  basis.set(0, 0, 1);
  basis.set(2, 1, 1);
  basis.set(4, 2, 1);
  FMatrix mix(3, 3, 257, {1, 2, 3, 0, 1, 4, 0, 0, 1});
  REQUIRE(det(mix) != 0);
  FMatrix m = mat_mul(basis, mix);
  CHECK(rank(m) == 3);
}

TEST_CASE("rank properties on random matrices") {
  Rng rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    FMatrix m = random_matrix(4, 6, 7, rng);
    CHECK(rank(m) == rank(transpose(m)));
    CHECK(rank(rref(m)) == rank(m));
  }
}

TEST_CASE("det hand cases and multiplicativity") {
  CHECK(det(FMatrix::identity(3, 7)) == 1);
  CHECK(det(FMatrix(2, 2, 7, {0, 0, 0, 0})) == 0);
  CHECK(det(FMatrix(2, 2, 7, {1, 2, 3, 4})) == f_sub(4, 6 % 7, 7));
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    FMatrix a = random_matrix(3, 3, 7, rng);
    FMatrix b = random_matrix(3, 3, 7, rng);
    CHECK(det(mat_mul(a, b)) == f_mul(det(a), det(b), 7));
  }
}

TEST_CASE("solve") {
  FMatrix a(2, 2, 5, {1, 1, 0, 1});
  FMatrix b(2, 1, 5, {3, 2});
  FMatrix x = solve(a, b);
  CHECK(mat_mul(a, x) == b);
  FMatrix singular(2, 2, 5, {1, 2, 2, 4});
  CHECK_THROWS_AS(solve(singular, b), Error);
  FMatrix wrong(3, 1, 5);
  CHECK_THROWS_AS(solve(a, wrong), Error);
}

TEST_CASE("left null basis") {
  // Single column [1,0]^T over GF(3): the left null space is spanned by [0,1].
  FMatrix m(2, 1, 3, {1, 0});
  FMatrix b = left_null_basis(m);
  REQUIRE(b.rows() == 1);
  CHECK(b.at(0, 0) == 0);
  CHECK(b.at(0, 1) != 0);
  CHECK(mat_mul(b, m).is_zero());

  // Full row rank: empty basis.
  CHECK(left_null_basis(FMatrix::identity(3, 5)).rows() == 0);

  // Columns [1,0,0] and [1,1,0] over GF(5): one basis row, annihilation
  // checked through the product.
  FMatrix cols(3, 2, 5, {1, 1, 0, 1, 0, 0});
  FMatrix nb = left_null_basis(cols);
  REQUIRE(nb.rows() == 1);
  CHECK_FALSE(nb.is_zero());
  CHECK(mat_mul(nb, cols).is_zero());
}

TEST_CASE("left null basis dimension property") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 1 + static_cast<int>(rng.below(5));
    const int c = 1 + static_cast<int>(rng.below(5));
    FMatrix m = random_matrix(r, c, 5, rng);
    FMatrix b = left_null_basis(m);
    CHECK(b.rows() == r - rank(m));
    CHECK(rank(b) == b.rows());
    if (b.rows() > 0) CHECK(mat_mul(b, m).is_zero());
  }
}

TEST_CASE("random_matrix determinism") {
  Rng a(12345), b(12345);
  CHECK(random_matrix(3, 4, 257, a) == random_matrix(3, 4, 257, b));
  Rng g(2024);
  CHECK(random_matrix(0, 0, 3, g).rows() == 0);
}

TEST_CASE("random_matrix golden draws (frozen from the first run)") {
  Rng g(2024);
  CHECK(random_matrix(2, 1, 3, g) == FMatrix(2, 1, 3, {1, 1}));
  CHECK(random_matrix(2, 1, 3, g) == FMatrix(2, 1, 3, {2, 1}));
  Rng h(99);
  CHECK(random_matrix(2, 2, 257, h) == FMatrix(2, 2, 257, {75, 188, 148, 249}));
}

TEST_CASE("independent_of") {
  FMatrix basis(3, 2, 5, {1, 0, 0, 1, 0, 0});
  CHECK(independent_of(basis, FMatrix(3, 1, 5, {0, 0, 1})));
  CHECK_FALSE(independent_of(basis, FMatrix(3, 1, 5, {1, 4, 0})));
}
