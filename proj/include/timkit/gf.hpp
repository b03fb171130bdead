// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "timkit/error.hpp"

namespace timkit {

bool is_prime(std::uint64_t n);
// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

// Deterministic seedable generator (std::mt19937_64). All synthesis
// randomness flows through one of these, keyed by the seed recorded in the
// scheme output. Bounded draws use rejection sampling so results do not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // Uniform draw from [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 eng_;
};

// Dense row-major matrix over GF(p), p prime. Exact arithmetic only; entries
// live in [0, p). Value semantics throughout, no shared state.
class FMatrix {
 public:
  FMatrix() = default;
  FMatrix(int rows, int cols, std::uint32_t p);
  FMatrix(int rows, int cols, std::uint32_t p, std::vector<std::uint32_t> entries);

  static FMatrix identity(int n, std::uint32_t p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::uint32_t mod() const { return p_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  std::uint32_t at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  void set(int r, int c, std::uint32_t v) { a_[static_cast<std::size_t>(r) * cols_ + c] = v % p_; }

  bool is_zero() const;
  bool operator==(const FMatrix& o) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> a_;
};

// Scalar ops mod p.
std::uint32_t f_add(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t f_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t f_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t f_inv(std::uint32_t a, std::uint32_t p);

FMatrix transpose(const FMatrix& m);
FMatrix mat_mul(const FMatrix& a, const FMatrix& b);
FMatrix mat_add(const FMatrix& a, const FMatrix& b);
// Side-by-side / stacked composition. Empty operands pass through.
FMatrix hstack(const FMatrix& a, const FMatrix& b);
FMatrix vstack(const FMatrix& a, const FMatrix& b);

int rank(const FMatrix& m);
FMatrix rref(const FMatrix& m);
std::uint32_t det(const FMatrix& m);
// Solves a x = b for square a; throws Singular / DimensionMismatch.
FMatrix solve(const FMatrix& a, const FMatrix& b);
// Basis of the left null space: returns B with B*m = 0 and
// rows(B) = rows(m) - rank(m). Full-rank input yields a 0-row basis.
FMatrix left_null_basis(const FMatrix& m);

// Uniform i.i.d. entries from the caller's generator.
FMatrix random_matrix(int rows, int cols, std::uint32_t p, Rng& rng);

// True when the columns of v are independent of the column span of basis,
// i.e. rank([basis | v]) == rank(basis) + cols(v).
bool independent_of(const FMatrix& basis, const FMatrix& v);

}  // namespace timkit
