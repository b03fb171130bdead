// Copyright (c) 2026 timkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "timkit/gf.hpp"

#include <algorithm>

namespace timkit {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  std::uint64_t c = n;
  while (!is_prime(c)) ++c;
  return c;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) fail("InvalidArgument", "Rng::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = eng_();
  while (v >= limit) v = eng_();
  return v % n;
}

FMatrix::FMatrix(int rows, int cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), a_(static_cast<std::size_t>(rows) * cols, 0) {
  if (rows < 0 || cols < 0) fail("DimensionMismatch", "negative matrix dimension");
  if (!is_prime(p)) fail("InvalidModulus", "modulus " + std::to_string(p) + " is not prime");
}

FMatrix::FMatrix(int rows, int cols, std::uint32_t p, std::vector<std::uint32_t> entries)
    : FMatrix(rows, cols, p) {
  if (entries.size() != a_.size()) fail("DimensionMismatch", "entry count != rows*cols");
  for (std::size_t i = 0; i < entries.size(); ++i) a_[i] = entries[i] % p;
}

FMatrix FMatrix::identity(int n, std::uint32_t p) {
  FMatrix m(n, n, p);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

bool FMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](std::uint32_t v) { return v == 0; });
}

std::uint32_t f_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = static_cast<std::uint64_t>(a) + b;
  return static_cast<std::uint32_t>(s >= p ? s - p : s);
}

std::uint32_t f_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : static_cast<std::uint32_t>(a + static_cast<std::uint64_t>(p) - b);
}

std::uint32_t f_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t f_inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) fail("Singular", "inverse of 0 mod " + std::to_string(p));
  // Extended Euclid.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

FMatrix transpose(const FMatrix& m) {
  FMatrix t(m.cols(), m.rows(), m.mod());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) t.set(c, r, m.at(r, c));
  return t;
}

FMatrix mat_mul(const FMatrix& a, const FMatrix& b) {
  if (a.mod() != b.mod()) fail("FieldMismatch", "mat_mul over different moduli");
  if (a.cols() != b.rows()) fail("DimensionMismatch", "mat_mul inner dimensions differ");
  const std::uint32_t p = a.mod();
  FMatrix c(a.rows(), b.cols(), p);
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const std::uint64_t aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        std::uint64_t v = c.at(i, j) + aik * b.at(k, j) % p;
        c.set(i, j, static_cast<std::uint32_t>(v % p));
      }
    }
  }
  return c;
}

FMatrix mat_add(const FMatrix& a, const FMatrix& b) {
  if (a.mod() != b.mod()) fail("FieldMismatch", "mat_add over different moduli");
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail("DimensionMismatch", "mat_add shapes differ");
  FMatrix c(a.rows(), a.cols(), a.mod());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.set(i, j, f_add(a.at(i, j), b.at(i, j), a.mod()));
  return c;
}

FMatrix hstack(const FMatrix& a, const FMatrix& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.mod() != b.mod()) fail("FieldMismatch", "hstack over different moduli");
  if (a.rows() != b.rows()) fail("DimensionMismatch", "hstack row counts differ");
  FMatrix c(a.rows(), a.cols() + b.cols(), a.mod());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c.set(i, j, a.at(i, j));
    for (int j = 0; j < b.cols(); ++j) c.set(i, a.cols() + j, b.at(i, j));
  }
  return c;
}

FMatrix vstack(const FMatrix& a, const FMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.mod() != b.mod()) fail("FieldMismatch", "vstack over different moduli");
  if (a.cols() != b.cols()) fail("DimensionMismatch", "vstack column counts differ");
  FMatrix c(a.rows() + b.rows(), a.cols(), a.mod());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.set(i, j, a.at(i, j));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.set(a.rows() + i, j, b.at(i, j));
  return c;
}

namespace {

// In-place forward elimination to row echelon form. Returns pivot columns;
// when det_out is non-null accumulates the determinant factor of the
// performed row ops (square input assumed by det()).
std::vector<int> eliminate(FMatrix& m, std::uint32_t* det_out) {
  const std::uint32_t p = m.mod();
  std::vector<int> pivots;
  std::uint32_t dsign = 1;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int r = row; r < m.rows(); ++r) {
      if (m.at(r, col) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) {
      for (int c = 0; c < m.cols(); ++c) {
        std::uint32_t t = m.at(piv, c);
        m.set(piv, c, m.at(row, c));
        m.set(row, c, t);
      }
      dsign = f_sub(0, dsign, p);  // row swap flips the sign
    }
    const std::uint32_t inv = f_inv(m.at(row, col), p);
    if (det_out) dsign = f_mul(dsign, m.at(row, col), p);
    for (int c = col; c < m.cols(); ++c) m.set(row, c, f_mul(m.at(row, c), inv, p));
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const std::uint32_t factor = m.at(r, col);
      if (factor == 0) continue;
      for (int c = col; c < m.cols(); ++c)
        m.set(r, c, f_sub(m.at(r, c), f_mul(factor, m.at(row, c), p), p));
    }
    pivots.push_back(col);
    ++row;
  }
  if (det_out) *det_out = dsign;
  return pivots;
}

}  // namespace

int rank(const FMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  FMatrix w = m;
  return static_cast<int>(eliminate(w, nullptr).size());
}

FMatrix rref(const FMatrix& m) {
  FMatrix w = m;
  if (w.rows() == 0 || w.cols() == 0) return w;
  eliminate(w, nullptr);
  return w;
}

std::uint32_t det(const FMatrix& m) {
  if (m.rows() != m.cols()) fail("DimensionMismatch", "det of non-square matrix");
  if (m.rows() == 0) return 1 % m.mod();
  FMatrix w = m;
  std::uint32_t d = 1;
  std::vector<int> piv = eliminate(w, &d);
  if (static_cast<int>(piv.size()) < m.rows()) return 0;
  return d;
}

FMatrix solve(const FMatrix& a, const FMatrix& b) {
  if (a.rows() != a.cols()) fail("DimensionMismatch", "solve requires square a");
  if (a.mod() != b.mod()) fail("FieldMismatch", "solve over different moduli");
  if (a.rows() != b.rows()) fail("DimensionMismatch", "solve: rows(a) != rows(b)");
  FMatrix aug = hstack(a, b);
  std::vector<int> piv = eliminate(aug, nullptr);
  // Pivots must cover all columns of a.
  int lead = 0;
  for (int c : piv)
    if (c < a.cols()) ++lead;
  if (lead != a.cols()) fail("Singular", "solve: coefficient matrix is singular");
  FMatrix x(a.cols(), b.cols(), a.mod());
  for (int i = 0; i < a.cols(); ++i)
    for (int j = 0; j < b.cols(); ++j) x.set(i, j, aug.at(i, a.cols() + j));
  return x;
}

FMatrix left_null_basis(const FMatrix& m) {
  // Left null space of m = kernel of m^T.
  const FMatrix mt = transpose(m);
  FMatrix w = mt;
  std::vector<int> piv =
      w.rows() == 0 || w.cols() == 0 ? std::vector<int>{} : eliminate(w, nullptr);
  const int n = mt.cols();  // == rows(m)
  std::vector<bool> is_pivot(n, false);
  for (int c : piv) is_pivot[c] = true;
  const int dim = n - static_cast<int>(piv.size());
  FMatrix basis(dim, n, m.mod());
  int out = 0;
  for (int freec = 0; freec < n; ++freec) {
    if (is_pivot[freec]) continue;
    basis.set(out, freec, 1);
    // Back-substitute pivot coordinates from the reduced rows.
    for (std::size_t r = 0; r < piv.size(); ++r)
      basis.set(out, piv[r], f_sub(0, w.at(static_cast<int>(r), freec), m.mod()));
    ++out;
  }
  return basis;
}

FMatrix random_matrix(int rows, int cols, std::uint32_t p, Rng& rng) {
  FMatrix m(rows, cols, p);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.set(r, c, static_cast<std::uint32_t>(rng.below(p)));
  return m;
}

bool independent_of(const FMatrix& basis, const FMatrix& v) {
  if (basis.cols() == 0 || basis.rows() == 0) return rank(v) == v.cols();
  return rank(hstack(basis, v)) == rank(basis) + v.cols();
}

}  // namespace timkit
