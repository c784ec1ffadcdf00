#pragma once

// Exact Smith normal form of integer matrices, with unimodular transforms:
// U * M * V = D, D diagonal with nonnegative invariants d_i | d_{i+1}.
// Serves as the unimodularity oracle for rows over matrix rings of integers.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace srank {

struct IntMat {
  std::size_t rows = 0, cols = 0;
  std::vector<mpz_class> a;  // row-major

  IntMat() = default;
  IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, mpz_class(0)) {}
  mpz_class& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  friend bool operator==(const IntMat& x, const IntMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

inline IntMat mat_mul(const IntMat& x, const IntMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  IntMat z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return z;
}

// Bareiss fraction-free determinant (square matrices).
inline mpz_class mat_det(IntMat m) {
  if (m.rows != m.cols) throw std::invalid_argument("det: not square");
  std::size_t n = m.rows;
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m.at(k, k);
  }
  return n == 0 ? mpz_class(sign) : mpz_class(sign * m.at(n - 1, n - 1));
}

struct SmithForm {
  IntMat u, d, v;  // u*m*v == d
  std::vector<mpz_class> invariants() const {
    std::vector<mpz_class> inv;
    std::size_t k = std::min(d.rows, d.cols);
    for (std::size_t i = 0; i < k; ++i) inv.push_back(d.at(i, i));
    return inv;
  }
};

inline SmithForm smith_normal_form(const IntMat& m) {
  SmithForm s;
  s.d = m;
  s.u = IntMat::identity(m.rows);
  s.v = IntMat::identity(m.cols);
  IntMat& d = s.d;
  std::size_t n = std::min(m.rows, m.cols);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
    for (std::size_t c = 0; c < s.u.cols; ++c) std::swap(s.u.at(i, c), s.u.at(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < d.rows; ++r) std::swap(d.at(r, i), d.at(r, j));
    for (std::size_t r = 0; r < s.v.rows; ++r) std::swap(s.v.at(r, i), s.v.at(r, j));
  };
  auto addmul_row = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t c = 0; c < d.cols; ++c) d.at(dst, c) += q * d.at(src, c);
    for (std::size_t c = 0; c < s.u.cols; ++c) s.u.at(dst, c) += q * s.u.at(src, c);
  };
  auto addmul_col = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t r = 0; r < d.rows; ++r) d.at(r, dst) += q * d.at(r, src);
    for (std::size_t r = 0; r < s.v.rows; ++r) s.v.at(r, dst) += q * s.v.at(r, src);
  };
  auto negate_row = [&](std::size_t i) {
    for (std::size_t c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
    for (std::size_t c = 0; c < s.u.cols; ++c) s.u.at(i, c) = -s.u.at(i, c);
  };

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // pivot: nonzero entry of least absolute value in the trailing block
      std::size_t pi = t, pj = t;
      mpz_class best = 0;
      for (std::size_t i = t; i < d.rows; ++i)
        for (std::size_t j = t; j < d.cols; ++j) {
          if (d.at(i, j) == 0) continue;
          mpz_class a = abs(d.at(i, j));
          if (best == 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) goto done;  // trailing block all zero
      if (pi != t) swap_rows(t, pi);
      if (pj != t) swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < d.rows; ++i) {
        if (d.at(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
        addmul_row(i, t, -q);
        if (d.at(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < d.cols; ++j) {
        if (d.at(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
        addmul_col(j, t, -q);
        if (d.at(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // pivot must divide every trailing entry; if not, mix that row in
      bool fixed = true;
      for (std::size_t i = t + 1; i < d.rows && fixed; ++i)
        for (std::size_t j = t + 1; j < d.cols && fixed; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            addmul_row(t, i, mpz_class(1));
            fixed = false;
          }
      if (fixed) break;
    }
    if (d.at(t, t) < 0) negate_row(t);
  }
done:
  return s;
}

// Right inverse of an r x c integer matrix (r <= c), if one exists.
inline std::optional<IntMat> integer_right_inverse(const IntMat& m) {
  SmithForm s = smith_normal_form(m);
  std::size_t r = m.rows, c = m.cols;
  if (r > c) return std::nullopt;
  for (std::size_t i = 0; i < r; ++i)
    if (s.d.at(i, i) != 1) return std::nullopt;
  // m * (v * dplus * u) = identity
  IntMat dplus(c, r);
  for (std::size_t i = 0; i < r; ++i) dplus.at(i, i) = 1;
  return mat_mul(s.v, mat_mul(dplus, s.u));
}

inline void ext_gcd(const mpz_class& a, const mpz_class& b, mpz_class& g, mpz_class& x, mpz_class& y) {
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace srank
