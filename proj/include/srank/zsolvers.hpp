#pragma once

// Integer-side witnesses: a rank-2 reducer for Z (via CRT over the prime
// divisors of the pivot entry), the classical irreducible pair showing the
// rank cannot drop to 1, the same reducer wrapped as a corner of M_2(Z), and
// seeded generators for demo rows.

#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "srank/ring.hpp"
#include "srank/snf.hpp"
#include "srank/stablerank.hpp"

namespace srank {

inline std::vector<mpz_class> distinct_prime_factors(mpz_class v) {
  v = abs(v);
  std::vector<mpz_class> ps;
  if (v <= 1) return ps;
  for (mpz_class f = 2; f * f <= v && f <= 1000000; f += (f == 2 ? 1 : 2))
    if (v % f == 0) {
      ps.push_back(f);
      while (v % f == 0) v /= f;
    }
  if (v > 1) {
    if (!mpz_probab_prime_p(v.get_mpz_t(), 40))
      throw std::logic_error("pivot factorization above cap");
    ps.push_back(v);
  }
  return ps;
}

// c with gcd(a1 + b c1, a2 + b c2) = 1, given gcd(a1, a2, b) = 1
inline std::pair<mpz_class, mpz_class> z_reduce_pair(const mpz_class& a1, const mpz_class& a2,
                                                     const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
  if (g == 1) return {0, 0};

  // force a nonzero pivot; all its primes must then avoid a2 + b c2
  mpz_class c1 = (a1 != 0) ? 0 : 1;
  mpz_class ap = a1 + b * c1;

  mpz_class C = 0, M = 1;
  for (const auto& pi : distinct_prime_factors(ap)) {
    if (b % pi == 0) continue;  // then pi cannot divide a2, no constraint
    mpz_class binv, r, minv, k;
    mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), pi.get_mpz_t());
    r = (binv * (1 - a2)) % pi;  // a2 + b c2 = 1 mod pi
    if (r < 0) r += pi;
    mpz_invert(minv.get_mpz_t(), M.get_mpz_t(), pi.get_mpz_t());
    k = ((r - C) * minv) % pi;
    if (k < 0) k += pi;
    C += M * k;
    M *= pi;
  }
  return {c1, C};
}

inline Reducer z_reducer() {
  Reducer red;
  red.ring = make_integers();
  red.n = 2;
  red.fn = [](const std::vector<Value>& row) -> std::optional<ReduceOutput> {
    if (row.size() != 3) throw std::invalid_argument("row has wrong length");
    const mpz_class &a1 = row[0].scalar(), &a2 = row[1].scalar(), &b = row[2].scalar();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), b.get_mpz_t());
    if (g != 1) throw std::invalid_argument("row is not right unimodular");
    auto [c1, c2] = z_reduce_pair(a1, a2, b);
    mpz_class r1 = a1 + b * c1, r2 = a2 + b * c2, u, v;
    ext_gcd(r1, r2, g, u, v);
    if (g != 1) throw std::logic_error("reduction lost unimodularity");
    return ReduceOutput{{Value(c1), Value(c2)}, {Value(u), Value(v)}};
  };
  return red;
}

// first c with a + b c a unit, if any (exists iff a = +-1 mod b)
inline std::optional<mpz_class> z_pair_reduction(const mpz_class& a, const mpz_class& b) {
  if (a == 1 || a == -1) return mpz_class(0);
  if (b == 0) return std::nullopt;
  if ((1 - a) % b == 0) return mpz_class((1 - a) / b);
  if ((-1 - a) % b == 0) return mpz_class((-1 - a) / b);
  return std::nullopt;
}

// (5, 7) is right unimodular but 5 + 7c never hits a unit
struct ZSrWitness {
  std::vector<Value> row, cert;
};

inline ZSrWitness z_sr_lower_witness() {
  return {{Value(5L), Value(7L)}, {Value(3L), Value(-2L)}};
}

// the corner e11 M_2(Z) e11, with the integer reducer threaded through
inline RingPtr m2z_ring() { return make_matrix(make_integers(), 2); }

inline Value m2z_e(unsigned i, unsigned j) {
  return block_matrix(2, [&](unsigned a, unsigned b) {
    return Value(mpz_class(a == i && b == j ? 1 : 0));
  });
}

inline Reducer z_corner_reducer(RingPtr corner) {
  if (corner->kind() != Ring::Kind::Corner) throw std::invalid_argument("expected a corner ring");
  Reducer inner = z_reducer();
  Reducer red;
  red.ring = corner;
  red.n = 2;
  red.fn = [corner, inner](const std::vector<Value>& row) -> std::optional<ReduceOutput> {
    if (row.size() != 3) throw std::invalid_argument("row has wrong length");
    std::vector<Value> scalars;
    for (const auto& v : row) {
      if (!corner->contains(v)) throw std::invalid_argument("row entry outside the corner");
      scalars.push_back(mat_entry(v, 2, 0, 0));
    }
    auto out = inner.fn(scalars);
    if (!out) return std::nullopt;
    Value z0(0L);
    ReduceOutput wrapped;
    for (unsigned i = 0; i < 2; ++i) {
      wrapped.c.push_back(mat_unit(2, 0, 0, out->c[i], z0));
      wrapped.cert.push_back(mat_unit(2, 0, 0, out->cert[i], z0));
    }
    return wrapped;
  };
  return red;
}

// ---------------------------------------------------------------------------
// seeded generators for demo instances

inline mpz_class rand_int(std::mt19937_64& rng, long magnitude) {
  std::uniform_int_distribution<long> d(-magnitude, magnitude);
  return mpz_class(d(rng));
}

inline std::vector<Value> random_z_row(std::mt19937_64& rng, long magnitude) {
  for (;;) {
    mpz_class a1 = rand_int(rng, magnitude), a2 = rand_int(rng, magnitude),
              b = rand_int(rng, magnitude);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), b.get_mpz_t());
    if (g == 1) return {Value(a1), Value(a2), Value(b)};
  }
}

// product of a few shears: determinant 1, entries bounded by the shear sizes
inline IntMat random_unimodular_2x2(std::mt19937_64& rng, long magnitude) {
  IntMat u = IntMat::identity(2);
  std::uniform_int_distribution<int> nshears(2, 4);
  std::uniform_int_distribution<long> k(-magnitude, magnitude);
  std::uniform_int_distribution<int> side(0, 1);
  int n = nshears(rng);
  for (int t = 0; t < n; ++t) {
    IntMat s = IntMat::identity(2);
    if (side(rng))
      s.at(0, 1) = k(rng);
    else
      s.at(1, 0) = k(rng);
    u = mat_mul(u, s);
  }
  return u;
}

// a right unimodular (A1, A2, B) over M_2(Z), obscured from (I, R1, R2)
inline std::vector<Value> random_m2z_row(std::mt19937_64& rng, long magnitude) {
  IntMat u = random_unimodular_2x2(rng, magnitude);
  std::vector<IntMat> base;
  base.push_back(IntMat::identity(2));
  for (int t = 0; t < 2; ++t) {
    IntMat r(2, 2);
    for (unsigned i = 0; i < 2; ++i)
      for (unsigned j = 0; j < 2; ++j) r.at(i, j) = rand_int(rng, magnitude);
    base.push_back(r);
  }
  std::vector<Value> row;
  for (auto& m : base) {
    IntMat v = random_unimodular_2x2(rng, magnitude);
    row.push_back(from_int_mat(mat_mul(u, mat_mul(m, v))));
  }
  return row;
}

}  // namespace srank
