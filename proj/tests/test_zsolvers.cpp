#include <catch2/catch_amalgamated.hpp>

#include "srank/zsolvers.hpp"

using namespace srank;

TEST_CASE("prime factor extraction") {
  CHECK(distinct_prime_factors(1) == std::vector<mpz_class>{});
  CHECK(distinct_prime_factors(-12) == std::vector<mpz_class>{2, 3});
  CHECK(distinct_prime_factors(97) == std::vector<mpz_class>{97});
  CHECK(distinct_prime_factors(mpz_class("1000003") * 7) == std::vector<mpz_class>{7, 1000003});
}

TEST_CASE("pair reduction by hand cases") {
  auto check = [](long a1, long a2, long b) {
    auto [c1, c2] = z_reduce_pair(a1, a2, b);
    mpz_class g, r1 = a1 + mpz_class(b) * c1, r2 = a2 + mpz_class(b) * c2;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), r2.get_mpz_t());
    CHECK(g == 1);
  };
  check(5, 7, 9);
  check(4, 6, 9);
  check(0, 4, 3);
  check(6, 0, 5);
  check(10, 15, 7);
  check(-8, -12, 5);
}

TEST_CASE("the rank-two reducer on seeded random rows") {
  Reducer red = z_reducer();
  std::mt19937_64 rng(42);
  for (int t = 0; t < 500; ++t) {
    auto row = random_z_row(rng, 1000000);
    auto out = red.fn(row);
    REQUIRE(out.has_value());
    CHECK(verify_reduction(*red.ring, row, *out));
    mpz_class g, r1 = row[0].scalar() + row[2].scalar() * out->c[0].scalar(),
              r2 = row[1].scalar() + row[2].scalar() * out->c[1].scalar();
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), r2.get_mpz_t());
    CHECK(g == 1);
  }
  CHECK_THROWS_AS(red.fn({Value(2L), Value(4L), Value(6L)}), std::invalid_argument);
}

TEST_CASE("unit reduction of integer pairs") {
  CHECK(z_pair_reduction(1, 100) == mpz_class(0));
  CHECK(z_pair_reduction(8, 7) == mpz_class(-1));
  CHECK_FALSE(z_pair_reduction(5, 7).has_value());
  CHECK_FALSE(z_pair_reduction(3, 7).has_value());
  CHECK(z_pair_reduction(3, 4) == mpz_class(-1));  // 3 - 4 = -1
}

TEST_CASE("the classical irreducible pair over the integers") {
  ZSrWitness w = z_sr_lower_witness();
  RingPtr Z = make_integers();
  CHECK(is_right_unimodular(*Z, w.row));
  Value s = Z->zero();
  for (std::size_t i = 0; i < w.row.size(); ++i) s = Z->add(s, Z->mul(w.row[i], w.cert[i]));
  CHECK(s == Z->one());
  // 5 mod 7 is neither 1 nor -1, so 5 + 7c is never a unit
  CHECK(mpz_class(5) % 7 != 1);
  CHECK(mpz_class(5) % 7 != 6);
  CHECK_FALSE(z_pair_reduction(5, 7).has_value());
}

TEST_CASE("corner reducer over the integer matrix ring") {
  RingPtr A = m2z_ring();
  Value p = m2z_e(0, 0);
  RingPtr C = make_corner(A, p);
  Reducer red = z_corner_reducer(C);
  Value z0(0L);
  std::vector<Value> row{mat_unit(2, 0, 0, Value(4L), z0), mat_unit(2, 0, 0, Value(6L), z0),
                         mat_unit(2, 0, 0, Value(9L), z0)};
  auto out = red.fn(row);
  REQUIRE(out.has_value());
  // the reduced pair has a right inverse inside the corner
  Value s = A->zero();
  for (unsigned i = 0; i < 2; ++i)
    s = A->add(s, A->mul(A->add(row[i], A->mul(row[2], out->c[i])), out->cert[i]));
  CHECK(s == p);
}

TEST_CASE("seeded generators stay right unimodular") {
  std::mt19937_64 rng(7);
  RingPtr Z = make_integers();
  for (int t = 0; t < 50; ++t) CHECK(is_right_unimodular(*Z, random_z_row(rng, 100)));
  RingPtr A = m2z_ring();
  for (int t = 0; t < 25; ++t) {
    auto row = random_m2z_row(rng, 10);
    REQUIRE(row.size() == 3);
    CHECK(is_right_unimodular(*A, row));
  }
  for (int t = 0; t < 25; ++t) CHECK(abs(mat_det(random_unimodular_2x2(rng, 10))) == 1);
}
