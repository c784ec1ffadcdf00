#include <catch2/catch_amalgamated.hpp>

#include "srank/harness.hpp"
#include "srank/stablerank.hpp"

using namespace srank;

namespace {

Value e(unsigned i, unsigned j) { return mat_unit(2, i, j, Value(1L), Value(0L)); }

}  // namespace

TEST_CASE("unimodularity over the supported kinds") {
  RingPtr Z = make_integers();
  CHECK(is_right_unimodular(*Z, {Value(3L), Value(5L)}));
  CHECK_FALSE(is_right_unimodular(*Z, {Value(2L), Value(4L)}));

  RingPtr Z4 = make_zmod(4);
  CHECK(is_right_unimodular(*Z4, {Value(2L), Value(3L)}));
  CHECK_FALSE(is_right_unimodular(*Z4, {Value(2L), Value(2L)}));

  RingPtr MZ = make_matrix(make_integers(), 2);
  Value E11 = mat_unit(2, 0, 0, Value(1L), Value(0L)), E22 = mat_unit(2, 1, 1, Value(1L), Value(0L));
  CHECK(is_right_unimodular(*MZ, {E11, E22}));
  CHECK_FALSE(is_right_unimodular(*MZ, {E11, E11}));
}

TEST_CASE("right ideal membership") {
  RingPtr Z = make_integers();
  CHECK(right_ideal_contains(*Z, {Value(4L), Value(6L)}, Value(2L)));
  CHECK_FALSE(right_ideal_contains(*Z, {Value(4L), Value(6L)}, Value(3L)));

  RingPtr MZ = make_matrix(make_integers(), 2);
  Value E11 = mat_unit(2, 0, 0, Value(1L), Value(0L));
  Value two = MZ->add(MZ->one(), MZ->one());
  CHECK(right_ideal_contains(*MZ, {MZ->one()}, two));
  CHECK_FALSE(right_ideal_contains(*MZ, {two}, MZ->one()));
  CHECK(right_ideal_contains(*MZ, {E11}, E11));
}

TEST_CASE("reducibility witnesses on finite rings") {
  RingPtr Z4 = make_zmod(4);
  auto c = is_reducible(*Z4, {Value(2L), Value(3L)});
  REQUIRE(c.has_value());
  CHECK((*c)[0] == Value(1L));  // 2 + 3*1 = 1 mod 4

  auto c0 = is_reducible(*Z4, {Value(1L), Value(2L)});
  REQUIRE(c0.has_value());
  CHECK((*c0)[0] == Value(0L));

  RingPtr Z2 = make_zmod(2);
  auto c1 = is_reducible(*Z2, {Value(0L), Value(1L)});
  REQUIRE(c1.has_value());
  CHECK((*c1)[0] == Value(1L));

  CHECK_THROWS_AS(is_reducible(*Z4, {Value(2L), Value(2L)}), std::invalid_argument);
}

TEST_CASE("brute reducer certificates") {
  RingPtr Z4 = make_zmod(4);
  Reducer red = brute_reducer(Z4, 1);
  for (long a = 0; a < 4; ++a)
    for (long b = 0; b < 4; ++b) {
      std::vector<Value> row{Value(a), Value(b)};
      if (!is_right_unimodular(*Z4, row)) continue;
      auto out = red.fn(row);
      REQUIRE(out.has_value());
      CHECK(verify_reduction(*Z4, row, *out));
    }
}

TEST_CASE("stable rank one across the corpus") {
  for (const auto& ent : builtin_corpus()) {
    SrResult r = stable_rank(*ent.ring, 2);
    INFO(ent.name);
    CHECK_FALSE(r.exceeded);
    CHECK(r.sr == 1);
    CHECK(r.failures.empty());
  }
}

TEST_CASE("module-organized sweep agrees with the naive one on a matrix ring") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  CHECK_FALSE(matrix_sr1_counterexample(*A).has_value());
  // naive cross-check over all 256 pairs
  for (std::uint64_t i = 0; i < A->size(); ++i)
    for (std::uint64_t j = 0; j < A->size(); ++j) {
      std::vector<Value> row{A->element(i), A->element(j)};
      if (!is_right_unimodular(*A, row)) continue;
      CHECK(is_reducible(*A, row).has_value());
    }
}

TEST_CASE("skew corner check: solvable corner") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  SkewCorner sc = make_skew_corner(A, e(0, 0), e(0, 0));
  Sr1Check chk = skew_sr1_check(sc);
  REQUIRE(chk.ok);
  REQUIRE(chk.solver.has_value());
  for (const auto& eq : all_equations(sc)) {
    auto sol = chk.solver->fn(eq);
    REQUIRE(sol.has_value());
    CHECK(verify_solution(sc, eq, *sol));
  }
  CornerEquation bad{A->one(), A->one(), A->one()};
  CHECK_THROWS_AS(chk.solver->fn(bad), std::invalid_argument);
}

TEST_CASE("skew corner check: the degenerate (p, 0) counterexample") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  Sr1Check chk = skew_sr1_check(make_skew_corner(A, e(0, 0), A->zero()));
  REQUIRE_FALSE(chk.ok);
  REQUIRE(chk.counterexample.has_value());
  CHECK(chk.counterexample->a == A->zero());
  CHECK(chk.counterexample->x == A->zero());
  CHECK(chk.counterexample->b == e(0, 0));
}

TEST_CASE("skew corner check matches lemma 1 on unit corners") {
  for (const auto& ent : builtin_corpus()) {
    for (unsigned n = 1; n <= 2; ++n) {
      bool sr_le_n = !find_irreducible_row(*ent.ring, n).has_value();
      Sr1Check chk = skew_sr1_check(unit_corner(ent.ring, n));
      INFO(ent.name << " n=" << n);
      CHECK(sr_le_n == chk.ok);
    }
  }
}

TEST_CASE("integer rows are rejected by the finite search") {
  RingPtr Z = make_integers();
  CHECK_THROWS_AS(is_reducible(*Z, {Value(5L), Value(7L)}), std::logic_error);
  CHECK_THROWS_AS(stable_rank(*Z, 2), std::logic_error);
}
