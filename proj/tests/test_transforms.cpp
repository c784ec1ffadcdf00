#include <catch2/catch_amalgamated.hpp>

#include "srank/harness.hpp"
#include "srank/transforms.hpp"

using namespace srank;

namespace {

Value e(unsigned i, unsigned j) { return mat_unit(2, i, j, Value(1L), Value(0L)); }

Solver solver_for(RingPtr A, const Value& p, const Value& q) {
  Sr1Check chk = skew_sr1_check(make_skew_corner(A, p, q));
  REQUIRE(chk.ok);
  return *chk.solver;
}

}  // namespace

TEST_CASE("observation 5 steps replay to the original equation") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  SkewCorner sc = make_skew_corner(A, e(0, 0), A->one());
  Solver S = solver_for(A, e(0, 0), A->one());

  std::vector<Obs5Step> steps;
  for (const auto& c : carrier(*A, e(0, 0), A->one()))
    steps.push_back({Obs5Kind::Shift, c, A->zero()});
  steps.push_back({Obs5Kind::RightUnit, A->add(A->one(), e(0, 1)), A->sub(A->one(), e(0, 1))});
  steps.push_back({Obs5Kind::RightUnit, A->add(A->one(), e(1, 0)), A->sub(A->one(), e(1, 0))});
  steps.push_back({Obs5Kind::LeftUnit, e(0, 0), e(0, 0)});

  for (const auto& st : steps)
    for (const auto& eq : all_equations(sc)) {
      CornerEquation teq = obs5_apply(sc, eq, st);
      REQUIRE(valid_equation(sc, teq));
      auto tsol = S.fn(teq);
      REQUIRE(tsol.has_value());
      CHECK(verify_solution(sc, eq, obs5_back(sc, eq, st, *tsol)));
    }
}

TEST_CASE("trivial-equation witness extraction") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  Solver S = solver_for(A, e(0, 0), A->one());
  SubeqWitness w = lemma2a_witness(S);
  CHECK(verify_subequivalence(*A, e(0, 0), A->one(), w));
}

TEST_CASE("solver transport along equivalences") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  Solver S = solver_for(A, e(0, 0), e(0, 0));
  Solver T = lemma2b_transport(S, EquivWitness{e(0, 1), e(1, 0)}, EquivWitness{e(0, 1), e(1, 0)});
  CHECK(T.sc.p == e(1, 1));
  CHECK(T.sc.q == e(1, 1));
  CHECK(verify_solver_exhaustive(T) == all_equations(T.sc).size());
}

TEST_CASE("extending the second idempotent") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  Solver S = solver_for(A, e(0, 0), e(0, 0));
  Solver T = lemma3_extend(S, e(1, 1));
  CHECK(T.sc.q == A->one());
  CHECK(verify_solver_exhaustive(T) == all_equations(T.sc).size());
  CHECK_THROWS_AS(lemma3_extend(S, e(0, 0)), std::logic_error);  // not orthogonal to q
}

TEST_CASE("restricting along a common summand") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  Solver S = solver_for(A, A->one(), A->one());
  Solver T = lemma4_restrict(S, e(1, 1));
  CHECK(T.sc.p == e(0, 0));
  CHECK(T.sc.q == e(0, 0));
  CHECK(verify_solver_exhaustive(T) == all_equations(T.sc).size());
}

TEST_CASE("combining with an orthogonal equivalent copy") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  Solver S = solver_for(A, e(0, 0), e(0, 0));
  PipelineTrace trace;
  Solver T = prop6_combine(S, e(1, 1), EquivWitness{e(0, 1), e(1, 0)}, &trace);
  CHECK(T.sc.p == A->one());
  CHECK(T.sc.q == A->one());
  CHECK(verify_solver_exhaustive(T) == all_equations(T.sc).size());
  CHECK_FALSE(trace.stages.empty());
}

TEST_CASE("doubling with a degenerate remainder") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  Solver S = solver_for(A, e(0, 0), e(0, 0));
  SubeqWitness sub{e(0, 0), e(0, 0)};
  Solver T = prop6_double(S, A->zero(), sub, {}, {});
  CHECK(T.sc.p == S.sc.p);
  CHECK(verify_solver_exhaustive(T) == all_equations(T.sc).size());
}

TEST_CASE("row oracle to corner solver, rank one base") {
  RingPtr Z4 = make_zmod(4);
  Reducer red = brute_reducer(Z4, 1);
  Solver S = lemma1_forward(red);
  CHECK(verify_solver_exhaustive(S) == all_equations(S.sc).size());

  Reducer back = lemma1_backward(S, Z4);
  for (std::uint64_t i = 0; i < 4; ++i)
    for (std::uint64_t j = 0; j < 4; ++j) {
      std::vector<Value> row{Z4->element(i), Z4->element(j)};
      if (!is_right_unimodular(*Z4, row)) continue;
      auto out = back.fn(row);
      REQUIRE(out.has_value());
      CHECK(verify_reduction(*Z4, row, *out));
    }
}

TEST_CASE("row oracle to corner solver, rank two base") {
  RingPtr Z2 = make_zmod(2);
  Reducer red = brute_reducer(Z2, 2);
  Solver S = lemma1_forward(red);
  CHECK(S.sc.ring->matrix_n() == 2);
  CHECK(verify_solver_exhaustive(S) == all_equations(S.sc).size());

  Reducer back = lemma1_backward(S, Z2);
  for (std::uint64_t i = 0; i < 2; ++i)
    for (std::uint64_t j = 0; j < 2; ++j)
      for (std::uint64_t k = 0; k < 2; ++k) {
        std::vector<Value> row{Z2->element(i), Z2->element(j), Z2->element(k)};
        if (!is_right_unimodular(*Z2, row)) continue;
        auto out = back.fn(row);
        REQUIRE(out.has_value());
        CHECK(verify_reduction(*Z2, row, *out));
      }
}

TEST_CASE("widening and narrowing solvers") {
  RingPtr Z4 = make_zmod(4);
  Solver S = lemma1_forward(brute_reducer(Z4, 1));
  Solver W = widen_solver(S, 3);
  CHECK(W.sc.ring->matrix_n() == 3);
  CHECK(verify_solver_exhaustive(W) == all_equations(W.sc).size());
  Solver N = narrow_solver(W, 1);
  CHECK(N.sc.ring->matrix_n() == 1);
  CHECK(verify_solver_exhaustive(N) == all_equations(N.sc).size());
}

TEST_CASE("full pipeline on a finite matrix ring") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  Value p = e(0, 0);
  RingPtr C = make_corner(A, p);
  auto cert = is_full(*A, p);
  REQUIRE(cert.has_value());
  Theorem7Result t7 = theorem7_pipeline(A, p, brute_reducer(C, 1), *cert);
  CHECK(t7.reducer.n == 1);
  for (std::uint64_t i = 0; i < A->size(); ++i)
    for (std::uint64_t j = 0; j < A->size(); ++j) {
      std::vector<Value> row{A->element(i), A->element(j)};
      if (!is_right_unimodular(*A, row)) continue;
      auto out = t7.reducer.fn(row);
      bool brute = is_reducible(*A, row).has_value();
      REQUIRE(out.has_value() == brute);
      if (out) CHECK(verify_reduction(*A, row, *out));
    }
}

TEST_CASE("pipeline degenerates to lemma 1 when the corner is everything") {
  RingPtr Z2 = make_zmod(2);
  RingPtr C = make_corner(Z2, Z2->one());
  auto cert = is_full(*Z2, Z2->one());
  REQUIRE(cert.has_value());
  REQUIRE(cert->t() == 1);
  Theorem7Result t7 = theorem7_pipeline(Z2, Z2->one(), brute_reducer(C, 1), *cert);
  std::vector<Value> row{Value(0L), Value(1L)};
  auto out = t7.reducer.fn(row);
  REQUIRE(out.has_value());
  CHECK(verify_reduction(*Z2, row, *out));
}

TEST_CASE("corner-to-ambient idempotent construction") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  Value p = e(0, 0);
  auto cert = is_full(*A, p);
  REQUIRE(cert.has_value());
  Theorem8Result t8 = theorem8_construct(A, p, *cert, 1);
  CHECK(t8.t == 2);
  CHECK(t8.mt->is_idempotent(t8.qq));
  CHECK(t8.mt->mul(t8.alpha, t8.beta) == mat_unit(2, 0, 0, A->one(), A->zero()));
  CHECK(t8.mt->mul(t8.beta, t8.alpha) == t8.qq);
  CHECK(t8.bound == 1);
}

TEST_CASE("rank bound arithmetic") {
  CHECK(vaserstein_bound(1, 2) == 1);
  CHECK(vaserstein_bound(2, 2) == 2);
  CHECK(vaserstein_bound(5, 2) == 3);
  CHECK(vaserstein_bound(3, 2) == 2);
  auto [mb_n, mb_t] = morita_bounds(2, 3, 5, 4);
  CHECK(mb_n == 2 * 4 - 2 + 1);
  CHECK(mb_t == 3 * 5 - 3 + 1);
}
