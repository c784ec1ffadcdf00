#include <catch2/catch_amalgamated.hpp>

#include "srank/idempotents.hpp"

using namespace srank;

namespace {

Value e(unsigned i, unsigned j) { return mat_unit(2, i, j, Value(1L), Value(0L)); }

}  // namespace

TEST_CASE("idempotent enumeration counts") {
  CHECK(enumerate_idempotents(*make_zmod(4)).size() == 2);
  CHECK(enumerate_idempotents(*make_product({make_zmod(2), make_zmod(2)})).size() == 4);
  CHECK(enumerate_idempotents(*make_matrix(make_zmod(2), 2)).size() == 8);
}

TEST_CASE("orthogonality and the partial order") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  CHECK(orthogonal(*A, e(0, 0), e(1, 1)));
  CHECK_FALSE(orthogonal(*A, e(0, 0), A->one()));
  CHECK(idem_leq(*A, e(0, 0), A->one()));
  CHECK_FALSE(idem_leq(*A, A->one(), e(0, 0)));
  CHECK(idem_leq(*A, A->zero(), e(1, 1)));
}

TEST_CASE("equivalence of the two diagonal units") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  auto w = equivalent(*A, e(0, 0), e(1, 1));
  REQUIRE(w.has_value());
  CHECK(verify_equivalence(*A, e(0, 0), e(1, 1), *w));
  CHECK(A->mul(w->a, w->b) == e(0, 0));
  CHECK(A->mul(w->b, w->a) == e(1, 1));
}

TEST_CASE("subequivalence and its failure") {
  RingPtr P = make_product({make_zmod(2), make_zmod(2)});
  Value p1 = Value(std::vector<Value>{Value(1L), Value(0L)});
  Value p2 = Value(std::vector<Value>{Value(0L), Value(1L)});
  CHECK_FALSE(subequivalent(*P, p1, p2).has_value());
  auto w = subequivalent(*P, p1, P->one());
  REQUIRE(w.has_value());
  CHECK(verify_subequivalence(*P, p1, P->one(), *w));

  RingPtr A = make_matrix(make_zmod(2), 2);
  auto w2 = subequivalent(*A, e(0, 0), A->one());
  REQUIRE(w2.has_value());
  CHECK(verify_subequivalence(*A, e(0, 0), A->one(), *w2));
}

TEST_CASE("carriers respect the corner") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  auto pq = carrier(*A, e(0, 0), e(1, 1));
  CHECK(pq.size() == 2);  // 0 and e12
  for (const auto& v : pq) CHECK(A->mul(e(0, 0), A->mul(v, e(1, 1))) == v);
}

TEST_CASE("fullness certificates") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  auto c = is_full(*A, e(0, 0));
  REQUIRE(c.has_value());
  CHECK(c->t() == 2);
  CHECK(verify_fullness(*A, e(0, 0), *c));

  RingPtr P = make_product({make_zmod(2), make_zmod(2)});
  Value p1 = Value(std::vector<Value>{Value(1L), Value(0L)});
  CHECK_FALSE(is_full(*P, p1).has_value());

  RingPtr Z4 = make_zmod(4);
  auto c4 = is_full(*Z4, Z4->one());
  REQUIRE(c4.has_value());
  CHECK(c4->t() == 1);
}

TEST_CASE("fullness witness in matrix form") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  auto c = is_full(*A, e(0, 0));
  REQUIRE(c.has_value());
  FullnessMtWitness w = fullness_witness_mt(A, e(0, 0), *c);
  CHECK(w.mt->matrix_n() == c->t());
  CHECK(verify_subequivalence(*w.mt, w.one_hat, w.tp, w.w));

  FullnessCert bogus;
  bogus.pairs = {{e(0, 0), e(0, 0)}};
  CHECK_THROWS_AS(fullness_witness_mt(A, e(0, 0), bogus), std::invalid_argument);
}

TEST_CASE("direct sums sit on the diagonal") {
  RingPtr Z4 = make_zmod(4);
  MatrixIdem d = direct_sum(Z4, Z4->one(), Z4->zero());
  CHECK(d.mt->is_idempotent(d.e));
  CHECK(mat_entry(d.e, 2, 0, 0) == Z4->one());
  CHECK(mat_entry(d.e, 2, 1, 1) == Z4->zero());
  MatrixIdem n3 = n_times(Z4, Z4->one(), 3);
  CHECK(n3.e == n3.mt->one());
}
