#include <catch2/catch_amalgamated.hpp>

#include "srank/ring.hpp"
#include "srank/snf.hpp"
#include "srank/stablerank.hpp"

using namespace srank;

namespace {

// exhaustive unital ring axioms; meant for rings of at most 16 elements
void check_axioms(const Ring& R) {
  std::uint64_t n = R.size();
  REQUIRE(n <= 16);
  std::vector<Value> el(n);
  for (std::uint64_t i = 0; i < n; ++i) el[i] = R.element(i);
  Value z = R.zero(), o = R.one();
  for (const auto& a : el) {
    CHECK(R.add(a, z) == a);
    CHECK(R.mul(a, o) == a);
    CHECK(R.mul(o, a) == a);
    CHECK(R.add(a, R.neg(a)) == z);
  }
  for (const auto& a : el)
    for (const auto& b : el) {
      CHECK(R.add(a, b) == R.add(b, a));
      for (const auto& c : el) {
        CHECK(R.add(R.add(a, b), c) == R.add(a, R.add(b, c)));
        CHECK(R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c)));
        CHECK(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
        CHECK(R.mul(R.add(a, b), c) == R.add(R.mul(a, c), R.mul(b, c)));
      }
    }
}

void check_engine_agrees(const Ring& R) {
  const FastEngine* E = R.engine();
  REQUIRE(E != nullptr);
  REQUIRE(E->size() == R.size());
  for (std::uint64_t i = 0; i < E->size(); ++i) {
    REQUIRE(R.index_of(R.element(i)) == i);
    for (std::uint64_t j = 0; j < E->size(); ++j) {
      CHECK(R.element(E->add(i, j)) == R.add(R.element(i), R.element(j)));
      CHECK(R.element(E->mul(i, j)) == R.mul(R.element(i), R.element(j)));
    }
  }
  CHECK(E->zero() == R.index_of(R.zero()));
  CHECK(E->one() == R.index_of(R.one()));
}

json t2_spec() {
  auto unpack = [](unsigned i) { return std::array<unsigned, 3>{(i >> 2) & 1, (i >> 1) & 1, i & 1}; };
  std::vector<std::vector<unsigned>> add(8, std::vector<unsigned>(8)), mul(8, std::vector<unsigned>(8));
  for (unsigned i = 0; i < 8; ++i)
    for (unsigned j = 0; j < 8; ++j) {
      auto [a1, b1, c1] = unpack(i);
      auto [a2, b2, c2] = unpack(j);
      add[i][j] = ((a1 ^ a2) << 2) | ((b1 ^ b2) << 1) | (c1 ^ c2);
      mul[i][j] = ((a1 & a2) << 2) | (((a1 & b2) ^ (b1 & c2)) << 1) | (c1 & c2);
    }
  return json{{"type", "table"}, {"add", add}, {"mul", mul}, {"zero", 0}, {"one", 5}};
}

}  // namespace

TEST_CASE("ring axioms hold exhaustively on small rings") {
  check_axioms(*make_zmod(2));
  check_axioms(*make_zmod(4));
  check_axioms(*make_product({make_zmod(2), make_zmod(3)}));
  check_axioms(*ring_from_spec(t2_spec()));
  check_axioms(*make_matrix(make_zmod(2), 2));
}

TEST_CASE("engines agree with value arithmetic") {
  check_engine_agrees(*make_zmod(4));
  check_engine_agrees(*make_product({make_zmod(2), make_zmod(2)}));
  check_engine_agrees(*ring_from_spec(t2_spec()));
  check_engine_agrees(*make_matrix(make_zmod(2), 2));
}

TEST_CASE("spec round trip preserves the ring") {
  for (auto& R : {make_zmod(3), make_matrix(make_zmod(2), 2),
                  make_product({make_zmod(2), make_zmod(3)})}) {
    RingPtr S = ring_from_spec(R->spec_json());
    REQUIRE(S->size() == R->size());
    for (std::uint64_t i = 0; i < R->size(); ++i) CHECK(S->element(i) == R->element(i));
  }
}

TEST_CASE("integers are infinite and exact") {
  RingPtr Z = make_integers();
  CHECK_FALSE(Z->finite());
  Value big(mpz_class("123456789012345678901234567890"));
  CHECK(Z->add(big, Z->neg(big)) == Z->zero());
  CHECK(Z->mul(big, Z->one()) == big);
}

TEST_CASE("corner ring of a matrix unit") {
  RingPtr A = make_matrix(make_zmod(2), 2);
  Value z(0L), o(1L);
  Value e11 = mat_unit(2, 0, 0, o, z);
  RingPtr C = make_corner(A, e11);
  REQUIRE(C->size() == 2);
  CHECK(C->one() == e11);
  CHECK(C->zero() == A->zero());
  check_axioms(*C);
}

TEST_CASE("matrix embedding is a nonunital ring map") {
  RingPtr M2 = make_matrix(make_zmod(2), 2);
  for (std::uint64_t i = 0; i < M2->size(); ++i)
    for (std::uint64_t j = 0; j < M2->size(); ++j) {
      Value a = M2->element(i), b = M2->element(j);
      RingPtr M3 = make_matrix(make_zmod(2), 3);
      CHECK(embed(*M2, M2->mul(a, b), 3) == M3->mul(embed(*M2, a, 3), embed(*M2, b, 3)));
      CHECK(embed(*M2, M2->add(a, b), 3) == M3->add(embed(*M2, a, 3), embed(*M2, b, 3)));
    }
}

TEST_CASE("smith normal form invariants and transforms") {
  auto check_snf = [](IntMat m) {
    SmithForm s = smith_normal_form(m);
    CHECK(mat_mul(mat_mul(s.u, m), s.v) == s.d);
    CHECK(abs(mat_det(s.u)) == 1);
    CHECK(abs(mat_det(s.v)) == 1);
    auto inv = s.invariants();
    for (std::size_t i = 0; i + 1 < inv.size(); ++i)
      if (inv[i + 1] != 0) CHECK((inv[i] != 0 && inv[i + 1] % inv[i] == 0));
    return inv;
  };

  IntMat d23(2, 2);
  d23.at(0, 0) = 2;
  d23.at(1, 1) = 3;
  auto inv = check_snf(d23);
  CHECK(inv == std::vector<mpz_class>{1, 6});

  IntMat r(1, 2);
  r.at(0, 0) = 4;
  r.at(0, 1) = 6;
  CHECK(check_snf(r) == std::vector<mpz_class>{2});

  IntMat m(3, 3);
  long vals[9] = {2, 4, 4, -6, 6, 12, 10, 4, 16};
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j) m.at(i, j) = vals[i * 3 + j];
  check_snf(m);

  // a batch of deterministic pseudo-random shapes
  std::uint64_t state = 12345;
  auto next = [&] { state = state * 6364136223846793005ULL + 1442695040888963407ULL; return (long)((state >> 33) % 41) - 20; };
  for (unsigned rows = 1; rows <= 3; ++rows)
    for (unsigned cols = 1; cols <= 4; ++cols)
      for (int rep = 0; rep < 10; ++rep) {
        IntMat a(rows, cols);
        for (unsigned i = 0; i < rows; ++i)
          for (unsigned j = 0; j < cols; ++j) a.at(i, j) = next();
        check_snf(a);
      }
}

TEST_CASE("integer right inverses") {
  RingPtr Z = make_integers();
  auto xs = solve_right_inverse(*Z, {Value(3L), Value(5L)});
  REQUIRE(xs.has_value());
  CHECK(Value(3L).scalar() * (*xs)[0].scalar() + Value(5L).scalar() * (*xs)[1].scalar() == 1);

  CHECK_FALSE(solve_right_inverse(*Z, {Value(4L), Value(6L)}).has_value());

  RingPtr M2 = make_matrix(make_zmod(2), 2);
  Value z(0L), o(1L);
  Value e11 = mat_unit(2, 0, 0, o, z), e22 = mat_unit(2, 1, 1, o, z);
  auto ms = solve_right_inverse(*M2, {e11, e22});
  REQUIRE(ms.has_value());
  CHECK(M2->add(M2->mul(e11, (*ms)[0]), M2->mul(e22, (*ms)[1])) == M2->one());

  RingPtr MZ = make_matrix(make_integers(), 2);
  Value E11 = mat_unit(2, 0, 0, Value(1L), Value(0L)), E22 = mat_unit(2, 1, 1, Value(1L), Value(0L));
  auto zs = solve_right_inverse(*MZ, {E11, E22});
  REQUIRE(zs.has_value());
  CHECK(MZ->add(MZ->mul(E11, (*zs)[0]), MZ->mul(E22, (*zs)[1])) == MZ->one());
}

TEST_CASE("bad specs are rejected") {
  CHECK_THROWS_AS(ring_from_spec(json{{"type", "nope"}}), std::invalid_argument);
  CHECK_THROWS_AS(ring_from_spec(json::array()), std::invalid_argument);
  CHECK_THROWS_AS(make_zmod(1), std::invalid_argument);
}
