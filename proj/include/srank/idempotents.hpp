#pragma once

// Idempotent calculus: orthogonality, the partial order p <= q, Murray-von
// Neumann equivalence and subequivalence with explicit witnesses, direct sums
// realized inside matrix rings, and fullness certificates for ApA = A.

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "srank/finite_ops.hpp"
#include "srank/ring.hpp"

namespace srank {

inline void require_idempotent(const Ring& R, const Value& p, const char* who) {
  if (!R.is_idempotent(p)) throw std::invalid_argument(std::string(who) + ": not an idempotent");
}

inline bool orthogonal(const Ring& R, const Value& p, const Value& q) {
  Value z = R.zero();
  return R.mul(p, q) == z && R.mul(q, p) == z;
}

// p <= q, i.e. p = pq = qp
inline bool idem_leq(const Ring& R, const Value& p, const Value& q) {
  return R.mul(p, q) == p && R.mul(q, p) == p;
}

// a in pRq, b in qRp with ab = p and ba = q
struct EquivWitness {
  Value a, b;
};

inline bool verify_equivalence(const Ring& R, const Value& p, const Value& q, const EquivWitness& w) {
  return R.mul(p, R.mul(w.a, q)) == w.a && R.mul(q, R.mul(w.b, p)) == w.b &&
         R.mul(w.a, w.b) == p && R.mul(w.b, w.a) == q;
}

// members of the carrier p R q, in element order
inline std::vector<Value> carrier(const Ring& R, const Value& p, const Value& q) {
  if (!R.enumerable()) throw std::logic_error("carrier: ring is not enumerable");
  std::vector<Value> out;
  if (const FastEngine* E = R.engine()) {
    for (auto i : engine_carrier(*E, R.index_of(p), R.index_of(q))) out.push_back(R.element(i));
    return out;
  }
  std::uint64_t n = R.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    Value v = R.element(i);
    if (R.mul(p, R.mul(v, q)) == v) out.push_back(v);
  }
  return out;
}

// first witness of p ~ q in enumeration order, if any
inline std::optional<EquivWitness> equivalent(const Ring& R, const Value& p, const Value& q) {
  require_idempotent(R, p, "equivalent");
  require_idempotent(R, q, "equivalent");
  auto pq = carrier(R, p, q);
  auto qp = carrier(R, q, p);
  if (pq.size() * qp.size() > (std::uint64_t(1) << 26))
    throw std::logic_error("equivalent: carrier search above cap");
  for (const auto& a : pq)
    for (const auto& b : qp)
      if (R.mul(a, b) == p && R.mul(b, a) == q) return EquivWitness{a, b};
  return std::nullopt;
}

// a in pRq, b in qRp with ab = p; then ba is an idempotent below q equivalent to p
struct SubeqWitness {
  Value a, b;
};

inline bool verify_subequivalence(const Ring& R, const Value& p, const Value& q, const SubeqWitness& w) {
  return R.mul(p, R.mul(w.a, q)) == w.a && R.mul(q, R.mul(w.b, p)) == w.b && R.mul(w.a, w.b) == p;
}

inline std::optional<SubeqWitness> subequivalent(const Ring& R, const Value& p, const Value& q) {
  require_idempotent(R, p, "subequivalent");
  require_idempotent(R, q, "subequivalent");
  auto pq = carrier(R, p, q);
  auto qp = carrier(R, q, p);
  if (pq.size() * qp.size() > (std::uint64_t(1) << 26))
    throw std::logic_error("subequivalent: carrier search above cap");
  for (const auto& a : pq)
    for (const auto& b : qp)
      if (R.mul(a, b) == p) return SubeqWitness{a, b};
  return std::nullopt;
}

inline std::vector<Value> enumerate_idempotents(const Ring& R) {
  if (!R.enumerable()) throw std::logic_error("enumerate_idempotents: ring is not enumerable");
  std::vector<Value> out;
  if (const FastEngine* E = R.engine()) {
    for (std::uint64_t i = 0; i < E->size(); ++i)
      if (E->mul(i, i) == i) out.push_back(R.element(i));
    return out;
  }
  std::uint64_t n = R.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    Value v = R.element(i);
    if (R.mul(v, v) == v) out.push_back(v);
  }
  return out;
}

// Orthogonal direct sums are realized as diagonal idempotents of a matrix
// ring over A. diag_idem places the given idempotents down the diagonal.
struct MatrixIdem {
  RingPtr mt;  // M_t(A)
  Value e;
};

inline MatrixIdem diag_idem(RingPtr A, const std::vector<Value>& ps) {
  unsigned t = (unsigned)ps.size();
  Value z = A->zero();
  Value e = block_matrix(t, [&](unsigned i, unsigned j) { return i == j ? ps[i] : z; });
  return MatrixIdem{make_matrix(std::move(A), t), std::move(e)};
}

inline MatrixIdem direct_sum(RingPtr A, const Value& p, const Value& q) {
  require_idempotent(*A, p, "direct_sum");
  require_idempotent(*A, q, "direct_sum");
  return diag_idem(std::move(A), {p, q});
}

inline MatrixIdem n_times(RingPtr A, const Value& p, unsigned n) {
  require_idempotent(*A, p, "n_times");
  if (n < 1) throw std::invalid_argument("n_times: need n >= 1");
  return diag_idem(std::move(A), std::vector<Value>(n, p));
}

// Certificate that ApA = A: pairs (x_i, y_i) with sum x_i p y_i = 1.
struct FullnessCert {
  std::vector<std::pair<Value, Value>> pairs;
  unsigned t() const { return (unsigned)pairs.size(); }
};

inline bool verify_fullness(const Ring& R, const Value& p, const FullnessCert& c) {
  if (c.pairs.empty()) return false;
  Value s = R.zero();
  for (const auto& [x, y] : c.pairs) s = R.add(s, R.mul(x, R.mul(p, y)));
  return s == R.one();
}

// Decide ApA = A on a finite ring; on success return a certificate.
inline std::optional<FullnessCert> is_full(const Ring& R, const Value& p) {
  require_idempotent(R, p, "is_full");
  if (!R.enumerable() || R.size() > kTableCap) throw std::logic_error("is_full: ring above table cap");
  std::uint64_t n = R.size();

  // additive closure of { x p y }, each member tagged with its expression
  std::vector<Value> elems(n);
  for (std::uint64_t i = 0; i < n; ++i) elems[i] = R.element(i);

  using Expr = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
  std::vector<char> in(n, 0);
  std::vector<std::uint64_t> members;
  std::vector<Expr> expr;

  std::vector<std::uint64_t> gens;
  std::vector<Expr> gexpr;
  {
    std::vector<char> seen(n, 0);
    for (std::uint64_t x = 0; x < n; ++x) {
      Value xp = R.mul(elems[x], p);
      for (std::uint64_t y = 0; y < n; ++y) {
        std::uint64_t g = R.index_of(R.mul(xp, elems[y]));
        if (seen[g]) continue;
        seen[g] = 1;
        if (g == R.index_of(R.zero())) continue;
        gens.push_back(g);
        gexpr.push_back({{x, y}});
      }
    }
  }
  std::uint64_t zi = R.index_of(R.zero());
  in[zi] = 1;
  members.push_back(zi);
  expr.push_back({});
  for (std::size_t head = 0; head < members.size(); ++head)
    for (std::size_t t = 0; t < gens.size(); ++t) {
      std::uint64_t m2 = R.index_of(R.add(elems[members[head]], elems[gens[t]]));
      if (in[m2]) continue;
      in[m2] = 1;
      members.push_back(m2);
      Expr e = expr[head];
      e.push_back(gexpr[t][0]);
      expr.push_back(std::move(e));
    }

  std::uint64_t oi = R.index_of(R.one());
  if (!in[oi]) return std::nullopt;
  std::size_t pos = 0;
  while (members[pos] != oi) ++pos;
  FullnessCert c;
  for (auto [x, y] : expr[pos]) c.pairs.emplace_back(elems[x], elems[y]);
  return c;
}

// The certificate in matrix form: a witness for 1 subequivalent to t copies
// of p, living in M_t(A). one_hat is 1 placed in the (0,0) block.
struct FullnessMtWitness {
  RingPtr mt;
  Value one_hat, tp;
  SubeqWitness w;  // w.a in one_hat M tp, w.b in tp M one_hat, ab = one_hat
};

inline FullnessMtWitness fullness_witness_mt(RingPtr A, const Value& p, const FullnessCert& c) {
  const Ring& R = *A;
  if (!verify_fullness(R, p, c)) throw std::invalid_argument("fullness certificate does not verify");
  unsigned t = c.t();
  Value z = R.zero();
  FullnessMtWitness out;
  out.mt = make_matrix(A, t);
  out.one_hat = mat_unit(t, 0, 0, R.one(), z);
  out.tp = block_matrix(t, [&](unsigned i, unsigned j) { return i == j ? p : z; });
  out.w.a = block_matrix(t, [&](unsigned i, unsigned j) {
    return i == 0 ? R.mul(c.pairs[j].first, p) : z;
  });
  out.w.b = block_matrix(t, [&](unsigned i, unsigned j) {
    return j == 0 ? R.mul(p, c.pairs[i].second) : z;
  });
  if (!verify_subequivalence(*out.mt, out.one_hat, out.tp, out.w))
    throw std::logic_error("fullness witness construction failed");
  return out;
}

}  // namespace srank
