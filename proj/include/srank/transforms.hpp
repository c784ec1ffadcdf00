#pragma once

// Witness-preserving transforms between solvers and reducers:
//  - a stable-range-n reducer for A is the same data as a solver for the skew
//    corner (E00, 1) of M_n(A), in both directions;
//  - solvers transport along equivalences of idempotents and extend or
//    restrict along orthogonal summands;
//  - combining these doubles the corner and yields the two main pipelines:
//    a reducer for A out of one for a full corner pAp, and the corner
//    stable-rank bound out of a fullness certificate.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "srank/idempotents.hpp"
#include "srank/ring.hpp"
#include "srank/stablerank.hpp"

namespace srank {

struct PipelineTrace {
  std::vector<json> stages;
  void note(std::string s) { stages.push_back(json{{"step", std::move(s)}}); }
  void note(std::string s, json data) {
    data["step"] = std::move(s);
    stages.push_back(std::move(data));
  }
  json to_json() const { return json(stages); }
};

inline void tf_check(bool ok, const char* msg) {
  if (!ok) throw std::logic_error(std::string("transform invariant failed: ") + msg);
}

inline Value mul3(const Ring& R, const Value& a, const Value& b, const Value& c) {
  return R.mul(a, R.mul(b, c));
}

// ---------------------------------------------------------------------------
// elementary equation moves (shift, unit twists) with their witness back-maps

enum class Obs5Kind { Shift, RightUnit, LeftUnit };

struct Obs5Step {
  Obs5Kind kind;
  Value t, tinv;  // shift offset (tinv unused), or the unit and its inverse
};

inline CornerEquation obs5_apply(const SkewCorner& sc, const CornerEquation& eq, const Obs5Step& st) {
  const Ring& R = *sc.ring;
  switch (st.kind) {
    case Obs5Kind::Shift:
      return {R.add(eq.a, R.mul(eq.b, st.t)), eq.x,
              R.mul(eq.b, R.sub(sc.p, R.mul(st.t, eq.x)))};
    case Obs5Kind::RightUnit:
      tf_check(R.mul(st.t, st.tinv) == sc.q && R.mul(st.tinv, st.t) == sc.q, "unit of qAq");
      return {R.mul(eq.a, st.t), R.mul(st.tinv, eq.x), eq.b};
    case Obs5Kind::LeftUnit:
      tf_check(R.mul(st.t, st.tinv) == sc.p && R.mul(st.tinv, st.t) == sc.p, "unit of pAp");
      return {R.mul(st.t, eq.a), R.mul(eq.x, st.tinv), mul3(R, st.t, eq.b, st.tinv)};
  }
  throw std::logic_error("unreachable");
}

inline CornerSolution obs5_back(const SkewCorner& sc, const CornerEquation& before,
                                const Obs5Step& st, const CornerSolution& sol) {
  const Ring& R = *sc.ring;
  switch (st.kind) {
    case Obs5Kind::Shift:
      return {R.add(st.t, R.sub(sol.y, mul3(R, st.t, before.x, sol.y))), sol.z};
    case Obs5Kind::RightUnit:
      return {R.mul(sol.y, st.tinv), R.mul(st.t, sol.z)};
    case Obs5Kind::LeftUnit:
      return {R.mul(st.tinv, sol.y), R.mul(sol.z, st.t)};
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// reducer <-> corner solver (both directions of the rank-n dictionary)

// A reducer for C of rank n becomes a solver for the skew corner
// (E00 p, diag p) of M_n(B), where p = 1_C and B is an ambient ring whose
// operations restrict to C (B = C for a plain ring, the ambient for a corner).
inline Solver lemma1_forward(const Reducer& red, RingPtr ambient = nullptr) {
  RingPtr C = red.ring;
  RingPtr B = ambient ? ambient : C;
  unsigned n = red.n;
  Value pp = C->one(), zB = B->zero();
  RingPtr M = make_matrix(B, n);
  Value P = mat_unit(n, 0, 0, pp, zB);
  Value Q = block_matrix(n, [&](unsigned i, unsigned j) { return i == j ? pp : zB; });
  SkewCorner sc = make_skew_corner(M, P, Q);
  auto fn = [red, n, zB, sc](const CornerEquation& eq) -> std::optional<CornerSolution> {
    if (!valid_equation(sc, eq)) throw std::invalid_argument("malformed corner equation");
    std::vector<Value> row;
    for (unsigned i = 0; i < n; ++i) row.push_back(mat_entry(eq.a, n, 0, i));
    row.push_back(mat_entry(eq.b, n, 0, 0));
    auto out = red.fn(row);
    if (!out) return std::nullopt;
    Value zeta = block_matrix(n, [&](unsigned i, unsigned j) { return i == 0 ? out->c[j] : zB; });
    Value xi = block_matrix(n, [&](unsigned i, unsigned j) { return j == 0 ? out->cert[i] : zB; });
    return CornerSolution{zeta, xi};
  };
  return Solver{sc, fn};
}

// Inverse direction: a solver for (E00 p, diag p) in M_n(B) yields a reducer
// for C of rank n. Needs decidable right inverses in C to normalize b.
inline Reducer lemma1_backward(const Solver& S, RingPtr C) {
  RingPtr M = S.sc.ring;
  unsigned n = M->matrix_n();
  Value zB = M->matrix_base()->zero();
  Reducer red;
  red.ring = C;
  red.n = n;
  red.fn = [S, C, n, zB](const std::vector<Value>& row) -> std::optional<ReduceOutput> {
    if (row.size() != std::size_t(n) + 1) throw std::invalid_argument("row has wrong length");
    auto xs = solve_right_inverse(*C, row);
    if (!xs) throw std::invalid_argument("row is not right unimodular");
    Value b2 = C->mul(row[n], (*xs)[n]);
    Value alpha = block_matrix(n, [&](unsigned i, unsigned j) { return i == 0 ? row[j] : zB; });
    Value chi = block_matrix(n, [&](unsigned i, unsigned j) { return j == 0 ? (*xs)[i] : zB; });
    Value beta = mat_unit(n, 0, 0, b2, zB);
    auto sol = S.fn({alpha, chi, beta});
    if (!sol) return std::nullopt;
    ReduceOutput out;
    for (unsigned i = 0; i < n; ++i) {
      out.c.push_back(C->mul((*xs)[n], mat_entry(sol->y, n, 0, i)));
      out.cert.push_back(mat_entry(sol->z, n, i, 0));
    }
    return out;
  };
  return red;
}

// ---------------------------------------------------------------------------
// resizing a matrix-corner solver

inline Solver widen_solver(const Solver& S, unsigned N) {
  RingPtr M = S.sc.ring;
  unsigned n = M->matrix_n();
  RingPtr B = M->matrix_base();
  RingPtr MN = make_matrix(B, N);
  Value zB = B->zero();
  SkewCorner sc = make_skew_corner(MN, embed_matrix(S.sc.p, n, N, zB), embed_matrix(S.sc.q, n, N, zB));
  auto fn = [S, n, N, zB](const CornerEquation& eq) -> std::optional<CornerSolution> {
    CornerEquation small{extract_matrix(eq.a, N, n), extract_matrix(eq.x, N, n),
                         extract_matrix(eq.b, N, n)};
    auto sol = S.fn(small);
    if (!sol) return std::nullopt;
    return CornerSolution{embed_matrix(sol->y, n, N, zB), embed_matrix(sol->z, n, N, zB)};
  };
  return Solver{sc, fn};
}

// assumes the corner idempotents are supported in the upper-left n x n block
inline Solver narrow_solver(const Solver& S, unsigned n) {
  RingPtr MN = S.sc.ring;
  unsigned N = MN->matrix_n();
  RingPtr B = MN->matrix_base();
  Value zB = B->zero();
  RingPtr Mn = make_matrix(B, n);
  SkewCorner sc = make_skew_corner(Mn, extract_matrix(S.sc.p, N, n), extract_matrix(S.sc.q, N, n));
  auto fn = [S, n, N, zB](const CornerEquation& eq) -> std::optional<CornerSolution> {
    CornerEquation big{embed_matrix(eq.a, n, N, zB), embed_matrix(eq.x, n, N, zB),
                       embed_matrix(eq.b, n, N, zB)};
    auto sol = S.fn(big);
    if (!sol) return std::nullopt;
    return CornerSolution{extract_matrix(sol->y, N, n), extract_matrix(sol->z, N, n)};
  };
  return Solver{sc, fn};
}

// ---------------------------------------------------------------------------
// solver transports

// A solver witnesses p subequivalent to q: probe the trivial equation.
inline SubeqWitness lemma2a_witness(const Solver& S) {
  const Ring& R = *S.sc.ring;
  auto sol = S.fn({R.zero(), R.zero(), S.sc.p});
  tf_check(sol.has_value(), "solver refused the trivial equation");
  Value y = R.mul(S.sc.p, R.mul(sol->y, S.sc.q));  // already there; normalize defensively
  tf_check(R.mul(y, sol->z) == S.sc.p, "probe witness");
  return SubeqWitness{y, sol->z};
}

// Transport a solver for (p, q) along p ~ p2 and q ~ q2.
// pw = (u, u'): u in pAp2, u' in p2Ap, u u' = p, u' u = p2; qw likewise.
inline Solver lemma2b_transport(const Solver& S, const EquivWitness& pw, const EquivWitness& qw) {
  RingPtr R = S.sc.ring;
  Value p2 = R->mul(pw.b, pw.a), q2 = R->mul(qw.b, qw.a);
  tf_check(verify_equivalence(*R, S.sc.p, p2, pw), "p-side equivalence");
  tf_check(verify_equivalence(*R, S.sc.q, q2, qw), "q-side equivalence");
  SkewCorner sc = make_skew_corner(R, p2, q2);
  auto fn = [S, R, pw, qw](const CornerEquation& eq) -> std::optional<CornerSolution> {
    CornerEquation up{mul3(*R, pw.a, eq.a, qw.b), mul3(*R, qw.a, eq.x, pw.b),
                      mul3(*R, pw.a, eq.b, pw.b)};
    auto sol = S.fn(up);
    if (!sol) return std::nullopt;
    return CornerSolution{mul3(*R, pw.b, sol->y, qw.a), mul3(*R, qw.b, sol->z, pw.a)};
  };
  return Solver{sc, fn};
}

// Extend a solver for (p, q) to (p, q + s) for s orthogonal to q.
inline Solver lemma3_extend(const Solver& S, const Value& s) {
  RingPtr R = S.sc.ring;
  Value p = S.sc.p, q = S.sc.q;
  tf_check(R->is_idempotent(s) && orthogonal(*R, s, q), "extension summand");
  Value Q2 = R->add(q, s);
  SkewCorner sc = make_skew_corner(R, p, Q2);
  auto fn = [S, R, q, s, Q2](const CornerEquation& eq) -> std::optional<CornerSolution> {
    CornerEquation inner{R->mul(eq.a, q), R->mul(q, eq.x),
                         R->add(eq.b, mul3(*R, eq.a, s, eq.x))};
    auto sol = S.fn(inner);
    if (!sol) return std::nullopt;
    Value sxy = mul3(*R, s, eq.x, sol->y);
    Value u = R->add(Q2, sxy), uinv = R->sub(Q2, sxy);  // (sxy)^2 = 0
    tf_check(R->mul(u, uinv) == Q2, "nilpotent unit");
    return CornerSolution{R->mul(sol->y, uinv), R->mul(u, sol->z)};
  };
  return Solver{sc, fn};
}

// Restrict a solver for (p + s, q + s) to (p, q) for s orthogonal to both.
inline Solver lemma4_restrict(const Solver& S, const Value& s) {
  RingPtr R = S.sc.ring;
  Value p = R->sub(S.sc.p, s), q = R->sub(S.sc.q, s);
  tf_check(R->is_idempotent(s) && R->is_idempotent(p) && R->is_idempotent(q) &&
               orthogonal(*R, s, p) && orthogonal(*R, s, q),
           "restriction summand");
  SkewCorner sc = make_skew_corner(R, p, q);
  auto fn = [S, R, p, q, s](const CornerEquation& eq) -> std::optional<CornerSolution> {
    CornerEquation lifted{R->add(eq.a, s), R->add(eq.x, s), eq.b};
    auto sol = S.fn(lifted);
    if (!sol) return std::nullopt;
    tf_check(R->mul(s, sol->z) == s, "lifted inverse fixes the summand");
    Value y = mul3(*R, p, sol->y, q), z = R->mul(sol->z, p);
    tf_check(R->mul(R->add(eq.a, R->mul(eq.b, y)), z) == p, "projected solution");
    return CornerSolution{y, z};
  };
  return Solver{sc, fn};
}

// ---------------------------------------------------------------------------
// corner doubling

// From a solver for (p, q) and an idempotent r ~ p orthogonal to both, build
// a solver for (p + r, q + r). prw = (w, w'): w in pAr, ww' = p, w'w = r.
inline Solver prop6_combine(const Solver& S0, const Value& r, const EquivWitness& prw,
                            PipelineTrace* trace = nullptr) {
  RingPtr R = S0.sc.ring;
  Value p = S0.sc.p, q = S0.sc.q;
  tf_check(R->is_idempotent(r) && orthogonal(*R, r, p) && orthogonal(*R, r, q), "summand r");
  tf_check(verify_equivalence(*R, p, r, prw), "p ~ r witness");

  if (trace) trace->note("combine: enlarging the corner by an equivalent orthogonal summand");
  Solver S = S0;
  Value pn = p;
  EquivWitness w = prw;
  bool normalized = false;
  Value y0, z0;
  if (!idem_leq(*R, p, q)) {
    auto sw = lemma2a_witness(S0);
    y0 = sw.a;
    z0 = sw.b;
    pn = R->mul(z0, y0);  // below q, equivalent to p
    S = lemma2b_transport(S0, EquivWitness{y0, z0}, EquivWitness{q, q});
    w = EquivWitness{R->mul(z0, prw.a), R->mul(prw.b, y0)};
    normalized = true;
    if (trace) trace->note("combine: replaced p by an equivalent idempotent below q");
  }
  Solver S_rq = lemma2b_transport(S, w, EquivWitness{q, q});  // solver for (r, q)

  Value P = R->add(pn, r), Q = R->add(q, r);
  SkewCorner sc = make_skew_corner(R, P, Q);
  Value pn2 = pn, r2 = r, q2 = q;
  auto fn = [R, S, S_rq, pn2, r2, q2, P, Q, sc](const CornerEquation& eq0)
      -> std::optional<CornerSolution> {
    const Ring& A = *R;
    const Value &pn = pn2, &r = r2, &q = q2;
    if (!valid_equation(sc, eq0)) throw std::invalid_argument("malformed corner equation");

    std::vector<std::pair<Obs5Step, CornerEquation>> steps;
    CornerEquation cur = eq0;
    auto apply = [&](Obs5Step st) {
      steps.emplace_back(st, cur);
      cur = obs5_apply(sc, cur, st);
    };

    // (i) solve the r-block equation, then twist so that r a z1 = r
    Value a1 = mul3(A, r, cur.a, q), x1 = mul3(A, q, cur.x, r);
    Value b1 = A.add(A.mul(mul3(A, r, cur.a, r), A.mul(cur.x, r)), mul3(A, r, cur.b, r));
    auto s1 = S_rq.fn({a1, x1, b1});
    if (!s1) return std::nullopt;
    Value y1 = s1->y, z1 = s1->z;
    Value x0 = cur.x;
    apply({Obs5Kind::Shift, y1, A.zero()});
    Value rxy1 = mul3(A, r, x0, y1);  // square zero
    apply({Obs5Kind::RightUnit, A.add(Q, rxy1), A.sub(Q, rxy1)});
    tf_check(mul3(A, r, cur.a, z1) == r, "stage i");

    // (ii) make r a r = r
    Value t2 = A.mul(z1, A.sub(r, mul3(A, r, cur.a, r)));  // square zero
    apply({Obs5Kind::RightUnit, A.add(Q, t2), A.sub(Q, t2)});
    tf_check(mul3(A, r, cur.a, r) == r, "stage ii");

    // (iii) clear the pn-to-r block of a
    Value s3 = mul3(A, pn, cur.a, r);  // square zero
    apply({Obs5Kind::LeftUnit, A.sub(P, s3), A.add(P, s3)});
    tf_check(mul3(A, pn, cur.a, r) == A.zero() && mul3(A, r, cur.a, r) == r, "stage iii");

    // (iv) solve the pn-block equation
    Value a2 = mul3(A, pn, cur.a, q), x2 = mul3(A, q, cur.x, pn), b2 = mul3(A, pn, cur.b, pn);
    auto s2 = S.fn({a2, x2, b2});
    if (!s2) return std::nullopt;
    apply({Obs5Kind::Shift, s2->y, A.zero()});
    Value z2 = s2->z;

    // assemble the block-triangular right inverse of the current a
    Value zf = A.add(A.sub(z2, mul3(A, r, cur.a, z2)), r);
    tf_check(A.mul(cur.a, zf) == P, "assembled inverse");

    CornerSolution sol{A.zero(), zf};
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
      sol = obs5_back(sc, it->second, it->first, sol);
    return sol;
  };
  Solver core{sc, fn};
  if (!normalized) return core;
  return lemma2b_transport(core, EquivWitness{R->add(z0, r), R->add(y0, r)}, EquivWitness{Q, Q});
}

// One copy of p, equivalent to it by an explicit witness.
struct PCopy {
  Value e;
  EquivWitness w;  // w.a in pAe, w.b in eAp, ab = p, ba = e
};

// From a solver for (p, q) and r subequivalent to a sum of disjoint copies of
// p (all copies and spares orthogonal to everything in sight), build a solver
// for (p + r, q + r) by repeated doubling. copies and spares must each hold
// 2^m - 1 entries.
inline Solver prop6_double(const Solver& S0, const Value& r, const SubeqWitness& sub,
                           const std::vector<PCopy>& copies, const std::vector<PCopy>& spares,
                           PipelineTrace* trace = nullptr) {
  RingPtr R = S0.sc.ring;
  const Ring& A = *R;
  Value p = S0.sc.p, q = S0.sc.q;
  if (r == A.zero()) return S0;

  std::size_t total = copies.size();
  tf_check(total >= 1 && spares.size() == total && ((total + 1) & total) == 0,
           "copy count must be 2^m - 1");
  Value Rm = A.zero();
  for (const auto& c : copies) {
    tf_check(verify_equivalence(A, p, c.e, c.w), "copy witness");
    Rm = A.add(Rm, c.e);
  }
  for (const auto& s : spares) tf_check(verify_equivalence(A, p, s.e, s.w), "spare witness");
  tf_check(A.mul(sub.a, sub.b) == r && mul3(A, r, sub.a, Rm) == sub.a &&
               mul3(A, Rm, sub.b, r) == sub.b,
           "subequivalence witness");

  // connector between two summands of a copy sum; index -1 stands for p itself
  auto conn = [&](int ia, std::size_t ib) {
    const Value& u = copies[ib].w.a;
    return ia < 0 ? u : A.mul(copies[std::size_t(ia)].w.b, u);
  };
  auto connback = [&](int ia, std::size_t ib) {
    const Value& u2 = copies[ib].w.b;
    return ia < 0 ? u2 : A.mul(u2, copies[std::size_t(ia)].w.a);
  };

  // double the corner until it swallows all copies
  Solver S = S0;
  for (std::size_t bs = 1; bs <= total; bs *= 2) {
    Value rj = A.zero(), W = A.zero(), W2 = A.zero();
    for (std::size_t t = 0; t < bs; ++t) {
      int src = (int)t - 1;
      std::size_t dst = bs - 1 + t;
      rj = A.add(rj, copies[dst].e);
      W = A.add(W, conn(src, dst));
      W2 = A.add(W2, connback(src, dst));
    }
    if (trace) trace->note("double: absorbing " + std::to_string(bs) + " more copies");
    S = prop6_combine(S, rj, EquivWitness{W, W2}, trace);
  }

  // r + (a spare-supported complement) is equivalent to the whole copy sum
  Value rp = A.mul(sub.b, sub.a);  // below Rm
  Value rc = A.sub(Rm, rp);
  Value s = A.zero(), alpha = sub.b, beta = sub.a;
  if (rc != A.zero()) {
    Value U = A.zero(), U2 = A.zero();
    for (std::size_t i = 0; i < total; ++i) {
      U = A.add(U, A.mul(copies[i].w.b, spares[i].w.a));
      U2 = A.add(U2, A.mul(spares[i].w.b, copies[i].w.a));
    }
    s = mul3(A, U2, rc, U);
    alpha = A.add(sub.b, A.mul(rc, U));
    beta = A.add(sub.a, A.mul(U2, rc));
  }
  tf_check(A.mul(alpha, beta) == Rm, "alpha beta");
  tf_check(A.mul(beta, alpha) == A.add(r, s), "beta alpha");

  Solver S2 = lemma2b_transport(S, EquivWitness{A.add(p, alpha), A.add(p, beta)},
                                EquivWitness{A.add(q, alpha), A.add(q, beta)});
  if (s == A.zero()) return S2;
  if (trace) trace->note("double: trimming the spare summand");
  return lemma4_restrict(S2, s);
}

// ---------------------------------------------------------------------------
// the two main pipelines

struct Theorem7Result {
  Reducer reducer;
  PipelineTrace trace;
  unsigned block_size = 0;  // N of the intermediate M_N(A)
};

// Given sr(pAp) <= n realized by a reducer and a fullness certificate for p,
// produce a reducer witnessing sr(A) <= n.
inline Theorem7Result theorem7_pipeline(RingPtr A, const Value& p, const Reducer& corner_red,
                                        const FullnessCert& cert) {
  const Ring& AA = *A;
  require_idempotent(AA, p, "theorem7");
  tf_check(verify_fullness(AA, p, cert), "fullness certificate");
  unsigned n = corner_red.n, t = cert.t();

  Theorem7Result res;
  PipelineTrace& tr = res.trace;

  // normalized fullness pairs: sum xs_k ys_k = 1, xs_k in Ap, ys_k in pA
  std::vector<Value> xs, ys;
  for (const auto& [x, y] : cert.pairs) {
    xs.push_back(AA.mul(x, p));
    ys.push_back(AA.mul(p, y));
  }

  unsigned cc = 0;  // copies (and spares) needed for doubling
  if (t > 1) {
    unsigned m = 0;
    while ((1u << m) - 1 < t - 1) ++m;
    cc = (1u << m) - 1;
  }
  unsigned N = n + (t - 1) + 2 * cc;
  res.block_size = N;
  tr.note("dictionary: corner reducer as a solver on M_" + std::to_string(n));

  Solver S = lemma1_forward(corner_red, A);
  if (N > n) {
    S = widen_solver(S, N);
    tr.note("widened to M_" + std::to_string(N));
  }

  Value zA = AA.zero(), oneA = AA.one();
  auto E = [&](unsigned i, unsigned j, const Value& v) { return mat_unit(N, i, j, v, zA); };
  auto diagp = [&](unsigned lo, unsigned hi) {  // diag p over blocks [lo, hi)
    return block_matrix(N, [&](unsigned i, unsigned j) {
      return (i == j && i >= lo && i < hi) ? p : zA;
    });
  };

  if (t > 1) {
    Value r = diagp(n, n + t - 1);
    auto copy_at = [&](unsigned blk) {
      return PCopy{E(blk, blk, p), EquivWitness{E(0, blk, p), E(blk, 0, p)}};
    };
    std::vector<PCopy> copies, spares;
    for (unsigned i = 0; i < cc; ++i) copies.push_back(copy_at(n + (t - 1) + i));
    for (unsigned i = 0; i < cc; ++i) spares.push_back(copy_at(n + (t - 1) + cc + i));

    Value aw = S.sc.ring->zero(), bw = S.sc.ring->zero();
    for (unsigned k = 0; k + 1 < t; ++k) {
      aw = S.sc.ring->add(aw, E(n + k, n + (t - 1) + k, p));
      bw = S.sc.ring->add(bw, E(n + (t - 1) + k, n + k, p));
    }
    tr.note("doubling the corner across " + std::to_string(t - 1) + " extra p-blocks");
    S = prop6_double(S, r, SubeqWitness{aw, bw}, copies, spares, &tr);
  }

  RingPtr MN = S.sc.ring;
  const Ring& MNr = *MN;

  // move the fullness certificate into the block layout: position k carries
  // the k-th p of the enlarged corner
  auto pos = [&](unsigned k) { return k == 0 ? 0u : n + k - 1; };
  Value alpha = MNr.zero(), beta = MNr.zero();
  for (unsigned k = 0; k < t; ++k) {
    alpha = MNr.add(alpha, E(0, pos(k), xs[k]));
    beta = MNr.add(beta, E(pos(k), 0, ys[k]));
  }
  Value ohat = E(0, 0, oneA);
  tf_check(MNr.mul(alpha, beta) == ohat, "fullness in block form");
  Value e = MNr.mul(beta, alpha);
  Value T = S.sc.p;
  tf_check(idem_leq(MNr, e, T), "e below the doubled corner");
  Value f = MNr.sub(T, e);

  tr.note("restricting to the image of the fullness certificate");
  S = lemma4_restrict(S, f);  // corner (e, e + g), g = diag p over [1, n)

  Value h = block_matrix(N, [&](unsigned i, unsigned j) {
    return (i == j && i >= 1 && i < n) ? AA.sub(oneA, p) : zA;
  });
  tr.note("extending by the complements of p");
  S = lemma3_extend(S, h);  // corner (e, e + diag 1 over [1, n))

  tr.note("transporting e to the unit block");
  S = lemma2b_transport(S, EquivWitness{beta, alpha},
                        EquivWitness{MNr.add(beta, MNr.sub(S.sc.q, e)), MNr.add(alpha, MNr.sub(S.sc.q, e))});

  if (N > n) {
    S = narrow_solver(S, n);
    tr.note("narrowed back to M_" + std::to_string(n));
  }
  tr.note("dictionary: solver back to a rank-" + std::to_string(n) + " reducer");
  res.reducer = lemma1_backward(S, A);
  return res;
}

struct Theorem8Result {
  unsigned t = 0;
  RingPtr mt;           // M_t(A)
  Value alpha, beta;    // alpha beta = E00, beta alpha = qq
  Value qq;             // idempotent below diag p, equivalent to E00
  mpz_class bound;      // sr(pAp) <= t (sr(A) - 1) + 1
};

// Express the corner pAp as a unit-corner of an idempotent in M_t(A); the
// stable rank of pAp is then controlled by sr(A).
inline Theorem8Result theorem8_construct(RingPtr A, const Value& p, const FullnessCert& cert,
                                         const mpz_class& sr_A) {
  const Ring& AA = *A;
  require_idempotent(AA, p, "theorem8");
  tf_check(verify_fullness(AA, p, cert), "fullness certificate");
  Theorem8Result res;
  res.t = cert.t();
  unsigned t = res.t;
  res.mt = make_matrix(A, t);
  Value zA = AA.zero();
  std::vector<Value> xs, ys;
  for (const auto& [x, y] : cert.pairs) {
    xs.push_back(AA.mul(x, p));
    ys.push_back(AA.mul(p, y));
  }
  res.alpha = block_matrix(t, [&](unsigned i, unsigned j) { return i == 0 ? xs[j] : zA; });
  res.beta = block_matrix(t, [&](unsigned i, unsigned j) { return j == 0 ? ys[i] : zA; });
  Value ohat = mat_unit(t, 0, 0, AA.one(), zA);
  tf_check(res.mt->mul(res.alpha, res.beta) == ohat, "alpha beta");
  res.qq = res.mt->mul(res.beta, res.alpha);
  tf_check(res.mt->is_idempotent(res.qq), "q idempotent");
  Value diag_p = block_matrix(t, [&](unsigned i, unsigned j) { return i == j ? p : zA; });
  tf_check(idem_leq(*res.mt, res.qq, diag_p), "q below diag p");
  tf_check(verify_equivalence(*res.mt, ohat, res.qq, EquivWitness{res.alpha, res.beta}),
           "q equivalent to the unit block");
  Value aqb = res.mt->mul(res.alpha, res.mt->mul(res.qq, res.beta));
  tf_check(mul3(*res.mt, diag_p, aqb, diag_p) == mat_unit(t, 0, 0, p, zA), "q full over the corner");
  res.bound = t * (sr_A - 1) + 1;
  return res;
}

// Theorem 9 numeric bounds: sr(A) <= n sr(B) - n + 1 and sr(B) <= t sr(A) - t + 1.
inline std::pair<mpz_class, mpz_class> morita_bounds(unsigned n, unsigned t, const mpz_class& sr_A,
                                                     const mpz_class& sr_B) {
  return {n * sr_B - n + 1, t * sr_A - t + 1};
}

// sr(M_n(A)) = ceil((sr(A) - 1) / n) + 1
inline mpz_class vaserstein_bound(const mpz_class& sr_A, unsigned n) {
  mpz_class q;
  mpz_class num = sr_A - 1;
  mpz_cdiv_q_ui(q.get_mpz_t(), num.get_mpz_t(), n);
  return q + 1;
}

}  // namespace srank
