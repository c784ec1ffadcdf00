#pragma once

// Stable rank on finite rings by exhaustive search, unimodularity and right
// inverses over the supported ring kinds, and the skew-corner stable-rank-one
// test with a total witness oracle on success.
//
// A row (a_1..a_n, b) is right unimodular when its entries generate the whole
// ring as a right ideal; it reduces when some (a_i + b c_i) is right
// unimodular of length n. sr(A) <= n means every such row of length n+1
// reduces.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "srank/finite_ops.hpp"
#include "srank/ring.hpp"
#include "srank/snf.hpp"

namespace srank {

// ---------------------------------------------------------------------------
// unimodularity / right inverses, dispatched on ring kind

inline bool is_integer_matrix_ring(const Ring& R) {
  return R.kind() == Ring::Kind::Matrix && R.matrix_base()->kind() == Ring::Kind::Integers;
}

inline IntMat to_int_mat(const Value& v, unsigned k) {
  IntMat m(k, k);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) m.at(i, j) = mat_entry(v, k, i, j).scalar();
  return m;
}

inline Value from_int_mat(const IntMat& m) {
  return block_matrix((unsigned)m.rows,
                      [&](unsigned i, unsigned j) { return Value(mpz_class(m.at(i, j))); });
}

// k x (j*k) horizontal stack of the row entries
inline IntMat int_row_stack(const Ring& R, const std::vector<Value>& row) {
  unsigned k = R.matrix_n();
  IntMat m(k, k * row.size());
  for (std::size_t t = 0; t < row.size(); ++t)
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j) m.at(i, t * k + j) = mat_entry(row[t], k, i, j).scalar();
  return m;
}

inline std::vector<std::uint64_t> row_indices(const Ring& R, const std::vector<Value>& row) {
  std::vector<std::uint64_t> idx;
  for (const auto& v : row) {
    if (!R.contains(v)) throw std::invalid_argument("row entry is not a ring element");
    idx.push_back(R.index_of(v));
  }
  return idx;
}

inline bool is_right_unimodular(const Ring& R, const std::vector<Value>& row) {
  if (row.empty()) throw std::invalid_argument("empty row");
  if (const FastEngine* E = R.engine()) return engine_row_unimodular(*E, row_indices(R, row));
  if (R.kind() == Ring::Kind::Integers) {
    mpz_class g = 0;
    for (const auto& v : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.scalar().get_mpz_t());
    return g == 1;
  }
  if (is_integer_matrix_ring(R)) {
    unsigned k = R.matrix_n();
    auto inv = smith_normal_form(int_row_stack(R, row)).invariants();
    for (unsigned i = 0; i < k; ++i)
      if (inv[i] != 1) return false;
    return true;
  }
  throw std::logic_error("unimodularity is undecided for this ring");
}

inline bool right_ideal_contains(const Ring& R, const std::vector<Value>& gens, const Value& target) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  if (const FastEngine* E = R.engine())
    return engine_right_ideal_contains(*E, row_indices(R, gens), R.index_of(target));
  if (R.kind() == Ring::Kind::Integers) {
    mpz_class g = 0;
    for (const auto& v : gens) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.scalar().get_mpz_t());
    if (g == 0) return target.scalar() == 0;
    return target.scalar() % g == 0;
  }
  if (is_integer_matrix_ring(R)) {
    // target in sum g_i A iff each of its columns lies in the column lattice
    unsigned k = R.matrix_n();
    SmithForm s = smith_normal_form(int_row_stack(R, gens));
    IntMat ut = mat_mul(s.u, to_int_mat(target, k));
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j) {
        const mpz_class& d = s.d.at(i, i);
        if (d == 0 ? ut.at(i, j) != 0 : ut.at(i, j) % d != 0) return false;
      }
    return true;
  }
  throw std::logic_error("ideal membership is undecided for this ring");
}

// x_1..x_j with sum g_i x_i = 1
inline std::optional<std::vector<Value>> solve_right_inverse(const Ring& R,
                                                             const std::vector<Value>& gens) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  if (const FastEngine* E = R.engine()) {
    auto xs = engine_right_inverse(*E, row_indices(R, gens));
    if (!xs) return std::nullopt;
    std::vector<Value> out;
    for (auto i : *xs) out.push_back(R.element(i));
    return out;
  }
  if (R.kind() == Ring::Kind::Integers) {
    mpz_class g = gens[0].scalar();
    std::vector<mpz_class> cs{1};
    for (std::size_t i = 1; i < gens.size(); ++i) {
      mpz_class g2, x, y;
      ext_gcd(g, gens[i].scalar(), g2, x, y);
      for (auto& c : cs) c *= x;
      cs.push_back(y);
      g = g2;
    }
    if (g == -1) {
      for (auto& c : cs) c = -c;
      g = 1;
    }
    if (g != 1) return std::nullopt;
    std::vector<Value> out;
    for (auto& c : cs) out.push_back(Value(c));
    return out;
  }
  if (is_integer_matrix_ring(R)) {
    unsigned k = R.matrix_n();
    auto x = integer_right_inverse(int_row_stack(R, gens));
    if (!x) return std::nullopt;
    std::vector<Value> out;
    for (std::size_t t = 0; t < gens.size(); ++t) {
      IntMat b(k, k);
      for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) b.at(i, j) = x->at(t * k + i, j);
      out.push_back(from_int_mat(b));
    }
    return out;
  }
  throw std::logic_error("right inverses are undecided for this ring");
}

// ---------------------------------------------------------------------------
// reducibility and stable rank on finite rings

inline constexpr std::uint64_t kSearchCap = std::uint64_t(1) << 26;

inline std::vector<Value> reduced_row(const Ring& R, const std::vector<Value>& row,
                                      const std::vector<Value>& c) {
  std::size_t n = row.size() - 1;
  const Value& b = row[n];
  std::vector<Value> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(R.add(row[i], R.mul(b, c[i])));
  return out;
}

// first c-tuple (in enumeration order) reducing a right unimodular row
inline std::optional<std::vector<Value>> is_reducible(const Ring& R, const std::vector<Value>& row) {
  if (row.size() < 2) throw std::invalid_argument("row must have length n+1 >= 2");
  const FastEngine* E = R.engine();
  if (!E) throw std::logic_error("reducibility search needs a finite enumerable ring");
  if (!is_right_unimodular(R, row)) throw std::invalid_argument("row is not right unimodular");

  std::size_t n = row.size() - 1;
  std::uint64_t s = E->size(), total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > kSearchCap / s + 1) throw std::logic_error("reduction search above cap");
    total *= s;
  }
  if (total > kSearchCap) throw std::logic_error("reduction search above cap");

  auto a = row_indices(R, row);
  std::uint64_t b = a[n];
  std::vector<std::uint64_t> c(n), red(n);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t v = t;
    for (std::size_t i = n; i-- > 0;) {
      c[i] = v % s;
      v /= s;
    }
    for (std::size_t i = 0; i < n; ++i) red[i] = E->add(a[i], E->mul(b, c[i]));
    if (engine_row_unimodular(*E, red)) {
      std::vector<Value> out;
      for (auto ci : c) out.push_back(R.element(ci));
      return out;
    }
  }
  return std::nullopt;
}

struct ReduceOutput {
  std::vector<Value> c;     // reduction tuple
  std::vector<Value> cert;  // right inverse of the reduced row
};

// witness oracle for stable range n: total on right unimodular (n+1)-rows
struct Reducer {
  RingPtr ring;
  unsigned n = 0;
  std::function<std::optional<ReduceOutput>(const std::vector<Value>&)> fn;
};

inline bool verify_reduction(const Ring& R, const std::vector<Value>& row, const ReduceOutput& out) {
  std::size_t n = row.size() - 1;
  if (out.c.size() != n || out.cert.size() != n) return false;
  auto red = reduced_row(R, row, out.c);
  Value s = R.zero();
  for (std::size_t i = 0; i < n; ++i) s = R.add(s, R.mul(red[i], out.cert[i]));
  return s == R.one();
}

inline Reducer brute_reducer(RingPtr R, unsigned n) {
  if (!R->engine()) throw std::logic_error("brute reducer needs a finite enumerable ring");
  Reducer red;
  red.ring = R;
  red.n = n;
  red.fn = [R, n](const std::vector<Value>& row) -> std::optional<ReduceOutput> {
    if (row.size() != std::size_t(n) + 1) throw std::invalid_argument("row has wrong length");
    auto c = is_reducible(*R, row);
    if (!c) return std::nullopt;
    auto cert = solve_right_inverse(*R, reduced_row(*R, row, *c));
    return ReduceOutput{*c, *cert};
  };
  return red;
}

// ---------------------------------------------------------------------------
// sr <= 1 on matrix rings, organized by the column module of b
//
// For b in M_k(A) the set {bc : c} consists of all matrices whose columns lie
// in the A-submodule of A^k spanned by b's columns. Both unimodularity of
// (a, b) and reducibility are invariant under shifting a's columns by that
// module, so it suffices to sweep coset representatives per distinct module.

inline std::optional<std::vector<Value>> matrix_sr1_counterexample(const Ring& R) {
  auto* ME = dynamic_cast<const MatrixEngine*>(R.engine());
  if (!ME) throw std::logic_error("matrix sweep needs a matrix engine");
  unsigned k = ME->n();
  VecSpace V(ME->base(), k);
  std::uint64_t size = ME->size();

  std::vector<char> rinv(size, 0);
  for (std::uint64_t m = 0; m < size; ++m)
    rinv[m] = module_closure(V, matrix_columns(*ME, V, m), false).full(V.dim) ? 1 : 0;

  // group b by its column module (bitmap key keeps the sweep deterministic)
  std::map<std::vector<char>, std::uint64_t> modules;  // bitmap -> representative b
  for (std::uint64_t b = 0; b < size; ++b) {
    auto cl = module_closure(V, matrix_columns(*ME, V, b), false);
    modules.emplace(std::move(cl.in), b);
  }

  for (const auto& [bitmap, brep] : modules) {
    auto mcl = module_closure(V, matrix_columns(*ME, V, brep), false);
    if (mcl.full(V.dim)) continue;          // b right invertible: always reducible
    if (mcl.members.size() == 1) continue;  // bA = 0: unimodular forces a right invertible

    // additive coset representatives of A^k modulo the module
    std::vector<std::uint64_t> reps;
    {
      std::vector<char> visited(V.dim, 0);
      for (std::uint64_t v = 0; v < V.dim; ++v) {
        if (visited[v]) continue;
        reps.push_back(v);
        for (auto m : mcl.members) visited[V.vadd(v, m)] = 1;
      }
    }

    IncClosure base(V);
    for (auto col : matrix_columns(*ME, V, brep)) base.add_gen(col);

    // depth-first over column positions; closure grows along the prefix
    std::vector<std::uint64_t> cols(k);
    std::function<std::optional<std::vector<std::uint64_t>>(unsigned, const IncClosure&)> dfs =
        [&](unsigned depth, const IncClosure& cl) -> std::optional<std::vector<std::uint64_t>> {
      if (depth == k) {
        if (!cl.full()) return std::nullopt;  // (a, b) not unimodular
        // search completions a + bc over member tuples
        std::vector<std::uint64_t> shifted(k);
        std::vector<std::size_t> pick(k, 0);
        for (;;) {
          for (unsigned j = 0; j < k; ++j) shifted[j] = V.vadd(cols[j], mcl.members[pick[j]]);
          if (rinv[matrix_from_columns(*ME, V, shifted)]) return std::nullopt;  // reducible
          unsigned j = k;
          while (j-- > 0) {
            if (++pick[j] < mcl.members.size()) break;
            pick[j] = 0;
            if (j == 0) return cols;  // no completion: counterexample
          }
          if (j == unsigned(-1)) return cols;
        }
      }
      for (auto r : reps) {
        cols[depth] = r;
        IncClosure next = cl;
        next.add_gen(r);
        if (auto bad = dfs(depth + 1, next)) return bad;
      }
      return std::nullopt;
    };
    if (auto bad = dfs(0, base)) {
      std::uint64_t a = matrix_from_columns(*ME, V, *bad);
      return std::vector<Value>{R.element(a), R.element(brep)};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

struct SrResult {
  bool exceeded = false;  // sr > max_n
  unsigned sr = 0;
  // for each n below the answer, a right unimodular (n+1)-row with no reduction
  std::vector<std::vector<Value>> failures;
};

// least n such that every right unimodular (n+1)-row reduces, searching up to max_n
inline std::optional<std::vector<Value>> find_irreducible_row(const Ring& R, unsigned n) {
  const FastEngine* E = R.engine();
  if (!E) throw std::logic_error("stable rank search needs a finite enumerable ring");
  if (n == 1 && dynamic_cast<const MatrixEngine*>(E)) return matrix_sr1_counterexample(R);

  std::uint64_t s = E->size(), total = 1;
  for (unsigned i = 0; i <= n; ++i) {
    if (total > kSearchCap / s + 1) throw std::logic_error("stable rank search above cap");
    total *= s;
  }
  if (total > kSearchCap) throw std::logic_error("stable rank search above cap");

  std::vector<char> rinv(s, 0);
  {
    VecSpace V(*E, 1);
    for (std::uint64_t a = 0; a < s; ++a)
      rinv[a] = module_closure(V, {a}, false).contains(E->one()) ? 1 : 0;
  }

  std::vector<std::uint64_t> row(n + 1), red(n);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t v = t;
    for (unsigned i = n + 1; i-- > 0;) {
      row[i] = v % s;
      v /= s;
    }
    // a right invertible entry reduces the row immediately
    bool easy = rinv[row[n]];
    for (unsigned i = 0; i < n && !easy; ++i) easy = rinv[row[i]];
    if (easy) continue;
    if (!engine_row_unimodular(*E, row)) continue;

    std::uint64_t ctotal = total / s;
    bool reducible = false;
    std::vector<std::uint64_t> c(n);
    for (std::uint64_t ct = 0; ct < ctotal && !reducible; ++ct) {
      std::uint64_t cv = ct;
      for (unsigned i = n; i-- > 0;) {
        c[i] = cv % s;
        cv /= s;
      }
      for (unsigned i = 0; i < n; ++i) red[i] = E->add(row[i], E->mul(row[n], c[i]));
      reducible = n == 1 ? rinv[red[0]] != 0 : engine_row_unimodular(*E, red);
    }
    if (!reducible) {
      std::vector<Value> out;
      for (auto i : row) out.push_back(R.element(i));
      return out;
    }
  }
  return std::nullopt;
}

inline SrResult stable_rank(const Ring& R, unsigned max_n) {
  SrResult res;
  for (unsigned n = 1; n <= max_n; ++n) {
    auto bad = find_irreducible_row(R, n);
    if (!bad) {
      res.sr = n;
      return res;
    }
    res.failures.push_back(std::move(*bad));
  }
  res.exceeded = true;
  return res;
}

// ---------------------------------------------------------------------------
// skew corners and their stable-rank-one test

struct SkewCorner {
  RingPtr ring;
  Value p, q;
};

inline SkewCorner make_skew_corner(RingPtr R, Value p, Value q) {
  if (!R->is_idempotent(p) || !R->is_idempotent(q))
    throw std::invalid_argument("skew corner needs two idempotents");
  return SkewCorner{std::move(R), std::move(p), std::move(q)};
}

struct CornerEquation {
  Value a, x, b;  // a in pAq, x in qAp, b in pAp with ax + b = p
};

struct CornerSolution {
  Value y, z;  // y in pAq, z in qAp with (a + by) z = p
};

inline bool valid_equation(const SkewCorner& sc, const CornerEquation& eq) {
  const Ring& R = *sc.ring;
  return R.mul(sc.p, R.mul(eq.a, sc.q)) == eq.a && R.mul(sc.q, R.mul(eq.x, sc.p)) == eq.x &&
         R.mul(sc.p, R.mul(eq.b, sc.p)) == eq.b && R.add(R.mul(eq.a, eq.x), eq.b) == sc.p;
}

inline bool verify_solution(const SkewCorner& sc, const CornerEquation& eq, const CornerSolution& sol) {
  const Ring& R = *sc.ring;
  return R.mul(sc.p, R.mul(sol.y, sc.q)) == sol.y && R.mul(sc.q, R.mul(sol.z, sc.p)) == sol.z &&
         R.mul(R.add(eq.a, R.mul(eq.b, sol.y)), sol.z) == sc.p;
}

struct Solver {
  SkewCorner sc;
  std::function<std::optional<CornerSolution>(const CornerEquation&)> fn;
};

struct Sr1Check {
  bool ok = false;
  std::optional<CornerEquation> counterexample;
  std::optional<Solver> solver;  // total oracle when ok
};

inline Sr1Check skew_sr1_check(const SkewCorner& sc) {
  const Ring& R = *sc.ring;
  const FastEngine* E = R.engine();
  if (!E) throw std::logic_error("skew corner check needs a finite enumerable ring");
  std::uint64_t pi = R.index_of(sc.p), qi = R.index_of(sc.q);

  auto PQ = std::make_shared<std::vector<std::uint64_t>>(engine_carrier(*E, pi, qi));
  auto QP = std::make_shared<std::vector<std::uint64_t>>(engine_carrier(*E, qi, pi));

  // position of each carrier element within PQ
  auto pos = std::make_shared<std::unordered_map<std::uint64_t, std::uint32_t>>();
  for (std::uint32_t i = 0; i < PQ->size(); ++i) (*pos)[(*PQ)[i]] = i;

  // first z with w z = p, for each w in the carrier
  auto firstz = std::make_shared<std::vector<std::int64_t>>(PQ->size(), -1);
  for (std::size_t i = 0; i < PQ->size(); ++i)
    for (std::size_t j = 0; j < QP->size(); ++j)
      if (E->mul((*PQ)[i], (*QP)[j]) == pi) {
        (*firstz)[i] = (std::int64_t)j;
        break;
      }

  auto solve_idx = [E, PQ, QP, pos, firstz](std::uint64_t a, std::uint64_t b)
      -> std::optional<std::pair<std::uint64_t, std::uint64_t>> {
    for (auto y : *PQ) {
      std::uint64_t w = E->add(a, E->mul(b, y));
      auto it = pos->find(w);
      if (it == pos->end()) continue;
      std::int64_t j = (*firstz)[it->second];
      if (j >= 0) return std::make_pair(y, (*QP)[(std::size_t)j]);
    }
    return std::nullopt;
  };

  Sr1Check out;
  RingPtr rp = sc.ring;
  for (auto a : *PQ)
    for (auto x : *QP) {
      std::uint64_t b = E->sub(pi, E->mul(a, x));
      if (!solve_idx(a, b)) {
        out.ok = false;
        out.counterexample = CornerEquation{R.element(a), R.element(x), R.element(b)};
        return out;
      }
    }

  out.ok = true;
  out.solver = Solver{sc, [sc, rp, solve_idx](const CornerEquation& eq) -> std::optional<CornerSolution> {
                        if (!valid_equation(sc, eq)) throw std::invalid_argument("malformed corner equation");
                        auto s = solve_idx(rp->index_of(eq.a), rp->index_of(eq.b));
                        if (!s) return std::nullopt;
                        return CornerSolution{rp->element(s->first), rp->element(s->second)};
                      }};
  return out;
}

}  // namespace srank
