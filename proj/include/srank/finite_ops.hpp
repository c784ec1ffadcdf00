#pragma once

// Brute-force primitives over finite-ring index engines: additive closures of
// right ideals and of column modules, with optional expression tracking so
// that membership certificates (right inverses) can be read back.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "srank/ring.hpp"

namespace srank {

inline constexpr std::uint64_t kModuleCap = std::uint64_t(1) << 20;

// Free right module A^k with components packed into a single index
// (most significant component first).
struct VecSpace {
  const FastEngine* A;
  unsigned k;
  std::uint64_t B, dim;

  VecSpace(const FastEngine& a, unsigned kk) : A(&a), k(kk), B(a.size()) {
    dim = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (dim > kModuleCap / B + 1) throw std::logic_error("module space above cap");
      dim *= B;
    }
    if (dim > kModuleCap) throw std::logic_error("module space above cap");
  }
  void decode(std::uint64_t v, std::uint64_t* out) const {
    for (unsigned i = k; i-- > 0;) {
      out[i] = v % B;
      v /= B;
    }
  }
  std::uint64_t encode(const std::uint64_t* c) const {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < k; ++i) v = v * B + c[i];
    return v;
  }
  std::uint64_t vadd(std::uint64_t x, std::uint64_t y) const {
    std::uint64_t cx[32], cy[32];
    decode(x, cx);
    decode(y, cy);
    for (unsigned i = 0; i < k; ++i) cx[i] = A->add(cx[i], cy[i]);
    return encode(cx);
  }
  std::uint64_t vmulr(std::uint64_t x, std::uint64_t r) const {
    std::uint64_t cx[32];
    decode(x, cx);
    for (unsigned i = 0; i < k; ++i) cx[i] = A->mul(cx[i], r);
    return encode(cx);
  }
};

struct ModuleClosure {
  std::vector<char> in;                          // membership bitmap over V.dim
  std::vector<std::uint64_t> members;            // discovery order, members[0] == 0
  std::vector<std::vector<std::uint64_t>> expr;  // per member: A-coefficients per generator
  bool full(std::uint64_t dim) const { return members.size() == dim; }
  bool contains(std::uint64_t v) const { return in[v] != 0; }
};

// Additive closure of { g * r : g in gens, r in A } inside A^k.
inline ModuleClosure module_closure(const VecSpace& V, const std::vector<std::uint64_t>& gens,
                                    bool with_expr) {
  ModuleClosure cl;
  cl.in.assign(V.dim, 0);
  const std::uint64_t g = gens.size();

  // distinct right multiples of the generators, with expressions
  std::vector<std::uint64_t> gm;
  std::vector<std::vector<std::uint64_t>> gme;
  std::vector<char> seen(V.dim, 0);
  for (std::uint64_t i = 0; i < g; ++i)
    for (std::uint64_t r = 0; r < V.B; ++r) {
      std::uint64_t m = V.vmulr(gens[i], r);
      if (m == 0 || seen[m]) continue;
      seen[m] = 1;
      gm.push_back(m);
      if (with_expr) {
        std::vector<std::uint64_t> e(g, V.A->zero());
        e[i] = r;
        gme.push_back(std::move(e));
      }
    }

  cl.in[0] = 1;
  cl.members.push_back(0);
  if (with_expr) cl.expr.emplace_back(g, V.A->zero());
  for (std::size_t head = 0; head < cl.members.size(); ++head) {
    std::uint64_t m = cl.members[head];
    for (std::size_t t = 0; t < gm.size(); ++t) {
      std::uint64_t m2 = V.vadd(m, gm[t]);
      if (cl.in[m2]) continue;
      cl.in[m2] = 1;
      cl.members.push_back(m2);
      if (with_expr) {
        std::vector<std::uint64_t> e = cl.expr[head];
        for (std::uint64_t i = 0; i < g; ++i) e[i] = V.A->add(e[i], gme[t][i]);
        cl.expr.push_back(std::move(e));
      }
    }
  }
  return cl;
}

// --- matrix-engine helpers -------------------------------------------------

// columns of a matrix index, as A^k vector indices
inline std::vector<std::uint64_t> matrix_columns(const MatrixEngine& E, const VecSpace& V,
                                                 std::uint64_t m) {
  unsigned k = E.n();
  std::uint64_t d[64], c[32];
  E.decode(m, d);
  std::vector<std::uint64_t> cols(k);
  for (unsigned j = 0; j < k; ++j) {
    for (unsigned i = 0; i < k; ++i) c[i] = d[i * k + j];
    cols[j] = V.encode(c);
  }
  return cols;
}

inline std::uint64_t matrix_from_columns(const MatrixEngine& E, const VecSpace& V,
                                         const std::vector<std::uint64_t>& cols) {
  unsigned k = E.n();
  std::uint64_t d[64], c[32];
  for (unsigned j = 0; j < k; ++j) {
    V.decode(cols[j], c);
    for (unsigned i = 0; i < k; ++i) d[i * k + j] = c[i];
  }
  return E.encode(d);
}

// 1 in sum of g_i * R, over any engine; k = 1 for plain rings.
inline bool engine_row_unimodular(const FastEngine& E, const std::vector<std::uint64_t>& row) {
  if (auto* me = dynamic_cast<const MatrixEngine*>(&E)) {
    VecSpace V(me->base(), me->n());
    std::vector<std::uint64_t> gens;
    for (auto m : row)
      for (auto c : matrix_columns(*me, V, m)) gens.push_back(c);
    return module_closure(V, gens, false).full(V.dim);
  }
  VecSpace V(E, 1);
  return module_closure(V, row, false).contains(E.one());
}

inline bool engine_right_ideal_contains(const FastEngine& E, const std::vector<std::uint64_t>& gens,
                                        std::uint64_t target) {
  if (auto* me = dynamic_cast<const MatrixEngine*>(&E)) {
    VecSpace V(me->base(), me->n());
    std::vector<std::uint64_t> g;
    for (auto m : gens)
      for (auto c : matrix_columns(*me, V, m)) g.push_back(c);
    auto cl = module_closure(V, g, false);
    for (auto c : matrix_columns(*me, V, target))
      if (!cl.contains(c)) return false;
    return true;
  }
  VecSpace V(E, 1);
  return module_closure(V, gens, false).contains(target);
}

// x_1..x_j with sum g_i * x_i = 1, if 1 lies in the right ideal.
inline std::optional<std::vector<std::uint64_t>> engine_right_inverse(
    const FastEngine& E, const std::vector<std::uint64_t>& gens) {
  if (auto* me = dynamic_cast<const MatrixEngine*>(&E)) {
    unsigned k = me->n();
    VecSpace V(me->base(), k);
    std::vector<std::uint64_t> g;
    for (auto m : gens)
      for (auto c : matrix_columns(*me, V, m)) g.push_back(c);
    auto cl = module_closure(V, g, true);
    // solve for each column of the identity matrix
    std::vector<std::vector<std::uint64_t>> xcols(gens.size(),
                                                  std::vector<std::uint64_t>(k * k, me->base().zero()));
    std::uint64_t c[32];
    for (unsigned col = 0; col < k; ++col) {
      for (unsigned i = 0; i < k; ++i) c[i] = (i == col) ? me->base().one() : me->base().zero();
      std::uint64_t e = V.encode(c);
      if (!cl.contains(e)) return std::nullopt;
      std::size_t pos = 0;
      while (cl.members[pos] != e) ++pos;
      const auto& coeff = cl.expr[pos];  // one coefficient per generator column
      for (std::size_t i = 0; i < gens.size(); ++i)
        for (unsigned r = 0; r < k; ++r) xcols[i][r * k + col] = coeff[i * k + r];
    }
    std::vector<std::uint64_t> xs;
    for (auto& d : xcols) xs.push_back(me->encode(d.data()));
    return xs;
  }
  VecSpace V(E, 1);
  auto cl = module_closure(V, gens, true);
  std::uint64_t one = E.one();
  if (!cl.contains(one)) return std::nullopt;
  std::size_t pos = 0;
  while (cl.members[pos] != one) ++pos;
  return cl.expr[pos];
}

inline bool engine_right_invertible(const FastEngine& E, std::uint64_t a) {
  if (auto* me = dynamic_cast<const MatrixEngine*>(&E)) {
    VecSpace V(me->base(), me->n());
    return module_closure(V, matrix_columns(*me, V, a), false).full(V.dim);
  }
  VecSpace V(E, 1);
  return module_closure(V, {a}, false).contains(E.one());
}

// Submodule closure that supports adding generators one at a time, so that
// searches over column tuples can share work across a common prefix.
struct IncClosure {
  const VecSpace* V;
  std::vector<char> in, gmseen;
  std::vector<std::uint64_t> members, gms;

  explicit IncClosure(const VecSpace& v) : V(&v), in(v.dim, 0), gmseen(v.dim, 0) {
    in[0] = 1;
    members.push_back(0);
  }
  bool full() const { return members.size() == V->dim; }
  bool contains(std::uint64_t v) const { return in[v] != 0; }
  void add_gen(std::uint64_t g) {
    std::size_t oldgm = gms.size();
    for (std::uint64_t r = 0; r < V->B; ++r) {
      std::uint64_t m = V->vmulr(g, r);
      if (m != 0 && !gmseen[m]) {
        gmseen[m] = 1;
        gms.push_back(m);
      }
    }
    if (gms.size() == oldgm) return;
    std::size_t oldmem = members.size();
    for (std::size_t h = 0; h < oldmem; ++h)
      for (std::size_t t = oldgm; t < gms.size(); ++t) push(V->vadd(members[h], gms[t]));
    for (std::size_t h = oldmem; h < members.size(); ++h)
      for (std::size_t t = 0; t < gms.size(); ++t) push(V->vadd(members[h], gms[t]));
  }

 private:
  void push(std::uint64_t m) {
    if (!in[m]) {
      in[m] = 1;
      members.push_back(m);
    }
  }
};

// elements e of the carrier p R q, i.e. p*e*q == e
inline std::vector<std::uint64_t> engine_carrier(const FastEngine& E, std::uint64_t p, std::uint64_t q) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < E.size(); ++i)
    if (E.mul(p, E.mul(i, q)) == i) out.push_back(i);
  return out;
}

}  // namespace srank
