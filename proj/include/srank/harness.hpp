#pragma once

// Batch front end: the built-in ring corpus, theorem-check batteries, the two
// integer demos, and JSON reports whose embedded witnesses can be re-verified
// later without redoing any search.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "srank/idempotents.hpp"
#include "srank/ring.hpp"
#include "srank/stablerank.hpp"
#include "srank/transforms.hpp"
#include "srank/zsolvers.hpp"

namespace srank {

inline constexpr const char* kToolVersion = "srank 1.0.0";
inline constexpr const char* kReportSchema = "srank-report-1";

struct CorpusEntry {
  std::string name;
  json spec;
  RingPtr ring;
};

// upper-triangular 2x2 matrices over zmod(2), presented as an explicit table
inline json t2_z2_table_spec() {
  // element i encodes [[a, b], [0, c]] with i = 4a + 2b + c
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

inline std::vector<CorpusEntry> builtin_corpus() {
  std::vector<std::pair<std::string, json>> specs = {
      {"zmod2", json{{"type", "zmod"}, {"m", 2}}},
      {"zmod3", json{{"type", "zmod"}, {"m", 3}}},
      {"zmod4", json{{"type", "zmod"}, {"m", 4}}},
      {"zmod2_x_zmod2",
       json{{"type", "product"},
            {"factors", json::array({json{{"type", "zmod"}, {"m", 2}}, json{{"type", "zmod"}, {"m", 2}}})}}},
      {"zmod2_x_zmod3",
       json{{"type", "product"},
            {"factors", json::array({json{{"type", "zmod"}, {"m", 2}}, json{{"type", "zmod"}, {"m", 3}}})}}},
      {"t2_zmod2", t2_z2_table_spec()},
      {"m2_zmod2", json{{"type", "matrix"}, {"n", 2}, {"base", json{{"type", "zmod"}, {"m", 2}}}}},
  };
  std::vector<CorpusEntry> out;
  for (auto& [name, spec] : specs) out.push_back({name, spec, ring_from_spec(spec)});
  return out;
}

inline std::vector<CorpusEntry> load_corpus(const json& j) {
  const json& entries = j.is_array() ? j : j.at("entries");
  std::vector<CorpusEntry> out;
  for (const auto& e : entries) {
    CorpusEntry c;
    c.name = e.contains("name") ? e.at("name").get<std::string>() : std::string("entry")
                                      + std::to_string(out.size());
    c.spec = e.at("spec");
    c.ring = ring_from_spec(c.spec);
    out.push_back(std::move(c));
  }
  return out;
}

inline json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open file: " + path);
  json j;
  f >> j;
  return j;
}

// ---------------------------------------------------------------------------

struct RunResult {
  json report;
  bool ok = true;
};

inline std::int64_t now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

inline json report_shell(std::uint64_t seed) {
  return json{{"schema", kReportSchema},
              {"version", kToolVersion},
              {"seed", seed},
              {"records", json::array()}};
}

inline json row_to_json(const std::vector<Value>& row) {
  json a = json::array();
  for (const auto& v : row) a.push_back(value_to_json(v));
  return a;
}

inline std::vector<Value> row_from_json(const json& j) {
  std::vector<Value> row;
  for (const auto& e : j) row.push_back(value_from_json(e));
  return row;
}

inline json eq_to_json(const CornerEquation& eq) {
  return json{{"a", value_to_json(eq.a)}, {"x", value_to_json(eq.x)}, {"b", value_to_json(eq.b)}};
}

inline CornerEquation eq_from_json(const json& j) {
  return {value_from_json(j.at("a")), value_from_json(j.at("x")), value_from_json(j.at("b"))};
}

inline json sol_to_json(const CornerSolution& s) {
  return json{{"y", value_to_json(s.y)}, {"z", value_to_json(s.z)}};
}

inline CornerSolution sol_from_json(const json& j) {
  return {value_from_json(j.at("y")), value_from_json(j.at("z"))};
}

// ---------------------------------------------------------------------------
// stable rank command

inline RunResult run_sr(const json& ringspec, unsigned max_n) {
  RingPtr R = ring_from_spec(ringspec);
  RunResult rr;
  rr.report = report_shell(0);
  std::int64_t t0 = now_ms();
  SrResult res = stable_rank(*R, max_n);
  json rec{{"check", "sr"}, {"ring", ringspec}, {"max_n", max_n}, {"exceeded", res.exceeded}};
  if (!res.exceeded) rec["sr"] = res.sr;
  json fails = json::array();
  for (const auto& row : res.failures) fails.push_back(row_to_json(row));
  rec["failures"] = fails;
  rec["result"] = "pass";
  rec["elapsed_ms"] = now_ms() - t0;
  rr.report["records"].push_back(rec);
  return rr;
}

// ---------------------------------------------------------------------------
// batteries

// the skew corner (1, n·1) inside M_n(A)
inline SkewCorner unit_corner(RingPtr A, unsigned n) {
  RingPtr M = make_matrix(A, n);
  Value z = A->zero(), o = A->one();
  Value P = mat_unit(n, 0, 0, o, z);
  return make_skew_corner(M, P, M->one());
}

// every equation of a finite skew corner, in enumeration order
inline std::vector<CornerEquation> all_equations(const SkewCorner& sc) {
  auto pq = carrier(*sc.ring, sc.p, sc.q);
  auto qp = carrier(*sc.ring, sc.q, sc.p);
  std::vector<CornerEquation> eqs;
  for (const auto& a : pq)
    for (const auto& x : qp)
      eqs.push_back({a, x, sc.ring->sub(sc.p, sc.ring->mul(a, x))});
  return eqs;
}

// exhaustively replay a solver; returns the number of equations checked
inline std::uint64_t verify_solver_exhaustive(const Solver& S) {
  std::uint64_t n = 0;
  for (const auto& eq : all_equations(S.sc)) {
    auto sol = S.fn(eq);
    if (!sol || !verify_solution(S.sc, eq, *sol))
      throw std::logic_error("solver output failed verification");
    ++n;
  }
  return n;
}

inline RunResult battery_lemma1(const std::vector<CorpusEntry>& corpus) {
  RunResult rr;
  rr.report = report_shell(0);
  for (const auto& e : corpus) {
    for (unsigned n = 1; n <= 2; ++n) {
      std::int64_t t0 = now_ms();
      bool sr_le_n = !find_irreducible_row(*e.ring, n).has_value();
      SkewCorner sc = unit_corner(e.ring, n);
      Sr1Check chk = skew_sr1_check(sc);
      bool agree = sr_le_n == chk.ok;
      json rec{{"check", "lemma1"}, {"ring", e.spec}, {"n", n},
               {"sr_le_n", sr_le_n}, {"skew_ok", chk.ok}};
      if (chk.ok) {
        auto eqs = all_equations(sc);
        const CornerEquation& eq = eqs.back();
        auto sol = chk.solver->fn(eq);
        rec["sample"] = json{{"eq", eq_to_json(eq)}, {"sol", sol_to_json(*sol)}};
      } else {
        rec["counterexample"] = eq_to_json(*chk.counterexample);
      }
      rec["result"] = agree ? "pass" : "fail";
      rec["elapsed_ms"] = now_ms() - t0;
      if (!agree) rr.ok = false;
      rr.report["records"].push_back(rec);
    }
  }
  return rr;
}

inline RunResult battery_lemma2a(const std::vector<CorpusEntry>& corpus) {
  RunResult rr;
  rr.report = report_shell(0);
  for (const auto& e : corpus) {
    std::int64_t t0 = now_ms();
    auto idems = enumerate_idempotents(*e.ring);
    bool pass = true;
    json samples = json::array();
    for (const auto& p : idems)
      for (const auto& q : idems) {
        auto sub = subequivalent(*e.ring, p, q);
        Sr1Check chk = skew_sr1_check(make_skew_corner(e.ring, p, q));
        if (!sub && chk.ok) pass = false;  // Lemma 2(a): sr 1 forces p below q
        json s{{"p", value_to_json(p)}, {"q", value_to_json(q)}};
        if (chk.ok) {
          auto w = lemma2a_witness(*chk.solver);
          if (e.ring->mul(w.a, w.b) != p) pass = false;
          s["witness"] = json{{"a", value_to_json(w.a)}, {"b", value_to_json(w.b)}};
        } else {
          s["counterexample"] = eq_to_json(*chk.counterexample);
        }
        samples.push_back(std::move(s));
      }
    json rec{{"check", "lemma2a"}, {"ring", e.spec}, {"pairs", samples},
             {"result", pass ? "pass" : "fail"}, {"elapsed_ms", now_ms() - t0}};
    if (!pass) rr.ok = false;
    rr.report["records"].push_back(rec);
  }
  return rr;
}

// exhaustive soundness of the four solver transforms on M_2(zmod(2))
inline RunResult battery_transforms(const std::vector<CorpusEntry>&) {
  RunResult rr;
  rr.report = report_shell(0);
  RingPtr A = make_matrix(make_zmod(2), 2);
  json spec = A->spec_json();
  Value z2(0L), o2(1L);
  auto e = [&](unsigned i, unsigned j) { return mat_unit(2, i, j, o2, z2); };
  Value e11 = e(0, 0), e22 = e(1, 1), e12 = e(0, 1), e21 = e(1, 0), one = A->one();

  auto run_case = [&](const char* name, const Solver& S) {
    std::int64_t t0 = now_ms();
    bool pass = true;
    std::uint64_t count = 0;
    json sample;
    try {
      count = verify_solver_exhaustive(S);
      auto eqs = all_equations(S.sc);
      auto sol = S.fn(eqs.front());
      sample = json{{"p", value_to_json(S.sc.p)}, {"q", value_to_json(S.sc.q)},
                    {"eq", eq_to_json(eqs.front())}, {"sol", sol_to_json(*sol)}};
    } catch (const std::logic_error&) {
      pass = false;
    }
    json rec{{"check", "transforms"}, {"ring", spec}, {"case", name}, {"equations", count},
             {"sample", sample}, {"result", pass ? "pass" : "fail"}, {"elapsed_ms", now_ms() - t0}};
    if (!pass) rr.ok = false;
    rr.report["records"].push_back(rec);
  };

  Solver S11 = *skew_sr1_check(make_skew_corner(A, e11, e11)).solver;
  Solver Sfull = *skew_sr1_check(make_skew_corner(A, one, one)).solver;

  run_case("lemma2b: (e11,e11) to (e22,e22)",
           lemma2b_transport(S11, EquivWitness{e12, e21}, EquivWitness{e12, e21}));
  run_case("lemma3: extend (e11,e11) by e22", lemma3_extend(S11, e22));
  run_case("lemma4: restrict (1,1) by e22", lemma4_restrict(Sfull, e22));
  run_case("prop6: combine (e11,e11) with r=e22",
           prop6_combine(S11, e22, EquivWitness{e12, e21}));

  // Observation 5 replay: every shift and a nilpotent unit twist, against the
  // brute-force solver, over every equation of (e11, 1)
  {
    std::int64_t t0 = now_ms();
    SkewCorner sc = make_skew_corner(A, e11, one);
    Solver S = *skew_sr1_check(sc).solver;
    bool pass = true;
    std::uint64_t count = 0;
    std::vector<Obs5Step> steps;
    for (const auto& c : carrier(*A, e11, one)) steps.push_back({Obs5Kind::Shift, c, A->zero()});
    steps.push_back({Obs5Kind::RightUnit, A->add(one, e12), A->sub(one, e12)});
    steps.push_back({Obs5Kind::LeftUnit, e11, e11});
    for (const auto& st : steps)
      for (const auto& eq : all_equations(sc)) {
        CornerEquation teq = obs5_apply(sc, eq, st);
        if (!valid_equation(sc, teq)) { pass = false; continue; }
        auto tsol = S.fn(teq);
        CornerSolution sol = obs5_back(sc, eq, st, *tsol);
        if (!verify_solution(sc, eq, sol)) pass = false;
        ++count;
      }
    json rec{{"check", "transforms"}, {"ring", spec}, {"case", "obs5 replay"},
             {"equations", count}, {"result", pass ? "pass" : "fail"},
             {"elapsed_ms", now_ms() - t0}};
    if (!pass) rr.ok = false;
    rr.report["records"].push_back(rec);
  }
  return rr;
}

// prop6_combine across every orthogonal equivalent pair of idempotents
inline RunResult battery_prop6(const std::vector<CorpusEntry>& corpus) {
  RunResult rr;
  rr.report = report_shell(0);
  for (const auto& e : corpus) {
    if (e.ring->size() > 16) continue;
    std::int64_t t0 = now_ms();
    bool pass = true;
    std::uint64_t cases = 0, eqs = 0;
    json sample;
    auto idems = enumerate_idempotents(*e.ring);
    for (const auto& p : idems)
      for (const auto& r : idems) {
        if (!orthogonal(*e.ring, p, r)) continue;
        auto w = equivalent(*e.ring, p, r);
        if (!w) continue;
        Sr1Check chk = skew_sr1_check(make_skew_corner(e.ring, p, p));
        if (!chk.ok) continue;
        Solver comb = prop6_combine(*chk.solver, r, *w);
        try {
          eqs += verify_solver_exhaustive(comb);
        } catch (const std::logic_error&) {
          pass = false;
        }
        ++cases;
        if (sample.is_null()) {
          auto es = all_equations(comb.sc);
          auto sol = comb.fn(es.front());
          sample = json{{"p", value_to_json(p)}, {"r", value_to_json(r)},
                        {"eq", eq_to_json(es.front())}, {"sol", sol_to_json(*sol)}};
        }
      }
    json rec{{"check", "prop6"}, {"ring", e.spec}, {"cases", cases}, {"equations", eqs},
             {"sample", sample}, {"result", pass ? "pass" : "fail"},
             {"elapsed_ms", now_ms() - t0}};
    if (!pass) rr.ok = false;
    rr.report["records"].push_back(rec);
  }
  return rr;
}

inline RunResult battery_theorem7(const std::vector<CorpusEntry>&, bool trace) {
  RunResult rr;
  rr.report = report_shell(0);

  auto run_case = [&](RingPtr A, const Value& p, unsigned n) {
    std::int64_t t0 = now_ms();
    bool pass = true;
    json samples = json::array(), tracej;
    std::uint64_t rows = 0;
    try {
      RingPtr C = make_corner(A, p);
      Reducer corner_red = brute_reducer(C, n);
      auto cert = is_full(*A, p);
      if (!cert) throw std::logic_error("corner is not full");
      Theorem7Result t7 = theorem7_pipeline(A, p, corner_red, *cert);
      if (trace) tracej = t7.trace.to_json();
      // the pipeline must reduce exactly the rows brute force can reduce
      const FastEngine* E = A->engine();
      std::uint64_t s = E->size();
      std::vector<std::uint64_t> idx(n + 1);
      std::uint64_t total = 1;
      for (unsigned i = 0; i <= n; ++i) total *= s;
      for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t v = t;
        for (unsigned i = n + 1; i-- > 0;) {
          idx[i] = v % s;
          v /= s;
        }
        if (!engine_row_unimodular(*E, idx)) continue;
        std::vector<Value> row;
        for (auto i : idx) row.push_back(A->element(i));
        auto out = t7.reducer.fn(row);
        bool brute = is_reducible(*A, row).has_value();
        if (!out.has_value() != !brute || (out && !verify_reduction(*A, row, *out))) pass = false;
        ++rows;
        if (out && samples.size() < 3)
          samples.push_back(json{{"row", row_to_json(row)}, {"c", row_to_json(out->c)},
                                 {"cert", row_to_json(out->cert)}});
      }
    } catch (const std::logic_error&) {
      pass = false;
    }
    json rec{{"check", "theorem7"}, {"ring", A->spec_json()}, {"p", value_to_json(p)},
             {"n", n}, {"rows", rows}, {"samples", samples},
             {"result", pass ? "pass" : "fail"}, {"elapsed_ms", now_ms() - t0}};
    if (!tracej.is_null()) rec["trace"] = tracej;
    if (!pass) rr.ok = false;
    rr.report["records"].push_back(rec);
  };

  RingPtr M2 = make_matrix(make_zmod(2), 2);
  Value z2(0L), o2(1L);
  run_case(M2, mat_unit(2, 0, 0, o2, z2), 1);  // corner e11 M_2(F2) e11
  RingPtr Z2 = make_zmod(2);
  run_case(Z2, Z2->one(), 1);  // degenerate t = 1: plain lemma 1 roundtrip
  return rr;
}

inline RunResult battery_theorem8(const std::vector<CorpusEntry>&) {
  RunResult rr;
  rr.report = report_shell(0);
  std::int64_t t0 = now_ms();
  bool pass = true;
  RingPtr A = make_matrix(make_zmod(2), 2);
  Value z2(0L), o2(1L);
  Value e11 = mat_unit(2, 0, 0, o2, z2);
  FullnessCert cert;
  cert.pairs = {{e11, e11}, {mat_unit(2, 1, 0, o2, z2), mat_unit(2, 0, 1, o2, z2)}};
  json rec{{"check", "theorem8"}, {"ring", A->spec_json()}, {"p", value_to_json(e11)}};
  try {
    SrResult srA = stable_rank(*A, 2);
    Theorem8Result t8 = theorem8_construct(A, e11, cert, mpz_class((unsigned long)srA.sr));
    RingPtr C = make_corner(A, e11);
    SrResult srC = stable_rank(*C, 2);
    pass = !srA.exceeded && !srC.exceeded && t8.bound >= srC.sr;
    rec["sr_A"] = srA.sr;
    rec["sr_corner"] = srC.sr;
    rec["bound"] = t8.bound.get_si();
    rec["q"] = value_to_json(t8.qq);
    json pj = json::array();
    for (const auto& [x, y] : cert.pairs)
      pj.push_back(json::array({value_to_json(x), value_to_json(y)}));
    rec["pairs"] = pj;
  } catch (const std::logic_error&) {
    pass = false;
  }
  rec["result"] = pass ? "pass" : "fail";
  rec["elapsed_ms"] = now_ms() - t0;
  if (!pass) rr.ok = false;
  rr.report["records"].push_back(rec);
  return rr;
}

inline RunResult battery_vaserstein(const std::vector<CorpusEntry>& corpus) {
  RunResult rr;
  rr.report = report_shell(0);
  for (const auto& e : corpus) {
    std::int64_t t0 = now_ms();
    bool pass = true;
    json rec{{"check", "vaserstein"}, {"ring", e.spec}};
    try {
      SrResult srA = stable_rank(*e.ring, 2);
      RingPtr M2 = make_matrix(e.ring, 2);
      SrResult srM = stable_rank(*M2, 2);
      mpz_class predicted = vaserstein_bound(mpz_class((unsigned long)srA.sr), 2);
      pass = !srA.exceeded && !srM.exceeded && predicted == srM.sr;
      rec["sr_A"] = srA.sr;
      rec["sr_M2"] = srM.sr;
      rec["predicted"] = predicted.get_si();
    } catch (const std::logic_error&) {
      pass = false;
    }
    // spot values of the bare formula
    if (vaserstein_bound(2, 2) != 2 || vaserstein_bound(5, 2) != 3 || vaserstein_bound(1, 3) != 1)
      pass = false;
    rec["result"] = pass ? "pass" : "fail";
    rec["elapsed_ms"] = now_ms() - t0;
    if (!pass) rr.ok = false;
    rr.report["records"].push_back(rec);
  }
  return rr;
}

inline RunResult run_battery(const std::string& name, const std::vector<CorpusEntry>& corpus,
                             bool trace) {
  if (name == "lemma1") return battery_lemma1(corpus);
  if (name == "lemma2a") return battery_lemma2a(corpus);
  if (name == "transforms") return battery_transforms(corpus);
  if (name == "prop6") return battery_prop6(corpus);
  if (name == "theorem7") return battery_theorem7(corpus, trace);
  if (name == "theorem8") return battery_theorem8(corpus);
  if (name == "vaserstein") return battery_vaserstein(corpus);
  throw std::invalid_argument("unknown battery: " + name);
}

// ---------------------------------------------------------------------------
// demos

inline RunResult run_demo(const std::string& name, std::uint64_t seed, unsigned count,
                          long magnitude, bool trace) {
  RunResult rr;
  rr.report = report_shell(seed);
  std::mt19937_64 rng(seed);
  if (magnitude < 1) magnitude = 1;

  if (name == "z-reduce") {
    Reducer red = z_reducer();
    for (unsigned i = 0; i < count; ++i) {
      std::int64_t t0 = now_ms();
      auto row = random_z_row(rng, magnitude);
      auto out = red.fn(row);
      bool pass = out && verify_reduction(*red.ring, row, *out);
      json rec{{"check", "z-reduce"}, {"row", row_to_json(row)},
               {"result", pass ? "pass" : "fail"}, {"elapsed_ms", now_ms() - t0}};
      if (out) {
        rec["c"] = row_to_json(out->c);
        rec["cert"] = row_to_json(out->cert);
      }
      if (!pass) rr.ok = false;
      rr.report["records"].push_back(rec);
    }
    return rr;
  }

  if (name == "m2z-reduce") {
    RingPtr A = m2z_ring();
    Value p = m2z_e(0, 0);
    RingPtr C = make_corner(A, p);
    FullnessCert cert;
    cert.pairs = {{p, p}, {m2z_e(1, 0), m2z_e(0, 1)}};
    Theorem7Result t7 = theorem7_pipeline(A, p, z_corner_reducer(C), cert);
    if (trace) rr.report["trace"] = t7.trace.to_json();
    for (unsigned i = 0; i < count; ++i) {
      std::int64_t t0 = now_ms();
      auto row = random_m2z_row(rng, magnitude);
      auto out = t7.reducer.fn(row);
      bool pass = out && verify_reduction(*A, row, *out) &&
                  is_right_unimodular(*A, reduced_row(*A, row, out->c));
      json rec{{"check", "m2z-reduce"}, {"row", row_to_json(row)},
               {"result", pass ? "pass" : "fail"}, {"elapsed_ms", now_ms() - t0}};
      if (out) {
        rec["c"] = row_to_json(out->c);
        rec["cert"] = row_to_json(out->cert);
      }
      if (!pass) rr.ok = false;
      rr.report["records"].push_back(rec);
    }
    return rr;
  }
  throw std::invalid_argument("unknown demo: " + name);
}

// ---------------------------------------------------------------------------
// report replay

inline bool verify_record(const json& rec, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::string check = rec.at("check").get<std::string>();
  if (rec.value("result", "pass") != "pass") return fail("record did not pass originally");

  if (check == "sr") {
    RingPtr R = ring_from_spec(rec.at("ring"));
    for (const auto& fj : rec.at("failures")) {
      auto row = row_from_json(fj);
      if (!is_right_unimodular(*R, row)) return fail("sr failure row is not unimodular");
      if (is_reducible(*R, row)) return fail("sr failure row is reducible after all");
    }
    return true;
  }
  if (check == "lemma1") {
    RingPtr A = ring_from_spec(rec.at("ring"));
    SkewCorner sc = unit_corner(A, rec.at("n").get<unsigned>());
    if (rec.contains("sample")) {
      CornerEquation eq = eq_from_json(rec.at("sample").at("eq"));
      if (!valid_equation(sc, eq)) return fail("lemma1 sample equation invalid");
      if (!verify_solution(sc, eq, sol_from_json(rec.at("sample").at("sol"))))
        return fail("lemma1 sample solution invalid");
    }
    if (rec.contains("counterexample") && !valid_equation(sc, eq_from_json(rec.at("counterexample"))))
      return fail("lemma1 counterexample is not a valid equation");
    return true;
  }
  if (check == "lemma2a") {
    RingPtr A = ring_from_spec(rec.at("ring"));
    for (const auto& s : rec.at("pairs")) {
      Value p = value_from_json(s.at("p")), q = value_from_json(s.at("q"));
      SkewCorner sc = make_skew_corner(A, p, q);
      if (s.contains("witness")) {
        Value a = value_from_json(s.at("witness").at("a")), b = value_from_json(s.at("witness").at("b"));
        if (!verify_subequivalence(*A, p, q, SubeqWitness{a, b}))
          return fail("lemma2a witness does not verify");
      }
      if (s.contains("counterexample") && !valid_equation(sc, eq_from_json(s.at("counterexample"))))
        return fail("lemma2a counterexample is not a valid equation");
    }
    return true;
  }
  if (check == "transforms" || check == "prop6") {
    const json& s = rec.contains("sample") ? rec.at("sample") : json();
    if (s.is_object() && s.contains("eq")) {
      RingPtr A = ring_from_spec(rec.at("ring"));
      Value p = value_from_json(s.at("p")), q = value_from_json(s.contains("q") ? s.at("q") : s.at("p"));
      // a prop6 sample lives on the enlarged corner (p + r, p + r)
      SkewCorner sc = s.contains("r")
                          ? make_skew_corner(A, A->add(p, value_from_json(s.at("r"))),
                                             A->add(p, value_from_json(s.at("r"))))
                          : make_skew_corner(A, p, q);
      CornerEquation eq = eq_from_json(s.at("eq"));
      if (!valid_equation(sc, eq)) return fail("sample equation invalid");
      if (!verify_solution(sc, eq, sol_from_json(s.at("sol")))) return fail("sample solution invalid");
    }
    return true;
  }
  if (check == "theorem7") {
    RingPtr A = ring_from_spec(rec.at("ring"));
    for (const auto& s : rec.at("samples")) {
      auto row = row_from_json(s.at("row"));
      ReduceOutput out{row_from_json(s.at("c")), row_from_json(s.at("cert"))};
      if (!verify_reduction(*A, row, out)) return fail("theorem7 sample reduction invalid");
    }
    return true;
  }
  if (check == "theorem8") {
    RingPtr A = ring_from_spec(rec.at("ring"));
    Value p = value_from_json(rec.at("p"));
    FullnessCert cert;
    for (const auto& pr : rec.at("pairs"))
      cert.pairs.emplace_back(value_from_json(pr.at(0)), value_from_json(pr.at(1)));
    Theorem8Result t8 = theorem8_construct(A, p, cert, rec.at("sr_A").get<long>());
    if (value_to_json(t8.qq) != rec.at("q")) return fail("theorem8 idempotent mismatch");
    if (t8.bound != mpz_class(rec.at("bound").get<long>())) return fail("theorem8 bound mismatch");
    return true;
  }
  if (check == "vaserstein") {
    mpz_class srA(rec.at("sr_A").get<long>());
    if (vaserstein_bound(srA, 2) != mpz_class(rec.at("predicted").get<long>()))
      return fail("vaserstein arithmetic mismatch");
    if (rec.at("predicted").get<long>() != rec.at("sr_M2").get<long>())
      return fail("vaserstein sides disagree");
    return true;
  }
  if (check == "z-reduce" || check == "m2z-reduce") {
    RingPtr R = check == "z-reduce" ? make_integers() : m2z_ring();
    auto row = row_from_json(rec.at("row"));
    ReduceOutput out{row_from_json(rec.at("c")), row_from_json(rec.at("cert"))};
    if (!verify_reduction(*R, row, out)) return fail("demo reduction certificate invalid");
    if (!is_right_unimodular(*R, reduced_row(*R, row, out.c)))
      return fail("demo reduced row not unimodular");
    return true;
  }
  return fail("unknown record kind: " + check);
}

inline bool verify_report(const json& report, std::string* why) {
  if (report.value("schema", "") != kReportSchema) {
    if (why) *why = "unknown report schema";
    return false;
  }
  std::size_t i = 0;
  for (const auto& rec : report.at("records")) {
    std::string w;
    bool ok;
    try {
      ok = verify_record(rec, &w);
    } catch (const std::exception& e) {
      ok = false;
      w = e.what();
    }
    if (!ok) {
      if (why) *why = "record " + std::to_string(i) + ": " + w;
      return false;
    }
    ++i;
  }
  return true;
}

// ---------------------------------------------------------------------------

inline std::string report_to_csv(const json& report) {
  std::ostringstream os;
  os << "check,result,elapsed_ms,detail\n";
  for (const auto& rec : report.at("records")) {
    json detail = rec;
    detail.erase("check");
    detail.erase("result");
    if (detail.contains("elapsed_ms")) detail.erase("elapsed_ms");
    std::string d = detail.dump();
    std::string esc;
    for (char c : d) {
      if (c == '"') esc += "\"\"";
      else esc += c;
    }
    os << rec.at("check").get<std::string>() << ',' << rec.value("result", "") << ','
       << rec.value("elapsed_ms", 0) << ",\"" << esc << "\"\n";
  }
  return os.str();
}

}  // namespace srank
