// Acceptance suite: runs every top-level guarantee of the toolkit at desk
// scale and prints one PASS/FAIL line per criterion.

#include "presred/gip.hpp"
#include "presred/kpt.hpp"
#include "presred/optimize.hpp"
#include "presred/presburger.hpp"
#include "presred/props.hpp"
#include "presred/satred.hpp"

#include <chrono>
#include <cstdio>
#include <set>
#include <string>

using namespace presred;

namespace {

int g_failures = 0;
std::string g_note;  // extra detail set by a criterion body

void report(int idx, const std::string& what, bool pass, double seconds) {
  std::printf("%s criterion %d: %s (%.1fs)\n", pass ? "PASS" : "FAIL", idx, what.c_str(),
              seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <typename Fn>
void run(int idx, const std::string& what, Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string note;
  g_note.clear();
  try {
    pass = fn();
  } catch (const std::exception& e) {
    note = std::string(" [") + e.what() + "]";
  }
  if (!g_note.empty()) note += " [" + g_note + "]";
  auto t1 = std::chrono::steady_clock::now();
  report(idx, what + note, pass, std::chrono::duration<double>(t1 - t0).count());
}

// 1. count_sat = count_apcover = count_certified on 200 random 3-CNFs.
bool criterion1() {
  Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    Cnf3 f = random_cnf(rng, static_cast<int>(rng.pick(1, 4)), static_cast<int>(rng.pick(0, 6)));
    Int n_sat = count_sat(f);
    auto [raw, dec] = reduce_3sat_to_apcover(f);
    if (count_apcover(raw) != n_sat) return false;
    auto [norm, shift] = normalize(raw);
    if (count_certified(build_sentence3(build_encoding(norm))) != n_sat) return false;
  }
  return true;
}

// 2. Sentence shapes: 5 variables / 10 inequalities, and 9 / 20 for m = 2.
bool criterion2() {
  Rng rng(202);
  for (int i = 0; i < 50; ++i) {
    APCoverInstance inst = random_normalized_apcover(rng, 3, 9);
    ShortSentence s = build_sentence3(build_encoding(inst));
    if (s.num_vars != 5 || s.inequality_count() != 10) return false;
  }
  for (int i = 0; i < 20; ++i) {
    QbfInstance f = random_qbf(rng, 2, static_cast<int>(rng.pick(1, 2)),
                               static_cast<int>(rng.pick(1, 4)));
    ShortSentence s = build_sentence_m(reduce_qbf_to_mapcover(f));
    if (s.num_vars != 9 || s.inequality_count() != 20) return false;
  }
  return true;
}

// 3. Lattice-free parallelogram iff chain membership, exhaustively over all
// odd fractions with p, q <= 200 and g1 >= 2.
bool criterion3() {
  for (long long p = 2; p <= 200; ++p) {
    for (long long q = 1; 2 * q <= p; ++q) {
      if (int_gcd(p, q) != 1) continue;
      ContinuedFraction cf = to_odd_cfrac(Rat(p, q));
      ConvergentChains ch = convergents(cf);
      const Int g1 = cf.a_terms[0];
      std::set<std::pair<Int, Int>> chain;
      for (const auto& y : chain_points(ch, g1)) chain.emplace(y.y1, y.y2);
      for (Int y1 = 1; y1 <= q; ++y1) {
        for (Int y2 = g1; y2 <= p; ++y2) {
          if (p * y1 - q * y2 < 0) continue;
          if (parallelogram_lattice_free({y1, y2}, p, q) != (chain.count({y1, y2}) > 0)) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

// 4. Conditions (1)-(7) on 100 random normalized instances.
bool criterion4() {
  Rng rng(404);
  for (int i = 0; i < 100; ++i) {
    APCoverInstance inst = random_normalized_apcover(rng, 3, 9);
    if (!check_conditions(build_encoding(inst)).all()) return false;
  }
  return true;
}

// 5. GIP constructions on the reference instance.  The attainable parts of
// the section-5 bookkeeping (24 rows exact, 6 facets per lifted disjunction
// polytope, x in Z^3 with at most 8400 rows, every McMullen cap) are checked
// alongside the literal vertex-count equalities 12/24/16/40, which exact
// enumeration refutes (the slab never reaches the x1 box faces and the
// reference instance has g1 = 2); the criterion reports the actual counts.
bool criterion5() {
  Encoding enc = build_encoding({1, 5, {{2, 1, 3}}});
  bool ok = true;
  GIPInstance g1 = build_system1(enc);
  if (g1.rows() != 24 || g1.n_x != 6) {
    ok = false;
    g_note += "system1 rows " + std::to_string(g1.rows()) + " != 24; ";
  }

  const Int N = int_pow(enc.M + enc.p + enc.q, 3);
  const Int B1 = 2 * N + enc.M * N;
  const Int B2 = 2 * N * (enc.p + enc.q);
  VPolytope strip1{2,
                   {{Rat(1), Rat(-B2)}, {Rat(1), Rat(B2)}, {Rat(enc.M - 1), Rat(-B2)},
                    {Rat(enc.M - 1), Rat(B2)}}};
  VPolytope strip2{2, {{Rat(-B1), Rat(0)}, {Rat(-B1), Rat(B2)}, {Rat(B1), Rat(0)},
                       {Rat(B1), Rat(B2)}}};
  if (facets_of(lift_union(strip1, strip2)).rows.size() != 6) {
    ok = false;
    g_note += "lifted disjunction polytope is not 6-facet; ";
  }

  HPolytope h3;
  h3.dim = 3;
  h3.rows.push_back({{enc.M, Int(1), Int(-1)}, Int(-1)});
  h3.rows.push_back({{-enc.M, Int(-1), Int(1)}, enc.M - 1});
  h3.rows.push_back({{Int(1), Int(0), Int(0)}, N});
  h3.rows.push_back({{Int(-1), Int(0), Int(0)}, N});
  h3.rows.push_back({{Int(0), Int(1), Int(0)}, N});
  h3.rows.push_back({{Int(0), Int(-1), Int(0)}, N});
  h3.rows.push_back({{Int(0), Int(0), Int(1)}, N});
  h3.rows.push_back({{Int(0), Int(0), Int(-1)}, N});
  const std::size_t n3 = vertices_of(h3).vertices.size();

  HPolytope h4;
  h4.dim = 4;
  h4.rows.push_back({{-enc.p, enc.q, enc.p, -enc.q}, Int(0)});
  h4.rows.push_back({{Int(0), Int(0), -enc.p, enc.q}, Int(0)});
  h4.rows.push_back({{Int(0), Int(-1), Int(0), Int(1)}, Int(-1)});
  h4.rows.push_back({{Int(0), Int(0), Int(0), Int(-1)}, Int(-1)});
  h4.rows.push_back({{Int(0), Int(-1), Int(0), Int(0)}, -enc.g1});
  h4.rows.push_back({{Int(1), Int(0), Int(0), Int(0)}, enc.q});
  h4.rows.push_back({{-enc.p, enc.q, Int(0), Int(0)}, Int(0)});
  const std::size_t n4 = vertices_of(h4).vertices.size();
  const std::size_t p1 = 2 * n3, p2 = 2 * n4, lift = p1 + p2;

  // McMullen caps always hold.
  if (Int(static_cast<long long>(n3)) > mcmullen_f(3, 8) || p1 > 24 || p2 > 16 || lift > 40) {
    ok = false;
    g_note += "a McMullen cap failed; ";
  }
  // Literal spec equalities (refuted by enumeration; see the notes above).
  if (n3 != 12 || p1 != 24 || p2 != 16 || lift != 40) {
    ok = false;
    g_note += "literal counts 12/24/16/40 unattainable, enumeration gives " +
              std::to_string(n3) + "/" + std::to_string(p1) + "/" + std::to_string(p2) + "/" +
              std::to_string(lift) + " (McMullen caps all hold); ";
  }

  GIPInstance g2 = build_system2(enc);
  if (g2.n_x != 3 || Int(static_cast<long long>(g2.rows())) > mcmullen_f(6, 40)) {
    ok = false;
    g_note += "system2 shape violated; ";
  }
  return ok;
}

// 6. count_gip(system1) = count_gip(system2) = count_apcover on 20 tiny
// pipeline instances.
bool criterion6() {
  auto instances = tiny_pipeline_instances(20);
  if (instances.size() != 20) return false;
  for (const auto& inst : instances) {
    Encoding enc = build_encoding(inst);
    if (enc.M > 60) return false;
    Int want = count_apcover(inst);
    GIPInstance g1 = build_system1(enc);
    GipScanHints h1 = hints_from_encoding(enc, 4);
    if (count_gip(g1, g1.x_box, &h1) != want) return false;
    GIPInstance g2 = build_system2(enc);
    GipScanHints h2 = hints_from_encoding(enc, 1);
    if (count_gip(g2, g2.x_box, &h2) != want) return false;
  }
  return true;
}

// 7. McMullen values.
bool criterion7() {
  if (mcmullen_f(3, 8) != 12) return false;
  if (mcmullen_f(6, 40) != 8400) return false;
  for (int d = 2; d <= 6; ++d) {
    if (mcmullen_f(d, Int(d) + 1) != d + 1) return false;
  }
  return true;
}

// 8. Bilevel / Pareto agreement on 30 tiny instances, plus the parity trick.
bool criterion8() {
  for (const auto& inst : tiny_pipeline_instances(30)) {
    Encoding enc = build_encoding(inst);
    Int value = solve_bilevel_brute(build_bilevel(enc));
    if ((value > 0) != decide_apcover(inst)) return false;
    if (value != semantic_bilevel_value(enc)) return false;
    if (solve_pareto_brute(build_pareto(enc, false)).min_g != -Rat(value)) return false;
  }
  Rng rng(808);
  for (int i = 0; i < 10; ++i) {
    Cnf3 f = random_cnf(rng, 2, static_cast<int>(rng.pick(1, 4)));
    auto [raw, dec] = reduce_3sat_to_apcover(f, true);
    auto [norm, shift] = normalize(raw);
    Encoding enc = build_encoding(norm);
    Int value = semantic_bilevel_value(enc);
    if (value != 0 && value != 1) return false;
    if ((value > 0) != decide_apcover(norm)) return false;
  }
  return true;
}

// 9. The Fibonacci family: infeasible set = C_1..C_{s+1}, convex and
// midpoint-free, with Fibonacci p and q.
bool criterion9() {
  const long long fib[] = {0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987};
  for (int s = 1; s <= 6; ++s) {
    FibonacciFamily fam = fibonacci_family(s);
    if (fam.p != fib[2 * s + 3] || fam.q != fib[2 * s + 1]) return false;
    auto pts = infeasible_set(fam);
    if (static_cast<int>(pts.size()) != s + 1) return false;
    std::sort(pts.begin(), pts.end());
    for (int i = 1; i <= s + 1; ++i) {
      if (pts[i - 1] != LatticePoint2{fib[2 * i - 1], fib[2 * i + 1]}) return false;
    }
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
      if (cross(pts[i + 1] - pts[i], pts[i + 2] - pts[i + 1]) >= 0) return false;
    }
    if (!midpoint_free(pts)) return false;
  }
  return true;
}

// 10. QBF truth = m-AP-COVER = merged sentence on 50 random 2-block QBFs.
bool criterion10() {
  Rng rng(1010);
  for (int i = 0; i < 50; ++i) {
    QbfInstance f = random_qbf(rng, 2, static_cast<int>(rng.pick(1, 2)),
                               static_cast<int>(rng.pick(1, 4)));
    bool truth = qbf_truth(f);
    MAPCoverInstance m = reduce_qbf_to_mapcover(f);
    if (decide_mapcover(m) != truth) return false;
    if (decide_certified(build_sentence_m(m)) != truth) return false;
  }
  return true;
}

}  // namespace

int main() {
  set_max_threads(2);
  run(1, "parsimony chain across 200 random 3-CNFs", criterion1);
  run(2, "sentence shapes 5/10 and 9/20", criterion2);
  run(3, "lattice-free parallelogram iff chain membership, p,q <= 200", criterion3);
  run(4, "construction conditions (1)-(7) on 100 random instances", criterion4);
  run(5, "GIP constructions and worked vertex counts", criterion5);
  run(6, "GIP oracle equivalence on 20 tiny instances", criterion6);
  run(7, "McMullen bound values", criterion7);
  run(8, "bilevel/Pareto values on 30 tiny instances", criterion8);
  run(9, "Fibonacci family s = 1..6", criterion9);
  run(10, "2-block QBF chain on 50 random instances", criterion10);
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria failed\n", g_failures);
  }
  return g_failures;
}
