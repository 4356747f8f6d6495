#include "presred/props.hpp"

#include "presred/presburger.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace presred {

Cnf3 random_cnf(Rng& rng, int num_vars, int num_clauses) {
  Cnf3 f;
  f.num_vars = num_vars;
  for (int i = 0; i < num_clauses; ++i) {
    std::array<int, 3> cl;
    for (auto& lit : cl) {
      lit = static_cast<int>(rng.pick(1, num_vars)) * (rng.flip() ? 1 : -1);
    }
    f.clauses.push_back(cl);
  }
  return f;
}

QbfInstance random_qbf(Rng& rng, int num_blocks, int vars_per_block, int num_clauses) {
  QbfInstance f;
  f.matrix = random_cnf(rng, num_blocks * vars_per_block, num_clauses);
  int v = 1;
  for (int b = 0; b < num_blocks; ++b) {
    // Innermost block existential, alternating outward.
    Quantifier q = ((num_blocks - 1 - b) % 2 == 0) ? Quantifier::Exists : Quantifier::ForAll;
    std::vector<int> vars;
    for (int i = 0; i < vars_per_block; ++i) vars.push_back(v++);
    f.blocks.emplace_back(q, std::move(vars));
  }
  return f;
}

APCoverInstance random_normalized_apcover(Rng& rng, int max_k, int max_param) {
  APCoverInstance inst;
  inst.mu = rng.pick(1, 3);
  inst.nu = inst.mu + rng.pick(0, max_param - 1);
  const int k = static_cast<int>(rng.pick(0, max_k));
  for (int i = 0; i < k; ++i) {
    APTriple t;
    t.g = rng.pick(2, max_param);
    t.h = rng.pick(1, max_param);
    t.e = rng.pick(1, max_param);
    inst.triples.push_back(t);
  }
  return inst;
}

std::vector<APCoverInstance> tiny_pipeline_instances(std::size_t count) {
  // (g, h, e, nu) with g | e-1, so the solved b-terms stay tiny and p, q do
  // not blow past brute-force range; M = 1 + nu*g*(g+he) <= 60 throughout.
  static const long long raw[][4] = {
      {2, 1, 3, 5}, {2, 1, 3, 4}, {2, 1, 3, 3}, {2, 1, 3, 2}, {2, 1, 5, 4},
      {2, 1, 5, 3}, {2, 1, 5, 2}, {2, 2, 3, 3}, {2, 2, 3, 2}, {2, 2, 5, 2},
      {2, 3, 3, 2}, {2, 1, 7, 3}, {2, 1, 7, 2}, {2, 1, 9, 2}, {3, 1, 4, 2},
      {3, 2, 4, 1}, {3, 1, 7, 1}, {4, 1, 5, 1}, {2, 2, 7, 1}, {2, 3, 5, 1},
      {3, 3, 4, 1}, {4, 2, 5, 1}, {5, 1, 6, 1}, {2, 4, 3, 2}, {2, 4, 3, 1},
      {3, 2, 7, 1}, {2, 2, 5, 1}, {2, 2, 3, 1}, {2, 1, 3, 1}, {2, 5, 3, 1},
  };
  std::vector<APCoverInstance> out;
  for (std::size_t i = 0; i < count && i < sizeof(raw) / sizeof(raw[0]); ++i) {
    APCoverInstance inst;
    inst.mu = 1;
    inst.nu = raw[i][3];
    inst.triples.push_back({Int(raw[i][0]), Int(raw[i][1]), Int(raw[i][2])});
    out.push_back(std::move(inst));
  }
  return out;
}

namespace {

struct Checker {
  int checks = 0;
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

Int brute_uncovered_count(const APCoverInstance& inst) {
  Int n = 0;
  for (Int z = inst.mu; z <= inst.nu; ++z) {
    bool cov = false;
    for (const auto& t : inst.triples) {
      if (ap_member(z, t)) { cov = true; break; }
    }
    if (!cov) ++n;
  }
  return n;
}

PropResult suite_exactmath(unsigned long long seed) {
  Rng rng(seed);
  Checker c;
  for (int i = 0; i < 200; ++i) {
    Int m = rng.pick(2, 10000);
    Int a = rng.pick(1, 100000);
    if (int_gcd(a, m) != 1) continue;
    Int x = mod_inverse(a, m);
    c.expect(x >= 1 && x <= m, "inverse out of [1, m]");
    c.expect(mod_euclid(a * x, m) == 1, "a * inverse != 1 mod m");
  }
  for (int i = 0; i < 100; ++i) {
    // Random coprime moduli with product <= 1e5, checked against a scan.
    std::vector<std::pair<Int, Int>> rs;
    Int prod = 1;
    for (long long m : {rng.pick(2, 13), rng.pick(2, 13), rng.pick(2, 13)}) {
      bool ok = true;
      for (const auto& [r, mm] : rs) {
        if (int_gcd(mm, Int(m)) != 1) ok = false;
      }
      if (!ok) continue;
      rs.emplace_back(rng.pick(0, m - 1), m);
      prod *= m;
    }
    if (rs.empty()) continue;
    Int got = crt_solve(rs);
    Int want = -1;
    for (Int e = 0; e < prod; ++e) {
      bool all = true;
      for (const auto& [r, m] : rs) {
        if (mod_euclid(e, m) != r) { all = false; break; }
      }
      if (all) { want = e; break; }
    }
    c.expect(got == want, "crt_solve disagrees with scan");
  }
  for (int i = 0; i < 100; ++i) {
    Rat a(rng.pick(-50, 50), rng.pick(1, 20));
    Rat b(rng.pick(-50, 50), rng.pick(1, 20));
    c.expect((a + b) - b == a, "rational arithmetic not exact");
  }
  return {"exactmath", c.pass, c.checks, c.detail};
}

ContinuedFraction random_cfrac(Rng& rng, int max_len, long long max_term) {
  int len = static_cast<int>(rng.pick(0, (max_len - 1) / 2));
  ContinuedFraction cf;
  cf.a_terms.push_back(rng.pick(2, max_term));  // keep alpha > 1 with g1 >= 2
  for (int i = 0; i < len; ++i) {
    cf.b_terms.push_back(rng.pick(1, max_term));
    cf.a_terms.push_back(rng.pick(1, max_term));
  }
  // A trailing 1 in an odd representation collapses; keep the last term >= 2
  // when the fraction has more than one term so to_odd round-trips.
  if (!cf.b_terms.empty() && cf.a_terms.back() == 1) cf.a_terms.back() = 2;
  return cf;
}

PropResult suite_contfrac(unsigned long long seed) {
  Rng rng(seed);
  Checker c;
  for (int i = 0; i < 100; ++i) {
    ContinuedFraction cf = random_cfrac(rng, 7, 9);
    Rat val = eval_cfrac(cf);
    ContinuedFraction back = to_odd_cfrac(val);
    c.expect(eval_cfrac(back) == val, "eval(to_odd(eval)) mismatch");
    c.expect(back.a_terms == cf.a_terms && back.b_terms == cf.b_terms,
             "to_odd(eval) did not reproduce the terms");
    ConvergentChains ch = convergents(cf);
    c.expect(Rat(ch.C.back().y2, ch.C.back().y1) == val, "final convergent != value");
    // Interleaved convergents have unimodular consecutive pairs.
    std::vector<LatticePoint2> seq;
    for (std::size_t j = 0; j < ch.C.size(); ++j) {
      seq.push_back(ch.C[j]);
      if (j < ch.D.size()) seq.push_back(ch.D[j]);
    }
    for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
      c.expect(boost::multiprecision::abs(cross(seq[j], seq[j + 1])) == 1,
               "consecutive convergents not unimodular");
    }
    auto pts = chain_points(ch, 0);
    for (std::size_t j = 1; j + 1 < pts.size(); ++j) {
      c.expect(cross(pts[j], pts[j + 1]) > 0, "chain slopes not strictly increasing");
    }
  }
  for (int i = 0; i < 40; ++i) {
    ContinuedFraction cf = random_cfrac(rng, 5, 5);
    c.expect(check_chain_properties(convergents(cf), cf).all(), "G1-G6 failed");
  }
  return {"contfrac", c.pass, c.checks, c.detail};
}

PropResult suite_apcover(unsigned long long seed) {
  Rng rng(seed);
  Checker c;
  for (int i = 0; i < 200; ++i) {
    APTriple t{rng.pick(0, 20), rng.pick(0, 100), rng.pick(1, 9)};
    std::set<Int> expand;
    for (Int j = 0; j <= t.h; ++j) expand.insert(t.g + j * t.e);
    Int z = rng.pick(-5, 120);
    c.expect(ap_member(z, t) == (expand.count(z) > 0), "ap_member vs expansion");
  }
  for (int i = 0; i < 100; ++i) {
    APCoverInstance inst = random_normalized_apcover(rng, 3, 9);
    Int covered = 0;
    for (Int z = inst.mu; z <= inst.nu; ++z) {
      for (const auto& t : inst.triples) {
        if (ap_member(z, t)) { ++covered; break; }
      }
    }
    c.expect(count_apcover(inst) + covered == inst.interval_size(),
             "count + covered != interval size");
  }
  for (int i = 0; i < 500; ++i) {
    // Raw instances, some singleton progressions and nonpositive offsets.
    APCoverInstance inst;
    inst.mu = rng.pick(-3, 3);
    inst.nu = inst.mu + rng.pick(0, 8);
    int k = static_cast<int>(rng.pick(0, 3));
    for (int j = 0; j < k; ++j) {
      inst.triples.push_back({rng.pick(0, 8), rng.pick(0, 4), rng.pick(1, 6)});
    }
    auto [norm, shift] = normalize(inst);
    c.expect(norm.is_normalized(), "normalize output not normalized");
    for (Int z = inst.mu; z <= inst.nu; ++z) {
      bool was = false, is = false;
      for (const auto& t : inst.triples) {
        if (ap_member(z, t)) { was = true; break; }
      }
      for (const auto& t : norm.triples) {
        if (ap_member(z + shift, t)) { is = true; break; }
      }
      c.expect(was == is, "normalize changed coverage inside the window");
    }
    Int before = brute_uncovered_count(inst);
    APCoverInstance window = norm;
    window.mu = inst.mu + shift;
    window.nu = inst.nu + shift;
    c.expect(brute_uncovered_count(window) == before, "normalize changed the count");
  }
  for (int i = 0; i < 100; ++i) {
    APCoverInstance inst = random_normalized_apcover(rng, 3, 9);
    MAPCoverInstance m1;
    m1.intervals.emplace_back(inst.mu, inst.nu);
    m1.groups.push_back(inst.triples);
    m1.taus.push_back(1);
    m1.quantifiers.push_back(Quantifier::Exists);
    c.expect(decide_mapcover(m1) == decide_apcover(inst), "m=1 mapcover != apcover");
  }
  return {"apcover", c.pass, c.checks, c.detail};
}

PropResult suite_satred(unsigned long long seed) {
  Rng rng(seed);
  Checker c;
  for (int i = 0; i < 200; ++i) {
    Cnf3 f = random_cnf(rng, static_cast<int>(rng.pick(1, 4)), static_cast<int>(rng.pick(0, 6)));
    auto [inst, dec] = reduce_3sat_to_apcover(f);
    c.expect(count_sat(f) == count_apcover(inst), "reduction not parsimonious");
    // Decoder round-trip over the uncovered points.
    for (Int z = inst.mu; z <= inst.nu; ++z) {
      bool cov = false;
      for (const auto& t : inst.triples) {
        if (ap_member(z, t)) { cov = true; break; }
      }
      if (cov) continue;
      auto assign = dec.decode(z);
      unsigned long long bits = 0;
      for (std::size_t j = 0; j < assign.size(); ++j) {
        if (assign[j]) bits |= 1ULL << j;
      }
      c.expect(f.satisfied_by(bits), "decoded assignment not satisfying");
      c.expect(dec.encode(assign) == z, "re-encoded point differs");
    }
  }
  for (int i = 0; i < 50; ++i) {
    Cnf3 f = random_cnf(rng, static_cast<int>(rng.pick(1, 3)), static_cast<int>(rng.pick(0, 4)));
    auto [inst, dec] = reduce_3sat_to_apcover(f, true);
    c.expect(count_sat(f) == count_apcover(inst), "parity reduction not parsimonious");
    for (Int z = inst.mu; z <= inst.nu; ++z) {
      bool cov = false;
      for (const auto& t : inst.triples) {
        if (ap_member(z, t)) { cov = true; break; }
      }
      if (!cov) c.expect(mod_euclid(z, 2) == 1, "uncovered point is even");
      if (mod_euclid(z, 2) == 0) c.expect(cov, "even point left uncovered");
    }
  }
  for (int i = 0; i < 100; ++i) {
    // Degenerate one-block QBF agrees with the plain reduction.
    Cnf3 f = random_cnf(rng, static_cast<int>(rng.pick(1, 3)), static_cast<int>(rng.pick(0, 4)));
    QbfInstance qf;
    std::vector<int> vars;
    for (int v = 1; v <= f.num_vars; ++v) vars.push_back(v);
    qf.blocks.emplace_back(Quantifier::Exists, vars);
    qf.matrix = f;
    MAPCoverInstance m1 = reduce_qbf_to_mapcover(qf);
    auto [inst, dec] = reduce_3sat_to_apcover(f);
    c.expect(m1.taus == std::vector<Int>{1}, "m=1 tau != 1");
    c.expect(m1.intervals[0].first == inst.mu && m1.intervals[0].second == inst.nu,
             "m=1 interval differs");
    c.expect(m1.groups[0] == inst.triples, "m=1 groups differ");
  }
  for (int i = 0; i < 30; ++i) {
    QbfInstance f = random_qbf(rng, 2, 2, static_cast<int>(rng.pick(1, 4)));
    MAPCoverInstance m = reduce_qbf_to_mapcover(f);
    // tau structure.
    std::vector<Int> prods;
    for (std::size_t t = 0; t < m.m(); ++t) {
      prods.push_back(m.intervals[t].second - m.intervals[t].first + 1);
    }
    for (std::size_t t = 0; t < m.m(); ++t) {
      for (std::size_t s = 0; s < m.m(); ++s) {
        c.expect(mod_euclid(m.taus[t], prods[s]) == (s == t ? 1 : 0), "tau congruence");
      }
    }
    c.expect(qbf_truth(f) == decide_mapcover(m), "QBF truth != m-AP-COVER");
  }
  return {"satred", c.pass, c.checks, c.detail};
}

PropResult suite_encode(unsigned long long seed) {
  Rng rng(seed);
  Checker c;
  for (int i = 0; i < 100; ++i) {
    APCoverInstance inst = random_normalized_apcover(rng, 3, 9);
    Encoding enc = build_encoding(inst);
    c.expect(check_conditions(enc).all(), "conditions (1)-(7) failed");
    // Delta reconstruction: residues of C' equal the union of progressions.
    if (!inst.triples.empty()) {
      std::set<Int> want;
      for (const auto& t : inst.triples) {
        for (Int j = 0; j <= t.h; ++j) want.insert(t.g + j * t.e);
      }
      auto res = enc.delta_residues();
      std::set<Int> got(res.begin(), res.end());
      c.expect(got == want, "Delta != union of progressions");
    }
    // Loose but checkable bit-length bound.
    const unsigned exp = 2 * (2 * static_cast<unsigned>(enc.k()) + 1);
    c.expect(enc.p <= int_pow(enc.M + 1, exp) && enc.q <= int_pow(enc.M + 1, exp),
             "p or q exceeds the recurrence bound");
    ShortSentence s = build_sentence3(enc);
    c.expect(s.num_vars == 5 && s.inequality_count() == 10, "sentence shape not 5/10");
    c.expect(decide_certified(s) == decide_apcover(inst), "sentence truth != decision");
    c.expect(count_certified(s) == count_apcover(inst), "sentence count != count");
  }
  {
    // A corrupted b0 breaks condition (4) or (6).
    APCoverInstance inst;
    inst.mu = 1;
    inst.nu = 5;
    inst.triples.push_back({2, 1, 3});
    Encoding enc = build_encoding(inst);
    enc.cfrac.b_terms[0] += 1;
    enc.chains = convergents(enc.cfrac);
    enc.p = enc.chains.C.back().y2;
    enc.q = enc.chains.C.back().y1;
    auto rep = check_conditions(enc);
    c.expect(!rep.c4_odd_congruence || !rep.c5_even_congruence || !rep.c6_segments_match,
             "corrupted encoding passed the congruence checks");
  }
  for (int i = 0; i < 100; ++i) {
    Cnf3 f = random_cnf(rng, static_cast<int>(rng.pick(1, 3)), static_cast<int>(rng.pick(0, 4)));
    auto [raw, dec] = reduce_3sat_to_apcover(f);
    auto [norm, shift] = normalize(raw);
    Encoding enc = build_encoding(norm);
    ShortSentence s = build_sentence3(enc);
    c.expect(count_sat(f) == count_certified(s), "pipeline parsimony broken");
  }
  return {"encode", c.pass, c.checks, c.detail};
}

BoundedBox sentence3_box(const Encoding& enc) {
  BoundedBox box;
  Int lo1 = floor_div(enc.source.mu - enc.p, enc.M) - 1;
  Int hi1 = enc.q > floor_div(enc.source.nu, enc.M) + 1 ? enc.q
                                                        : floor_div(enc.source.nu, enc.M) + 1;
  box.ranges.emplace_back(enc.source.mu, enc.source.nu);  // z
  box.ranges.emplace_back(Int(0), enc.q);                 // y1
  box.ranges.emplace_back(Int(0), enc.p);                 // y2
  box.ranges.emplace_back(lo1, hi1);                      // x1
  box.ranges.emplace_back(Int(0), enc.p);                 // x2
  return box;
}

PropResult suite_presburger(unsigned long long seed) {
  Rng rng(seed);
  Checker c;
  for (const auto& inst : tiny_pipeline_instances(8)) {
    Encoding enc = build_encoding(inst);
    ShortSentence s = build_sentence3(enc);
    c.expect(decide_bounded(s, sentence3_box(enc)) == decide_certified(s),
             "bounded and certified evaluators disagree");
  }
  // De Morgan sanity on random tiny sentences.
  for (int i = 0; i < 50; ++i) {
    ShortSentence s;
    s.num_vars = 3;
    s.prefix = {{rng.flip() ? Quantifier::Exists : Quantifier::ForAll, 1},
                {rng.flip() ? Quantifier::Exists : Quantifier::ForAll, 1},
                {Quantifier::Exists, 1}};
    std::vector<BoolTree> rows;
    for (int r = 0; r < 3; ++r) {
      LinearInequality li;
      for (int v = 0; v < 3; ++v) li.coeffs.push_back(rng.pick(-3, 3));
      li.bound = rng.pick(-4, 4);
      rows.push_back(BoolTree::leaf(std::move(li)));
    }
    std::vector<BoolTree> two = {rows[0], BoolTree::make_or({rows[1], rows[2]})};
    s.matrix = BoolTree::make_and(std::move(two));
    BoundedBox box;
    for (int v = 0; v < 3; ++v) box.ranges.emplace_back(Int(-3), Int(3));
    c.expect(decide_bounded(s, box) != decide_bounded(negate_sentence(s), box),
             "negated sentence did not flip");
  }
  // Adding a progression can only lower the count.
  for (int i = 0; i < 30; ++i) {
    APCoverInstance inst = random_normalized_apcover(rng, 2, 9);
    Int before = count_certified(build_sentence3(build_encoding(inst)));
    inst.triples.push_back({rng.pick(2, 9), rng.pick(1, 9), rng.pick(1, 9)});
    Int after = count_certified(build_sentence3(build_encoding(inst)));
    c.expect(after <= before, "count increased after adding a progression");
  }
  // Empty connectives.
  c.expect(BoolTree::make_and({}).eval({}) && !BoolTree::make_or({}).eval({}),
           "empty connective conventions");
  return {"presburger", c.pass, c.checks, c.detail};
}

VPolytope random_vpoly(Rng& rng, int dim, int npts) {
  VPolytope v;
  v.dim = dim;
  for (int i = 0; i < npts; ++i) {
    std::vector<Rat> pt;
    for (int d = 0; d < dim; ++d) pt.emplace_back(rng.pick(-6, 6));
    v.vertices.push_back(std::move(pt));
  }
  std::sort(v.vertices.begin(), v.vertices.end());
  v.vertices.erase(std::unique(v.vertices.begin(), v.vertices.end()), v.vertices.end());
  return v;
}

PropResult suite_geometry(unsigned long long seed) {
  Rng rng(seed);
  Checker c;
  c.expect(mcmullen_f(3, 8) == 12, "f(3,8) != 12");
  c.expect(mcmullen_f(6, 40) == 8400, "f(6,40) != 8400");
  for (int d = 2; d <= 6; ++d) c.expect(mcmullen_f(d, d + 1) == d + 1, "simplex bound");

  // Lemma equivalence: lattice-free parallelogram iff on the chain.
  for (int i = 0; i < 60; ++i) {
    ContinuedFraction cf = random_cfrac(rng, 5, 4);
    ConvergentChains ch = convergents(cf);
    const Int p = ch.C.back().y2, q = ch.C.back().y1;
    if (p > 60 || q > 60) continue;
    const Int g1 = cf.a_terms[0];
    auto pts = chain_points(ch, g1);
    std::set<std::pair<Int, Int>> on_chain;
    for (const auto& y : pts) on_chain.emplace(y.y1, y.y2);
    for (Int y1 = 0; y1 <= q; ++y1) {
      for (Int y2 = g1; y2 <= p; ++y2) {
        if (p * y1 - q * y2 < 0) continue;
        bool free = parallelogram_lattice_free({y1, y2}, p, q);
        c.expect(free == (on_chain.count({y1, y2}) > 0), "lattice-freeness != chain membership");
      }
    }
  }

  // V -> H -> V round trip on random full-dimensional hulls.
  int done = 0;
  for (int i = 0; i < 200 && done < 40; ++i) {
    int dim = static_cast<int>(rng.pick(2, 3));
    VPolytope raw = random_vpoly(rng, dim, dim + static_cast<int>(rng.pick(2, 5)));
    HPolytope h;
    try {
      h = facets_of(raw);
    } catch (const std::invalid_argument&) {
      continue;  // degenerate sample
    }
    ++done;
    VPolytope back = vertices_of(h);
    HPolytope again = facets_of(back);
    c.expect(again.rows.size() == h.rows.size(), "H-rep changed across the round trip");
    VPolytope verts2 = vertices_of(again);
    c.expect(verts2.vertices == back.vertices, "V-rep changed across the round trip");
    c.expect(Int(static_cast<long long>(h.rows.size())) <=
                 mcmullen_f(dim, Int(static_cast<long long>(back.vertices.size()))),
             "facet count above the McMullen bound");
    c.expect(Int(static_cast<long long>(back.vertices.size())) <=
                 mcmullen_f(dim, Int(static_cast<long long>(h.rows.size()))),
             "vertex count above the McMullen bound");
  }

  // Lifting: integer points of the lift project onto the union.
  for (int i = 0; i < 50; ++i) {
    VPolytope a = random_vpoly(rng, 2, 4);
    VPolytope b = random_vpoly(rng, 2, 4);
    if (a.vertices.size() < 3 || b.vertices.size() < 3) continue;
    HPolytope ha, hb, hl;
    try {
      ha = facets_of(a);
      hb = facets_of(b);
      hl = facets_of(lift_union(vertices_of(ha), vertices_of(hb)));
    } catch (const std::invalid_argument&) {
      continue;
    }
    for (Int x = -7; x <= 7; ++x) {
      for (Int y = -7; y <= 7; ++y) {
        bool in_union = ha.contains_int({x, y}) || hb.contains_int({x, y});
        bool lifted = false;
        for (Int t = 0; t <= 1; ++t) {
          if (hl.contains_int({x, y, t})) {
            // The lifted slice at integer heights is the matching piece.
            bool piece = t == 0 ? ha.contains_int({x, y}) : hb.contains_int({x, y});
            c.expect(piece, "lifted slice contains a point outside its piece");
            lifted = true;
          }
        }
        c.expect(in_union == lifted, "integer projection != union");
      }
    }
  }
  return {"geometry", c.pass, c.checks, c.detail};
}

PropResult suite_gip(unsigned long long seed) {
  Rng rng(seed);
  Checker c;
  auto instances = tiny_pipeline_instances(4);
  for (const auto& inst : instances) {
    Encoding enc = build_encoding(inst);
    GIPInstance g1 = build_system1(enc);
    GIPInstance g2 = build_system2(enc);
    GipScanHints h1 = hints_from_encoding(enc, 4);
    GipScanHints h2 = hints_from_encoding(enc, 1);
    Int want = count_apcover(inst);
    c.expect(count_gip(g1, g1.x_box, &h1) == want, "system1 count != AP-COVER count");
    c.expect(count_gip(g2, g2.x_box, &h2) == want, "system2 count != AP-COVER count");
    // A one-step-larger box finds nothing new.
    BoundedBox bigger = g1.x_box;
    for (auto& [lo, hi] : bigger.ranges) {
      lo -= 1;
      hi += 1;
    }
    c.expect(count_gip(g1, bigger, &h1) == want, "larger box changed the count");
    // Appending a row can only lower the count.
    GIPInstance cut = g1;
    cut.A.push_back(std::vector<Int>(cut.n_x, 0));
    cut.B.push_back({Int(0), Int(1)});
    cut.C.push_back({Int(0)});
    cut.b.push_back(enc.p / 2);
    c.expect(count_gip(cut, cut.x_box, &h1) <= want, "extra row increased the count");
  }
  return {"gip", c.pass, c.checks, c.detail};
}

PropResult suite_optimize(unsigned long long seed) {
  Rng rng(seed);
  Checker c;
  for (const auto& inst : tiny_pipeline_instances(8)) {
    Encoding enc = build_encoding(inst);
    BilevelInstance bl = build_bilevel(enc);
    Int value = solve_bilevel_brute(bl);
    c.expect((value > 0) == decide_apcover(inst), "bilevel positivity != decision");
    c.expect(value == semantic_bilevel_value(enc), "brute and semantic values differ");
    ParetoInstance pa = build_pareto(enc, false);
    ParetoSolution sol = solve_pareto_brute(pa);
    c.expect(sol.min_g == -Rat(value), "Pareto minimum != negated bilevel value");
    c.expect(Int(static_cast<long long>(sol.pareto_set.size())) == inst.interval_size(),
             "one Pareto outcome per z");
  }
  // Weak-convergent pairs land on the chains (the call throws otherwise).
  {
    int hits = 0;
    for (Int u1 = 0; u1 <= 6; ++u1) {
      for (Int u2 = 0; u2 <= 6; ++u2) {
        for (Int v1 = 0; v1 <= 6; ++v1) {
          for (Int v2 = 0; v2 <= 6; ++v2) {
            if (is_weak_convergent_pair({u1, u2}, {v1, v2}, Rat(5, 2))) ++hits;
          }
        }
      }
    }
    c.expect(hits > 0, "no hypothesis pairs found in the box");
  }
  // Exhaustive over every fraction with p, q <= 60: each determinant-one
  // pair in the box satisfying the slope hypothesis lies on the chains.
  // Pairs come from the extended-Euclid line v = v0 + t*u.
  for (long long p = 2; p <= 60; ++p) {
    for (long long q = 1; q < p; ++q) {
      if (int_gcd(p, q) != 1) continue;
      ConvergentChains ch = convergents(to_odd_cfrac(Rat(p, q)));
      std::set<std::pair<Int, Int>> cset, dset;
      for (const auto& pt : chain_points(ch, 0)) cset.emplace(pt.y1, pt.y2);
      for (const auto& pt : chain_points_d(ch)) dset.emplace(pt.y1, pt.y2);
      for (Int u1 = 0; u1 <= q; ++u1) {
        for (Int u2 = 0; u2 <= p; ++u2) {
          if (!(u2 * q < p * u1)) continue;  // u2/u1 < alpha
          if (int_gcd(u1, u2) != 1) continue;
          // v2 u1 - v1 u2 = 1: v = (b, a) + t (u1, u2) with a u1 - b u2 = 1.
          Int a, b;
          if (u2 == 0) {
            a = 1;
            b = 0;
          } else if (u2 == 1) {
            a = 1;
            b = u1 - 1;
          } else {
            a = mod_inverse(mod_euclid(u1, u2), u2);
            b = (a * u1 - 1) / u2;
          }
          for (Int t = -p - 1; t <= p + 1; ++t) {
            Int v1 = b + t * u1, v2 = a + t * u2;
            if (v1 < 0 || v1 > q || v2 < 0 || v2 > p) continue;
            if (!(p * v1 < q * v2)) continue;  // alpha < v2/v1
            if (v2 * u1 - v1 * u2 != 1) continue;
            c.expect(cset.count({u1, u2}) > 0, "hypothesis u off the chain");
            c.expect(dset.count({v1, v2}) > 0, "hypothesis v off the chain");
          }
        }
      }
    }
  }
  // Inner minimizers have determinant one and chain membership.
  for (const auto& inst : tiny_pipeline_instances(4)) {
    Encoding enc = build_encoding(inst);
    BilevelInstance bl = build_bilevel(enc);
    auto cpts = enc.cprime();
    std::set<std::pair<Int, Int>> chain;
    for (const auto& y : cpts) chain.emplace(y.y1, y.y2);
    HPolytope uq, vp;
    uq.dim = vp.dim = 2;
    for (const auto& r : bl.W.rows) {
      if (r.coeffs[4] != 0) continue;
      if (r.coeffs[0] != 0 || r.coeffs[1] != 0) {
        uq.rows.push_back({{r.coeffs[0], r.coeffs[1]}, r.bound});
      } else {
        vp.rows.push_back({{r.coeffs[2], r.coeffs[3]}, r.bound});
      }
    }
    auto qpts = lattice_points_2d(uq);
    auto ppts = lattice_points_2d(vp);
    for (Int z = bl.mu; z <= bl.nu; ++z) {
      Rat best;
      bool first = true;
      LatticePoint2 bu{0, 0}, bv{0, 0};
      Int bt = 0;
      for (const auto& u : qpts) {
        for (const auto& v : ppts) {
          for (Int t = 0; t <= bl.T; ++t) {
            Rat val = bl.h.eval({z, u.y1, u.y2, v.y1, v.y2, t});
            if (first || val < best) {
              best = val;
              bu = u;
              bv = v;
              bt = t;
            }
            first = false;
          }
        }
      }
      c.expect(bv.y2 * bu.y1 - bv.y1 * bu.y2 == 1, "inner minimizer determinant != 1");
      c.expect(chain.count({bu.y1, bu.y2}) > 0, "inner minimizer off the chain");
    }
  }
  // Parity-sourced pipelines have value 0 or 1.
  for (int i = 0; i < 5; ++i) {
    Cnf3 f = random_cnf(rng, 2, static_cast<int>(rng.pick(1, 3)));
    auto [raw, dec] = reduce_3sat_to_apcover(f, true);
    auto [norm, shift] = normalize(raw);
    Encoding enc = build_encoding(norm);
    Int value = semantic_bilevel_value(enc);
    c.expect(value == 0 || value == 1, "parity-sourced bilevel value not in {0,1}");
    c.expect((value > 0) == decide_apcover(norm), "parity value vs decision");
  }
  return {"optimize", c.pass, c.checks, c.detail};
}

PropResult suite_kpt(unsigned long long seed) {
  Rng rng(seed);
  Checker c;
  for (int s = 1; s <= 4; ++s) {
    FibonacciFamily fam = fibonacci_family(s);
    auto infeasible = infeasible_set(fam);
    auto chain = chain_points(convergents(fam.cfrac), 2);
    std::sort(chain.begin(), chain.end());
    auto sorted = infeasible;
    std::sort(sorted.begin(), sorted.end());
    c.expect(sorted == chain, "infeasible set != chain points");
    c.expect(midpoint_free(infeasible), "infeasible set has a midpoint");
    c.expect(static_cast<int>(infeasible.size()) == s + 1, "set size != s + 1");
  }
  // Flattening: feasibility corresponds across the mixed-radix bijection.
  for (int i = 0; i < 50; ++i) {
    PipInstance inst;
    const int n = static_cast<int>(rng.pick(1, 2));
    const int k = static_cast<int>(rng.pick(1, 2));
    const int m = static_cast<int>(rng.pick(1, 3));
    for (int r = 0; r < m; ++r) {
      std::vector<Int> row;
      for (int j = 0; j < n; ++j) row.push_back(rng.pick(-2, 2));
      inst.A.push_back(row);
      std::vector<Rat> frow;
      for (int j = 0; j < k; ++j) frow.emplace_back(rng.pick(-2, 2));
      inst.F.push_back(frow);
      inst.f0.emplace_back(rng.pick(-2, 3));
    }
    std::vector<Int> radii;
    for (int j = 0; j < k; ++j) radii.push_back(rng.pick(1, 3));
    inst.domain = radii;
    inst.validate();
    PipInstance flat = flatten_params(inst);
    BoundedBox xbox, fbox;
    for (int j = 0; j < n; ++j) xbox.ranges.emplace_back(Int(-4), Int(4));
    fbox = xbox;
    for (int j = 0; j < k; ++j) fbox.ranges.emplace_back(Int(0), radii[j] - 1);
    // Every parameter tuple against its flattened index.
    std::vector<Int> params(k, 0);
    while (true) {
      Int flat_param = 0, w = 1;
      for (int j = 0; j < k; ++j) {
        flat_param += params[j] * w;
        w *= radii[j];
      }
      c.expect(inst.feasible_at(params, xbox) == flat.feasible_at({flat_param}, fbox),
               "flattened feasibility differs");
      int j = 0;
      for (; j < k; ++j) {
        if (params[j] < radii[j] - 1) {
          ++params[j];
          for (int l = 0; l < j; ++l) params[l] = 0;
          break;
        }
      }
      if (j == k) break;
    }
  }
  // Interval split: digits are forced and feasibility is preserved.
  for (int i = 0; i < 50; ++i) {
    PipInstance inst;
    const int n = 1;
    const int m = static_cast<int>(rng.pick(1, 2));
    for (int r = 0; r < m; ++r) {
      inst.A.push_back({rng.pick(-2, 2)});
      inst.F.push_back({Rat(rng.pick(-2, 2))});
      inst.f0.emplace_back(rng.pick(-1, 3));
    }
    Int nr = rng.pick(2, 4), mr = rng.pick(2, 4);
    inst.domain = std::vector<Int>{nr};
    inst.validate();
    PipInstance split = add_interval_split(inst, nr, mr);
    BoundedBox xbox, sbox;
    for (int j = 0; j < n; ++j) xbox.ranges.emplace_back(Int(-4), Int(4));
    sbox = xbox;
    sbox.ranges.emplace_back(Int(0), mr - 1);
    sbox.ranges.emplace_back(Int(0), nr - 1);
    for (Int yp = 0; yp < mr * nr; ++yp) {
      Int y2 = mod_euclid(yp, nr);
      c.expect(split.feasible_at({yp}, sbox) == inst.feasible_at({y2}, xbox),
               "split feasibility differs");
    }
  }
  return {"kpt", c.pass, c.checks, c.detail};
}

using SuiteFn = PropResult (*)(unsigned long long);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"exactmath", suite_exactmath}, {"contfrac", suite_contfrac},
      {"apcover", suite_apcover},     {"satred", suite_satred},
      {"encode", suite_encode},       {"presburger", suite_presburger},
      {"geometry", suite_geometry},   {"gip", suite_gip},
      {"optimize", suite_optimize},   {"kpt", suite_kpt},
  };
  return table;
}

}  // namespace

std::string PipelineReport::text() const {
  std::ostringstream os;
  for (const auto& st : stages) {
    os << (st.agree ? "PASS" : "FAIL") << " " << st.name << " " << st.value << "\n";
  }
  os << (all_pass ? "PASS" : "FAIL") << " pipeline\n";
  return os.str();
}

PipelineReport verify_pipeline(const Cnf3& f, const std::vector<std::string>& stages,
                               bool parity_trick) {
  f.validate();
  std::set<std::string> want(stages.begin(), stages.end());
  for (const auto& s : want) {
    if (std::find(kAllPipelineStages.begin(), kAllPipelineStages.end(), s) ==
        kAllPipelineStages.end()) {
      throw std::invalid_argument("verify_pipeline: unknown stage '" + s + "'");
    }
  }
  if (f.num_vars > 4) {
    throw ScaleError("verify_pipeline: full verification needs at most 4 variables");
  }
  PipelineReport rep;
  const Int n_sat = count_sat(f);
  if (want.count("sat")) rep.stages.push_back({"sat", n_sat.str(), true});

  auto [raw, dec] = reduce_3sat_to_apcover(f, parity_trick);
  const Int n_ap = count_apcover(raw);
  if (want.count("apcover")) {
    rep.stages.push_back({"apcover", n_ap.str(), n_ap == n_sat});
  }

  auto [norm, shift] = normalize(raw);
  const Encoding enc = build_encoding(norm);
  if (want.count("sentence")) {
    bool ok = check_conditions(enc).all();
    const Int n_sent = count_certified(build_sentence3(enc));
    rep.stages.push_back({"sentence", n_sent.str(), ok && n_sent == n_sat});
  }
  if (want.count("gip1")) {
    GIPInstance g = build_system1(enc);
    GipScanHints h = hints_from_encoding(enc, 4);
    const Int n = count_gip(g, g.x_box, &h);
    rep.stages.push_back({"gip1", n.str(), n == n_sat});
  }
  if (want.count("gip2")) {
    GIPInstance g = build_system2(enc);
    GipScanHints h = hints_from_encoding(enc, 1);
    const Int n = count_gip(g, g.x_box, &h);
    rep.stages.push_back({"gip2", n.str(), n == n_sat});
  }
  Int bilevel_value;
  bool have_bilevel = false;
  if (want.count("bilevel") || want.count("pareto")) {
    BilevelInstance bl = build_bilevel(enc);
    bilevel_value = solve_bilevel_brute(bl);
    have_bilevel = true;
    if (want.count("bilevel")) {
      bool ok = (bilevel_value > 0) == (n_sat > 0) &&
                bilevel_value == semantic_bilevel_value(enc);
      rep.stages.push_back({"bilevel", bilevel_value.str(), ok});
    }
  }
  if (want.count("pareto")) {
    ParetoSolution sol = solve_pareto_brute(build_pareto(enc, parity_trick));
    bool ok = have_bilevel && sol.min_g == -Rat(bilevel_value);
    rep.stages.push_back(
        {"pareto", rat_num(sol.min_g).str() + "/" + rat_den(sol.min_g).str(), ok});
  }
  for (const auto& st : rep.stages) rep.all_pass = rep.all_pass && st.agree;
  return rep;
}

std::vector<std::string> prop_suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suite_table()) names.push_back(name);
  return names;
}

PropResult run_prop_suite(const std::string& name, unsigned long long seed) {
  for (const auto& [n, fn] : suite_table()) {
    if (n == name) return fn(seed);
  }
  throw std::invalid_argument("unknown property suite '" + name + "'");
}

std::vector<PropResult> run_all_prop_suites(unsigned long long seed) {
  std::vector<PropResult> out;
  for (const auto& [name, fn] : suite_table()) out.push_back(fn(seed));
  return out;
}

}  // namespace presred
