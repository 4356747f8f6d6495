#include "presred/optimize.hpp"
#include "presred/props.hpp"
#include "presred/satred.hpp"

#include <doctest.h>

using namespace presred;

namespace {

Encoding reference_encoding() { return build_encoding({1, 5, {{2, 1, 3}}}); }

}  // namespace

TEST_CASE("weak convergent pairs for alpha = 5/2") {
  CHECK(is_weak_convergent_pair({1, 2}, {1, 3}, Rat(5, 2)));
  CHECK_FALSE(is_weak_convergent_pair({1, 1}, {1, 3}, Rat(5, 2)));  // det 2
  // Chain points off the vertex list also qualify.
  CHECK(is_weak_convergent_pair({1, 1}, {0, 1}, Rat(5, 2)));
  // Exhaustive over a small box: every hypothesis pair lands on the chains
  // (the call throws otherwise).
  for (Int u1 = 0; u1 <= 6; ++u1) {
    for (Int u2 = 0; u2 <= 6; ++u2) {
      for (Int v1 = 0; v1 <= 6; ++v1) {
        for (Int v2 = 0; v2 <= 6; ++v2) {
          CHECK_NOTHROW(is_weak_convergent_pair({u1, u2}, {v1, v2}, Rat(5, 2)));
        }
      }
    }
  }
}

TEST_CASE("build_bilevel shape") {
  BilevelInstance bl = build_bilevel(reference_encoding());
  CHECK(bl.mu == 1);
  CHECK(bl.nu == 5);
  CHECK(bl.M == 51);
  CHECK(bl.T == 1);  // ceil(5 / 51)
  CHECK(bl.K == int_pow(Int(2 * 51 + 5), 3));
  CHECK(bl.W.rows.size() <= 18);
  // h evaluates exactly: h(z=1, u=(1,2), v=(1,3), t=0) = K*(3-2-1) + (2-1)^2.
  CHECK(bl.h.eval({1, 1, 2, 1, 3, 0}) == Rat(1));
  CHECK(bl.h.eval({2, 1, 2, 1, 3, 0}) == Rat(0));
}

TEST_CASE("bilevel value on the reference instance") {
  BilevelInstance bl = build_bilevel(reference_encoding());
  CHECK(solve_bilevel_brute(bl) == 1);
  CHECK(semantic_bilevel_value(reference_encoding()) == 1);
}

TEST_CASE("bilevel value vanishes on covered instances") {
  Encoding enc = build_encoding({2, 2, {{2, 1, 3}}});
  CHECK(solve_bilevel_brute(build_bilevel(enc)) == 0);
  CHECK(semantic_bilevel_value(enc) == 0);
}

TEST_CASE("brute solver matches a fully naive scan on a micro instance") {
  Encoding enc = build_encoding({1, 3, {{2, 1, 3}}});
  BilevelInstance bl = build_bilevel(enc);
  // Naive: evaluate h over every (z, u, v, t) with the quadratic form itself.
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
  Rat best;
  bool first_z = true;
  for (Int z = bl.mu; z <= bl.nu; ++z) {
    Rat inner;
    bool first = true;
    for (const auto& u : lattice_points_2d(uq)) {
      for (const auto& v : lattice_points_2d(vp)) {
        for (Int t = 0; t <= bl.T; ++t) {
          Rat val = bl.h.eval({z, u.y1, u.y2, v.y1, v.y2, t});
          if (first || val < inner) inner = val;
          first = false;
        }
      }
    }
    if (first_z || inner > best) best = inner;
    first_z = false;
  }
  CHECK(Rat(solve_bilevel_brute(bl)) == best);
}

TEST_CASE("pareto value is the negated bilevel value") {
  Encoding enc = reference_encoding();
  ParetoInstance pa = build_pareto(enc, false);
  CHECK(pa.domain.rows.size() <= 38);
  ParetoSolution sol = solve_pareto_brute(pa);
  CHECK(sol.min_g == Rat(-1));
  CHECK(sol.pareto_set.size() == 5);  // one outcome per z
  for (const auto& y : sol.pareto_set) CHECK(y[1] == -y[0]);
}

TEST_CASE("singleton interval gives a single Pareto outcome") {
  Encoding enc = build_encoding({2, 2, {{2, 1, 3}}});
  ParetoSolution sol = solve_pareto_brute(build_pareto(enc, false));
  CHECK(sol.pareto_set.size() == 1);
  CHECK(sol.min_g == Rat(0));
}

TEST_CASE("bilevel positivity matches the decision across tiny instances") {
  for (const auto& inst : tiny_pipeline_instances(6)) {
    Encoding enc = build_encoding(inst);
    Int value = solve_bilevel_brute(build_bilevel(enc));
    CHECK((value > 0) == decide_apcover(inst));
    CHECK(value == semantic_bilevel_value(enc));
    CHECK(solve_pareto_brute(build_pareto(enc, false)).min_g == -Rat(value));
  }
}

TEST_CASE("parity-sourced values are 0 or 1") {
  Rng rng(7);
  for (int i = 0; i < 4; ++i) {
    Cnf3 f = random_cnf(rng, 2, static_cast<int>(rng.pick(1, 3)));
    auto [raw, dec] = reduce_3sat_to_apcover(f, true);
    auto [norm, shift] = normalize(raw);
    Encoding enc = build_encoding(norm);
    Int value = semantic_bilevel_value(enc);
    CHECK((value == 0 || value == 1));
    CHECK((value > 0) == decide_apcover(norm));
  }
}
