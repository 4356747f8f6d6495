#include "presred/satred.hpp"

#include <doctest.h>

using namespace presred;

TEST_CASE("count_sat") {
  Cnf3 one{1, {{1, 1, 1}}};
  CHECK(count_sat(one) == 1);

  Cnf3 two{2, {{1, 2, 2}, {-1, 2, 2}}};
  CHECK(count_sat(two) == 2);  // u2 must be true

  Cnf3 empty{3, {}};
  CHECK(count_sat(empty) == 8);
}

TEST_CASE("reduce_3sat_to_apcover on one variable") {
  Cnf3 f{1, {{1, 1, 1}}};
  auto [inst, dec] = reduce_3sat_to_apcover(f);
  CHECK(inst.mu == 0);
  CHECK(inst.nu == 1);
  REQUIRE(inst.triples.size() == 1);
  CHECK(ap_member(0, inst.triples[0]));       // the falsifying point
  CHECK_FALSE(ap_member(1, inst.triples[0]));
  CHECK(count_apcover(inst) == 1);
  CHECK(dec.decode(1) == std::vector<bool>{true});
  CHECK(dec.encode({true}) == 1);
}

TEST_CASE("reduction is parsimonious on the two-variable example") {
  Cnf3 f{2, {{1, 2, 2}, {-1, 2, 2}}};
  auto [inst, dec] = reduce_3sat_to_apcover(f);
  CHECK(count_apcover(inst) == count_sat(f));
}

TEST_CASE("unsatisfiable pair leaves nothing uncovered") {
  Cnf3 f{1, {{1, 1, 1}, {-1, -1, -1}}};
  auto [inst, dec] = reduce_3sat_to_apcover(f);
  CHECK(count_apcover(inst) == 0);
}

TEST_CASE("tautological clauses add no progression") {
  Cnf3 f{2, {{1, -1, 2}}};
  auto [inst, dec] = reduce_3sat_to_apcover(f);
  // Only the residue-2 exclusion mod 3 remains; the clause is a tautology.
  CHECK(inst.triples.size() == 1);
  CHECK(count_apcover(inst) == count_sat(f));
}

TEST_CASE("parity trick covers the evens") {
  Cnf3 f{2, {{1, 2, 2}}};
  auto [inst, dec] = reduce_3sat_to_apcover(f, true);
  CHECK(dec.primes == std::vector<Int>{3, 5});
  CHECK(inst.nu == 2 * 15 - 1);
  for (Int z = inst.mu; z <= inst.nu; z += 2) {
    bool covered = false;
    for (const auto& t : inst.triples) {
      if (ap_member(z, t)) { covered = true; break; }
    }
    CHECK(covered);
  }
  CHECK(count_apcover(inst) == count_sat(f));
}

TEST_CASE("qbf truth by brute force") {
  // forall v exists u: (u or v) and (!u or !v)  -- u = !v works.
  QbfInstance f;
  f.matrix = {2, {{2, 1, 1}, {-2, -1, -1}}};
  f.blocks = {{Quantifier::ForAll, {1}}, {Quantifier::Exists, {2}}};
  CHECK(qbf_truth(f));

  QbfInstance g;
  g.matrix = {2, {{2, 2, 2}, {-2, -2, -2}}};
  g.blocks = {{Quantifier::ForAll, {1}}, {Quantifier::Exists, {2}}};
  CHECK_FALSE(qbf_truth(g));
}

TEST_CASE("reduce_qbf_to_mapcover matches qbf truth") {
  QbfInstance f;
  f.matrix = {2, {{2, 1, 1}, {-2, -1, -1}}};
  f.blocks = {{Quantifier::ForAll, {1}}, {Quantifier::Exists, {2}}};
  MAPCoverInstance m = reduce_qbf_to_mapcover(f);
  CHECK(m.m() == 2);
  CHECK(decide_mapcover(m) == qbf_truth(f));

  QbfInstance g;
  g.matrix = {2, {{2, 2, 2}, {-2, -2, -2}}};
  g.blocks = {{Quantifier::ForAll, {1}}, {Quantifier::Exists, {2}}};
  CHECK(decide_mapcover(reduce_qbf_to_mapcover(g)) == qbf_truth(g));
}

TEST_CASE("dimacs parsing") {
  Cnf3 f = parse_dimacs("c comment\np cnf 3 2\n1 -2 3 0\n-1 2 2 0\n");
  CHECK(f.num_vars == 3);
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[0] == std::array<int, 3>{1, -2, 3});
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("1 2 3 0\n"), ParseError);

  QbfInstance q = parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 2 2 0\n");
  CHECK(q.blocks.size() == 2);
  CHECK(q.blocks[0].first == Quantifier::ForAll);
  CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\na 1 0\na 2 0\n1 2 2 0\n"), std::invalid_argument);
}
