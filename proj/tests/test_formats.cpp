#include "presred/geometry.hpp"
#include "presred/kpt.hpp"
#include "presred/optimize.hpp"
#include "presred/presburger.hpp"
#include "presred/satred.hpp"

#include <doctest.h>

using namespace presred;

namespace {

APCoverInstance reference_instance() { return {1, 5, {{2, 1, 3}}}; }

}  // namespace

TEST_CASE("apcover text round trip is byte-exact") {
  const std::string text = to_text(reference_instance());
  CHECK(text == "APCOVER\nJ 1 5\nAP 2 1 3\n");
  APCoverInstance back = parse_apcover(text);
  CHECK(back == reference_instance());
  CHECK(to_text(back) == text);
  CHECK_THROWS_AS(parse_apcover("APCOVER\nAP 2 1 3\n"), ParseError);
  CHECK_THROWS_AS(parse_apcover("APCOVER\nJ 1 5\nBAD 1\n"), ParseError);
}

TEST_CASE("mapcover text round trip") {
  QbfInstance f;
  f.matrix = {2, {{2, 1, 1}, {-2, -1, -1}}};
  f.blocks = {{Quantifier::ForAll, {1}}, {Quantifier::Exists, {2}}};
  MAPCoverInstance m = reduce_qbf_to_mapcover(f);
  const std::string text = to_text(m);
  MAPCoverInstance back = parse_mapcover(text);
  CHECK(to_text(back) == text);
  CHECK(decide_mapcover(back) == decide_mapcover(m));
}

TEST_CASE("sentence text round trip keeps the certified metadata") {
  ShortSentence s = build_sentence3(build_encoding(reference_instance()));
  const std::string text = to_text(s);
  ShortSentence back = parse_sentence(text);
  CHECK(to_text(back) == text);
  CHECK(back.num_vars == 5);
  CHECK(back.matrix == s.matrix);
  REQUIRE(back.enc3 != nullptr);
  CHECK(count_certified(back) == 3);
}

TEST_CASE("merged sentence round trip") {
  MAPCoverInstance m;
  m.intervals = {{1, 3}, {1, 4}};
  m.groups = {{{2, 1, 3}}, {{3, 1, 4}}};
  m.taus = {1, 1};
  m.quantifiers = {Quantifier::ForAll, Quantifier::Exists};
  ShortSentence s = build_sentence_m(m);
  const std::string text = to_text(s);
  ShortSentence back = parse_sentence(text);
  CHECK(to_text(back) == text);
  REQUIRE(back.encm != nullptr);
  CHECK(decide_certified(back) == decide_certified(s));
}

TEST_CASE("polytope and gip text round trips") {
  Encoding enc = build_encoding(reference_instance());
  HPolytope q = encoding_triangle(enc);
  const std::string qt = to_text(q);
  CHECK(qt.substr(0, 4) == "H 2 ");

  VPolytope v = vertices_of(q);
  const std::string vt = to_text(v);
  CHECK(vt.substr(0, 4) == "V 2 ");

  GIPInstance g = build_system1(enc);
  const std::string text = to_text(g);
  GIPInstance back = parse_gip(text);
  CHECK(to_text(back) == text);
  CHECK(back.rows() == g.rows());
  CHECK(back.n_x == 6);
}

TEST_CASE("bilevel and pareto text round trips") {
  Encoding enc = build_encoding(reference_instance());
  BilevelInstance bl = build_bilevel(enc);
  const std::string text = to_text(bl);
  BilevelInstance back = parse_bilevel(text);
  CHECK(to_text(back) == text);
  CHECK(back.K == bl.K);
  CHECK(back.W.rows.size() == bl.W.rows.size());

  ParetoInstance pa = build_pareto(enc, true);
  const std::string pt = to_text(pa);
  ParetoInstance pback = parse_pareto(pt);
  CHECK(to_text(pback) == pt);
  CHECK(pback.parity_source);
}

TEST_CASE("pip text round trip") {
  FibonacciFamily fam = fibonacci_family(2);
  const std::string text = to_text(fam.pip);
  PipInstance back = parse_pip(text);
  CHECK(to_text(back) == text);

  PipInstance boxed;
  boxed.A = {{Int(1), Int(-2)}};
  boxed.F = {{Rat(1, 2)}};
  boxed.f0 = {Rat(-3)};
  boxed.domain = std::vector<Int>{6};
  const std::string bt = to_text(boxed);
  CHECK(to_text(parse_pip(bt)) == bt);
}

TEST_CASE("deterministic serialization") {
  // Two independent builds serialize to identical bytes.
  ShortSentence a = build_sentence3(build_encoding(reference_instance()));
  ShortSentence b = build_sentence3(build_encoding(reference_instance()));
  CHECK(to_text(a) == to_text(b));
  Encoding enc = build_encoding(reference_instance());
  CHECK(to_text(build_system2(enc)) == to_text(build_system2(enc)));
}
