#include "presred/contfrac.hpp"

#include <doctest.h>

using namespace presred;

namespace {

ContinuedFraction cf_2_1_1() {
  return {{2, 1}, {1}};  // [2; 1, 1]
}

ContinuedFraction alpha_s(int s) {
  ContinuedFraction cf;
  cf.a_terms.assign(s + 1, Int(1));
  cf.a_terms[0] = 2;
  cf.b_terms.assign(s, Int(1));
  return cf;
}

}  // namespace

TEST_CASE("convergents of [2;1,1]") {
  ConvergentChains ch = convergents(cf_2_1_1());
  CHECK(ch.C == std::vector<LatticePoint2>{{1, 0}, {1, 2}, {2, 5}});
  CHECK(ch.D == std::vector<LatticePoint2>{{0, 1}, {1, 3}});
}

TEST_CASE("convergents of a single-term fraction") {
  ConvergentChains ch = convergents({{1}, {}});
  CHECK(ch.C == std::vector<LatticePoint2>{{1, 0}, {1, 1}});
  CHECK(ch.D == std::vector<LatticePoint2>{{0, 1}});
}

TEST_CASE("Fibonacci convergents C_i = (F_{2i-1}, F_{2i+1})") {
  // F: 1 1 2 3 5 8 13 21 34 ...
  const long long fib[] = {0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233};
  for (int s = 1; s <= 5; ++s) {
    ConvergentChains ch = convergents(alpha_s(s));
    REQUIRE(ch.C.size() == static_cast<std::size_t>(s) + 2);
    for (int i = 1; i <= s + 1; ++i) {
      CHECK(ch.C[i].y1 == fib[2 * i - 1]);
      CHECK(ch.C[i].y2 == fib[2 * i + 1]);
    }
  }
}

TEST_CASE("eval_cfrac") {
  CHECK(eval_cfrac(cf_2_1_1()) == Rat(5, 2));
  CHECK(eval_cfrac({{3}, {}}) == Rat(3));
  CHECK(eval_cfrac(alpha_s(2)) == Rat(13, 5));  // F_7 / F_5
}

TEST_CASE("to_odd_cfrac") {
  ContinuedFraction cf = to_odd_cfrac(Rat(5, 2));
  CHECK(cf.a_terms == std::vector<Int>{2, 1});
  CHECK(cf.b_terms == std::vector<Int>{1});

  cf = to_odd_cfrac(Rat(3));
  CHECK(cf.a_terms == std::vector<Int>{3});
  CHECK(cf.b_terms.empty());

  // 7/3 = [2; 3] has even length; the parity fix gives [2; 2, 1].
  cf = to_odd_cfrac(Rat(7, 3));
  CHECK(cf.a_terms == std::vector<Int>{2, 1});
  CHECK(cf.b_terms == std::vector<Int>{2});
  CHECK(eval_cfrac(cf) == Rat(7, 3));

  CHECK_THROWS_AS(to_odd_cfrac(Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(to_odd_cfrac(Rat(1, 2)), std::invalid_argument);
}

TEST_CASE("chain_points") {
  ConvergentChains ch = convergents(cf_2_1_1());
  CHECK(chain_points(ch, 2) == std::vector<LatticePoint2>{{1, 2}, {2, 5}});
  CHECK(chain_points(ch, 0) ==
        std::vector<LatticePoint2>{{1, 0}, {1, 1}, {1, 2}, {2, 5}});
  // Middle segments of the Fibonacci chain have no interior points.
  ConvergentChains ch2 = convergents(alpha_s(2));
  CHECK(chain_points(ch2, 2) == std::vector<LatticePoint2>{{1, 2}, {2, 5}, {5, 13}});
}

TEST_CASE("check_chain_properties passes on honest chains") {
  for (const auto& cf : {cf_2_1_1(), alpha_s(2), ContinuedFraction{{3, 2, 4}, {1, 2}}}) {
    ChainPropertyReport rep = check_chain_properties(convergents(cf), cf);
    CHECK(rep.all());
  }
}

TEST_CASE("check_chain_properties catches a corrupted chain") {
  ContinuedFraction cf = cf_2_1_1();
  ConvergentChains ch = convergents(cf);
  ch.C[1] = ch.C[1] + LatticePoint2{0, 1};
  ChainPropertyReport rep = check_chain_properties(ch, cf);
  CHECK_FALSE(rep.g6_upper_envelope);
  CHECK_FALSE(rep.all());
}

TEST_CASE("validation rejects malformed fractions") {
  CHECK_THROWS_AS(convergents({{2, 1}, {1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(convergents({{2, 0}, {1}}), std::invalid_argument);
}
