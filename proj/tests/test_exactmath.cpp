#include "presred/exactmath.hpp"

#include <doctest.h>

using namespace presred;

TEST_CASE("mod_inverse on the worked values") {
  // 2 * 26 = 52 == 1 mod 51
  CHECK(mod_inverse(2, 51) == 26);
  CHECK(mod_inverse(1, 5) == 1);
  // exhaustive scan over residues 1..7 gives 5
  {
    Int want = 0;
    for (Int x = 1; x <= 7; ++x) {
      if (mod_euclid(3 * x, 7) == 1) { want = x; break; }
    }
    CHECK(want == 5);
    CHECK(mod_inverse(3, 7) == want);
  }
}

TEST_CASE("mod_inverse rejects non-invertible inputs") {
  CHECK_THROWS_WITH_AS(mod_inverse(6, 9), doctest::Contains("not invertible"),
                       std::invalid_argument);
  CHECK_THROWS_AS(mod_inverse(2, 1), std::invalid_argument);
}

TEST_CASE("crt_solve on the worked values") {
  // scan 0..29
  {
    Int want = -1;
    for (Int e = 0; e < 30; ++e) {
      if (e % 2 == 0 && e % 3 == 1 && e % 5 == 0) { want = e; break; }
    }
    CHECK(want == 10);
    CHECK(crt_solve({{0, 2}, {1, 3}, {0, 5}}) == want);
  }
  CHECK(crt_solve({{0, 2}}) == 0);
  // scan 0..5
  {
    Int want = -1;
    for (Int e = 0; e < 6; ++e) {
      if (e % 2 == 1 && e % 3 == 2) { want = e; break; }
    }
    CHECK(want == 5);
    CHECK(crt_solve({{1, 2}, {2, 3}}) == want);
  }
  CHECK_THROWS_AS(crt_solve({{0, 4}, {1, 6}}), std::invalid_argument);
  CHECK_THROWS_AS(crt_solve({{3, 2}}), std::invalid_argument);
}

TEST_CASE("first_primes") {
  CHECK(first_primes(3) == std::vector<Int>{2, 3, 5});
  CHECK(first_primes(0).empty());
  CHECK(first_primes(5) == std::vector<Int>{2, 3, 5, 7, 11});
  // offset variant: p_2, ..., p_{l+1}
  CHECK(first_primes(3, 1) == std::vector<Int>{3, 5, 7});
}

TEST_CASE("floor division and euclidean remainder") {
  CHECK(floor_div(7, 2) == 3);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(mod_euclid(-7, 5) == 3);
  CHECK(mod_euclid(7, 5) == 2);
}

TEST_CASE("binomial") {
  CHECK(binomial(37, 34) == 7770);
  CHECK(binomial(36, 34) == 630);
  CHECK(binomial(5, 7) == 0);
}
