#include "presred/kpt.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace presred;

TEST_CASE("fibonacci_family parameters") {
  const long long fib[] = {0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987};
  for (int s = 1; s <= 6; ++s) {
    FibonacciFamily fam = fibonacci_family(s);
    CHECK(fam.p == fib[2 * s + 3]);
    CHECK(fam.q == fib[2 * s + 1]);
    CHECK(fam.cfrac.a_terms.size() + fam.cfrac.b_terms.size() ==
          static_cast<std::size_t>(2 * s + 1));
  }
  CHECK(fibonacci_family(1).p == 5);
  CHECK(fibonacci_family(1).q == 2);
  CHECK(fibonacci_family(2).p == 13);
  CHECK(fibonacci_family(2).q == 5);
  CHECK_THROWS_AS(fibonacci_family(0), std::invalid_argument);
  CHECK_THROWS_AS(fibonacci_family(9), std::invalid_argument);
}

TEST_CASE("infeasible parameters are exactly the chain points") {
  {
    auto pts = infeasible_set(fibonacci_family(1));
    std::sort(pts.begin(), pts.end());
    CHECK(pts == std::vector<LatticePoint2>{{1, 2}, {2, 5}});
  }
  {
    auto pts = infeasible_set(fibonacci_family(2));
    std::sort(pts.begin(), pts.end());
    CHECK(pts == std::vector<LatticePoint2>{{1, 2}, {2, 5}, {5, 13}});
  }
  {
    auto pts = infeasible_set(fibonacci_family(3));
    CHECK(pts.size() == 4);
    auto chain = chain_points(convergents(fibonacci_family(3).cfrac), 2);
    std::sort(pts.begin(), pts.end());
    std::sort(chain.begin(), chain.end());
    CHECK(pts == chain);
  }
}

TEST_CASE("infeasible set matches the generic feasibility oracle") {
  FibonacciFamily fam = fibonacci_family(2);
  BoundedBox xbox;
  xbox.ranges.emplace_back(Int(-1), 2 * fam.q + 1);
  xbox.ranges.emplace_back(Int(0), fam.p);
  auto infeasible = infeasible_set(fam);
  std::set<std::pair<Int, Int>> bad;
  for (const auto& y : infeasible) bad.emplace(y.y1, y.y2);
  for (const auto& y : lattice_points_2d(fam.Q)) {
    CHECK(fam.pip.feasible_at({y.y1, y.y2}, xbox) == (bad.count({y.y1, y.y2}) == 0));
  }
}

TEST_CASE("midpoint_free") {
  CHECK(midpoint_free({{1, 2}, {2, 5}, {5, 13}}));
  CHECK_FALSE(midpoint_free({{0, 0}, {1, 1}, {2, 2}}));
  CHECK(midpoint_free({{3, 4}}));
}

TEST_CASE("flatten_params mixed-radix bookkeeping") {
  // parameter (2, 1) with radii (3, 4) flattens to 2 + 1*3 = 5
  PipInstance inst;
  inst.A = {{Int(1)}};
  inst.F = {{Rat(1), Rat(1)}};
  inst.f0 = {Rat(0)};
  inst.domain = std::vector<Int>{3, 4};
  PipInstance flat = flatten_params(inst);
  CHECK(std::get<std::vector<Int>>(flat.domain) == std::vector<Int>{12});
  BoundedBox xbox;
  xbox.ranges.emplace_back(Int(-5), Int(5));
  BoundedBox fbox = xbox;
  fbox.ranges.emplace_back(Int(0), Int(2));
  fbox.ranges.emplace_back(Int(0), Int(3));
  CHECK(inst.feasible_at({2, 1}, xbox) == flat.feasible_at({5}, fbox));
}

TEST_CASE("flatten_params is the identity transform for k = 1") {
  PipInstance inst;
  inst.A = {{Int(2)}};
  inst.F = {{Rat(1)}};
  inst.f0 = {Rat(1)};
  inst.domain = std::vector<Int>{4};
  PipInstance flat = flatten_params(inst);
  BoundedBox xbox;
  xbox.ranges.emplace_back(Int(-4), Int(4));
  BoundedBox fbox = xbox;
  fbox.ranges.emplace_back(Int(0), Int(3));
  for (Int y = 0; y < 4; ++y) {
    CHECK(inst.feasible_at({y}, xbox) == flat.feasible_at({y}, fbox));
  }
}

TEST_CASE("add_interval_split forces the digits") {
  // N = 5, M = 3, y' = 7 forces (y1, y2) = (1, 2).
  PipInstance inst;
  inst.A = {{Int(1)}};
  inst.F = {{Rat(1)}};
  inst.f0 = {Rat(0)};
  inst.domain = std::vector<Int>{5};
  PipInstance split = add_interval_split(inst, 5, 3);
  CHECK(std::get<std::vector<Int>>(split.domain) == std::vector<Int>{15});
  // Count the digit assignments satisfying the split rows at y' = 7.
  int solutions = 0;
  Int seen_y1 = -1, seen_y2 = -1;
  for (Int y1 = 0; y1 < 3; ++y1) {
    for (Int y2 = 0; y2 < 5; ++y2) {
      if (5 * y1 + y2 != 7) continue;
      ++solutions;
      seen_y1 = y1;
      seen_y2 = y2;
    }
  }
  CHECK(solutions == 1);
  CHECK(seen_y1 == 1);
  CHECK(seen_y2 == 2);
  BoundedBox xbox;
  xbox.ranges.emplace_back(Int(-6), Int(6));
  BoundedBox sbox = xbox;
  sbox.ranges.emplace_back(Int(0), Int(2));
  sbox.ranges.emplace_back(Int(0), Int(4));
  for (Int yp = 0; yp < 15; ++yp) {
    CHECK(split.feasible_at({yp}, sbox) == inst.feasible_at({mod_euclid(yp, 5)}, xbox));
  }
  CHECK(split.feasible_at({0}, sbox) == inst.feasible_at({0}, xbox));
}
