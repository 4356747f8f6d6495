#include "presred/geometry.hpp"

#include <doctest.h>

#include <set>

using namespace presred;

namespace {

Encoding reference_encoding() { return build_encoding({1, 5, {{2, 1, 3}}}); }

VPolytope unit_square() {
  VPolytope v;
  v.dim = 2;
  v.vertices = {{Rat(0), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}};
  return v;
}

}  // namespace

TEST_CASE("mcmullen_f") {
  CHECK(mcmullen_f(3, 8) == 12);
  CHECK(mcmullen_f(6, 40) == 8400);
  for (int d = 2; d <= 6; ++d) CHECK(mcmullen_f(d, Int(d) + 1) == d + 1);
  CHECK_THROWS_AS(mcmullen_f(3, 3), std::invalid_argument);
}

TEST_CASE("vertices_of a unit square") {
  HPolytope h;
  h.dim = 2;
  h.rows = {{{Int(1), Int(0)}, Int(1)},
            {{Int(-1), Int(0)}, Int(0)},
            {{Int(0), Int(1)}, Int(1)},
            {{Int(0), Int(-1)}, Int(0)}};
  VPolytope v = vertices_of(h);
  CHECK(v.vertices.size() == 4);
}

TEST_CASE("vertices_of detects unboundedness") {
  HPolytope h;
  h.dim = 2;
  h.rows = {{{Int(-1), Int(0)}, Int(0)}, {{Int(0), Int(-1)}, Int(0)},
            {{Int(-1), Int(-1)}, Int(-1)}};
  CHECK_THROWS_WITH_AS(vertices_of(h), doctest::Contains("ray"), std::invalid_argument);
}

TEST_CASE("vertices_of the reference triangle") {
  VPolytope v = vertices_of(encoding_triangle(reference_encoding()));
  REQUIRE(v.vertices.size() == 3);
  std::set<std::vector<Rat>> got(v.vertices.begin(), v.vertices.end());
  std::set<std::vector<Rat>> want = {{Rat(4, 5), Rat(2)}, {Rat(2), Rat(2)}, {Rat(2), Rat(5)}};
  CHECK(got == want);
}

TEST_CASE("facets_of a square and a simplex") {
  CHECK(facets_of(unit_square()).rows.size() == 4);

  VPolytope simplex;
  simplex.dim = 3;
  simplex.vertices = {{Rat(0), Rat(0), Rat(0)},
                      {Rat(1), Rat(0), Rat(0)},
                      {Rat(0), Rat(1), Rat(0)},
                      {Rat(0), Rat(0), Rat(1)}};
  CHECK(facets_of(simplex).rows.size() == 4);
}

TEST_CASE("facets_of rejects degenerate hulls") {
  VPolytope flat;
  flat.dim = 2;
  flat.vertices = {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(2)}};
  CHECK_THROWS_WITH_AS(facets_of(flat), doctest::Contains("affine dimension"),
                       std::invalid_argument);
}

TEST_CASE("round trip through both representations") {
  HPolytope h = facets_of(unit_square());
  VPolytope v = vertices_of(h);
  CHECK(v.vertices.size() == 4);
  CHECK(facets_of(v).rows.size() == 4);
}

TEST_CASE("lift_union of two segments") {
  VPolytope a{1, {{Rat(0)}, {Rat(1)}}};
  VPolytope b{1, {{Rat(2)}, {Rat(3)}}};
  VPolytope lifted = lift_union(a, b);
  CHECK(lifted.dim == 2);
  CHECK(lifted.vertices.size() == 4);
  HPolytope h = facets_of(lifted);
  std::set<Int> projected;
  for (Int x = -2; x <= 6; ++x) {
    for (Int t = 0; t <= 1; ++t) {
      if (h.contains_int({x, t})) projected.insert(x);
    }
  }
  CHECK(projected == std::set<Int>{0, 1, 2, 3});
}

TEST_CASE("lift_union of identical pieces is a prism") {
  VPolytope a = unit_square();
  VPolytope lifted = lift_union(a, a);
  CHECK(lifted.vertices.size() == 8);
  HPolytope h = facets_of(lifted);
  for (Int x = -1; x <= 2; ++x) {
    for (Int y = -1; y <= 2; ++y) {
      bool in_square = x >= 0 && x <= 1 && y >= 0 && y <= 1;
      CHECK(h.contains_int({x, y, Int(0)}) == in_square);
      CHECK(h.contains_int({x, y, Int(1)}) == in_square);
    }
  }
}

TEST_CASE("parallelogram_lattice_free on the reference chain") {
  // alpha = 5/2
  CHECK(parallelogram_lattice_free({1, 2}, 5, 2));
  CHECK_FALSE(parallelogram_lattice_free({2, 4}, 5, 2));
  CHECK(parallelogram_lattice_free({2, 5}, 5, 2));
}

TEST_CASE("build_system1 on the reference instance") {
  Encoding enc = reference_encoding();
  GIPInstance g = build_system1(enc);
  CHECK(g.rows() == 24);
  CHECK(g.n_x == 6);
  CHECK(g.r_mu == 1);
  CHECK(g.r_nu == 5);
  CHECK(g.Q.rows.size() == 3);

  // Each lifted 3-polytope contributes 6 rows per disjunction.
  const Int N = int_pow(Int(51 + 5 + 2), 3);
  CHECK(N == 195112);
}

TEST_CASE("system2 intermediate polytopes: enumerated counts and their caps") {
  Encoding enc = reference_encoding();
  const Int N = int_pow(enc.M + enc.p + enc.q, 3);

  // The slab of width ~M never reaches the x1 = +-N faces (N = (M+p+q)^3),
  // so each cutting plane sections the cube in a quadrilateral: 8 vertices,
  // under the McMullen cap f(3,8) = 12.
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
  VPolytope v3 = vertices_of(h3);
  CHECK(v3.vertices.size() == 8);
  CHECK(Int(static_cast<long long>(v3.vertices.size())) <= mcmullen_f(3, 8));

  GIPInstance g = build_system2(enc);
  CHECK(g.n_x == 3);
  CHECK(Int(static_cast<long long>(g.rows())) <= mcmullen_f(6, 40));
}

TEST_CASE("the parallelogram polytope has the generic 8 vertices once g1 >= 3") {
  // With g1 = 2 the slice x2 in [1, g1 - 1] collapses (5 vertices); from
  // g1 = 3 on, the three corners of Q contribute 2 + 4 + 2 vertices.
  auto count_v4 = [](const Encoding& enc) {
    HPolytope h4;
    h4.dim = 4;
    h4.rows.push_back({{-enc.p, enc.q, enc.p, -enc.q}, Int(0)});
    h4.rows.push_back({{Int(0), Int(0), -enc.p, enc.q}, Int(0)});
    h4.rows.push_back({{Int(0), Int(-1), Int(0), Int(1)}, Int(-1)});
    h4.rows.push_back({{Int(0), Int(0), Int(0), Int(-1)}, Int(-1)});
    h4.rows.push_back({{Int(0), Int(-1), Int(0), Int(0)}, -enc.g1});
    h4.rows.push_back({{Int(1), Int(0), Int(0), Int(0)}, enc.q});
    h4.rows.push_back({{-enc.p, enc.q, Int(0), Int(0)}, Int(0)});
    return vertices_of(h4).vertices.size();
  };
  CHECK(count_v4(reference_encoding()) == 5);
  CHECK(count_v4(build_encoding({1, 11, {{3, 2, 4}}})) == 8);
}

TEST_CASE("system2 handles the no-progression case") {
  // k = 0: Q is the single point (1, M); the lifted hull stays full-dim.
  Encoding enc = build_encoding({1, 3, {}});
  GIPInstance g = build_system2(enc);
  CHECK(g.n_x == 3);
  CHECK(g.rows() >= 7);
}

TEST_CASE("facet enumeration is independent of the worker count") {
  Encoding enc = reference_encoding();
  const int before = max_threads();
  set_max_threads(1);
  GIPInstance one = build_system2(enc);
  set_max_threads(2);
  GIPInstance two = build_system2(enc);
  set_max_threads(before);
  CHECK(to_text(one) == to_text(two));
}

TEST_CASE("lattice_points_2d on the reference triangle") {
  auto pts = lattice_points_2d(encoding_triangle(reference_encoding()));
  std::set<std::pair<Int, Int>> got;
  for (const auto& p : pts) got.emplace(p.y1, p.y2);
  std::set<std::pair<Int, Int>> want = {{1, 2}, {2, 2}, {2, 3}, {2, 4}, {2, 5}};
  CHECK(got == want);
}
