#ifndef PRESRED_OPTIMIZE_HPP
#define PRESRED_OPTIMIZE_HPP

#include "presred/geometry.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace presred {

// Exact quadratic form x^T Q x + L.x + c with rational coefficients.
struct QuadForm {
  std::vector<std::vector<Rat>> quad;  // symmetric
  std::vector<Rat> lin;
  Rat constant;

  Rat eval(const std::vector<Int>& x) const;
};

// max over z in J of min over w in W of h(z, w), with w = (u1, u2, v1, v2, t),
// W = Q x P x [0, T] and h = K(v2 u1 - v1 u2 - 1) + (u2 - z - t M)^2.
// P carries v2 >= 1 in addition to the triangle rows: the inner product
// argument needs v2 u1 - v1 u2 >= 1 over all of W, which fails at v = 0.
struct BilevelInstance {
  Int mu, nu;   // J
  HPolytope W;  // R^5, rows over (u1, u2, v1, v2, t)
  QuadForm h;   // over (z, u1, u2, v1, v2, t)
  Int K;
  Int T;
  Int M;
  std::optional<Encoding> enc;  // present on built instances

  void validate() const;
};

struct ParetoInstance {
  HPolytope domain;  // J x W in R^6, coordinates (z, u1, u2, v1, v2, t)
  std::vector<Rat> f1, f2;  // linear outcome maps over R^6
  QuadForm f3;
  std::vector<Rat> g;  // linear objective over outcome space R^3
  bool parity_source = false;
  std::optional<Encoding> enc;
};

// Lemma hypothesis: u2/u1 < alpha < v2/v1 and v2 u1 - v1 u2 = 1 (alpha > 1).
// Returns whether the hypothesis holds; when it does, both points are checked
// to lie on the chains of alpha and a violation throws.
bool is_weak_convergent_pair(const LatticePoint2& u, const LatticePoint2& v, const Rat& alpha);

BilevelInstance build_bilevel(const Encoding& enc);


// Exact max-min by nested scans over Q, P and [0, T].
Int solve_bilevel_brute(const BilevelInstance& inst);

// Independent route: max over z of the min over C' chain values u2 of the
// squared gap (u2 - z - tM)^2 with t clamped to [0, T].
Int semantic_bilevel_value(const Encoding& enc);

ParetoInstance build_pareto(const Encoding& enc, bool parity_trick);

struct ParetoSolution {
  Rat min_g;
  std::vector<std::array<Int, 3>> pareto_set;  // outcome vectors, sorted by z
};

ParetoSolution solve_pareto_brute(const ParetoInstance& inst);

std::string to_text(const BilevelInstance& inst);
BilevelInstance parse_bilevel(const std::string& text);
std::string to_text(const ParetoInstance& inst);
ParetoInstance parse_pareto(const std::string& text);

}  // namespace presred

#endif
