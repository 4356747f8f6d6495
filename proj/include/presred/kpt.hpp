#ifndef PRESRED_KPT_HPP
#define PRESRED_KPT_HPP

#include "presred/geometry.hpp"

#include <string>
#include <variant>
#include <vector>

namespace presred {

// Parametric integer program: A x <= f(params), params ranging over a box
// [0, r_1) x ... x [0, r_k) or a polytope.
struct PipInstance {
  std::vector<std::vector<Int>> A;      // m x n
  std::vector<std::vector<Rat>> F;      // m x k, f(y) = F y + f0
  std::vector<Rat> f0;
  std::variant<std::vector<Int>, HPolytope> domain;  // box radii r_i, or polytope

  std::size_t num_rows() const { return A.size(); }
  std::size_t num_vars() const { return A.empty() ? 0 : A[0].size(); }
  std::size_t num_params() const { return F.empty() ? 0 : F[0].size(); }
  void validate() const;

  // Exhaustive feasibility of A x <= f(params) over the x scan box.
  bool feasible_at(const std::vector<Int>& params, const BoundedBox& x_box) const;
};

struct FibonacciFamily {
  ContinuedFraction cfrac;  // [2; 1, ..., 1], 2s+1 terms
  Int p;                    // F_{2s+3}
  Int q;                    // F_{2s+1}
  HPolytope Q;              // parameter triangle
  PipInstance pip;          // the 4-row system in x = (x1, x2), parameters y
};

FibonacciFamily fibonacci_family(int s);

// Parameters y in Q whose system has no integer solution; equals the chain
// points C_1, ..., C_{s+1} for the family.
std::vector<LatticePoint2> infeasible_set(const FibonacciFamily& fam);

// True iff no point of the list is the coordinatewise midpoint of two others.
bool midpoint_free(const std::vector<LatticePoint2>& points);

// Flattens a k-dimensional box-parameter instance into a one-parameter
// instance with k extra variables carrying the mixed-radix digits.
PipInstance flatten_params(const PipInstance& inst);

// y' in [0, M*N) splits uniquely as N y1 + y2 with 0 <= y1 < M, 0 <= y2 < N;
// adds the two digit variables to a one-parameter instance on [0, N).
PipInstance add_interval_split(const PipInstance& inst, const Int& n, const Int& m);

std::string to_text(const PipInstance& inst);
PipInstance parse_pip(const std::string& text);

}  // namespace presred

#endif
