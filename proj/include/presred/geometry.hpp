#ifndef PRESRED_GEOMETRY_HPP
#define PRESRED_GEOMETRY_HPP

#include "presred/encode.hpp"
#include "presred/presburger.hpp"

#include <string>
#include <vector>

namespace presred {

// Worker threads used by the subset enumeration in facets_of (and the GIP
// z-loop).  Results are independent of the setting.
void set_max_threads(int n);
int max_threads();

// H-representation: rows over the coordinates, integer coefficients.
struct HPolytope {
  int dim = 0;
  std::vector<LinearInequality> rows;

  bool contains(const std::vector<Rat>& x) const;
  bool contains_int(const std::vector<Int>& x) const;
};

// V-representation with a minimal vertex list.
struct VPolytope {
  int dim = 0;
  std::vector<std::vector<Rat>> vertices;
};

// McMullen bound f(d, n) = C(n - ceil(d/2), n - d) + C(n - floor(d/2) - 1, n - d):
// max facets of a d-polytope with n vertices (and dually).
Int mcmullen_f(int d, const Int& n);

// Exact vertex enumeration over row subsets of size dim.  Throws on inputs
// with a free direction (ray certificate in the message).
VPolytope vertices_of(const HPolytope& h);

// Exact irredundant facet enumeration over vertex subsets of size dim
// (requires a full-dimensional hull; throws naming the affine hull dimension
// otherwise).  Deduplicated via vertex-incidence sets; rows sorted.
HPolytope facets_of(const VPolytope& v);

// conv(P1 x {0}, P2 x {1}): integer points of the union become one extra
// existential coordinate.
VPolytope lift_union(const VPolytope& p1, const VPolytope& p2);

// True iff the half-open parallelogram {x : v.y >= v.x >= 0, y2 > x2 > 0}
// with v = (p, -q) contains no integer point.
bool parallelogram_lattice_free(const LatticePoint2& y, const Int& p, const Int& q);

// exists z in R, forall y in Q, exists x : A x + B y + C z <= b.
struct GIPInstance {
  int n_x = 0;  // 6 for system1, 3 for system2; n_y = 2, n_z = 1
  std::vector<std::vector<Int>> A;
  std::vector<std::vector<Int>> B;
  std::vector<std::vector<Int>> C;
  std::vector<Int> b;
  Int r_mu, r_nu;  // R = [r_mu, r_nu]
  HPolytope Q;     // triangle in the y-plane
  BoundedBox x_box;  // certified sound scan box for the x block

  std::size_t rows() const { return b.size(); }
  void validate() const;
};

// The distributive-law route: each of the four disjunctions is lifted through
// a 3-dimensional polytope with one fresh coordinate; 24 rows over
// (x1, x2, t1..t4).
GIPInstance build_system1(const Encoding& enc);

// The vertex-description route: two polytopes in R^5 with 24 and 16 vertices,
// lifted to 40 vertices in R^6; at most 8400 rows over (x1, x2, t).
GIPInstance build_system2(const Encoding& enc);

// The triangle Q of the encoding: y2 >= g1, y1 <= q, v.y >= 0.
HPolytope encoding_triangle(const Encoding& enc);

// All lattice points of a 2-dimensional polytope (bounding box + row filter).
std::vector<LatticePoint2> lattice_points_2d(const HPolytope& h);

std::string to_text(const HPolytope& h);
std::string to_text(const VPolytope& v);
std::string to_text(const GIPInstance& g);
GIPInstance parse_gip(const std::string& text);

}  // namespace presred

#endif
