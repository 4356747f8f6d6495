#ifndef PRESRED_CONTFRAC_HPP
#define PRESRED_CONTFRAC_HPP

#include "presred/exactmath.hpp"

#include <compare>
#include <iosfwd>
#include <vector>

namespace presred {

// (y1, y2) = (horizontal, vertical).  A continued fraction with value p/q is
// identified with the point (q, p); this convention is used everywhere,
// including the Fibonacci family, which is normalized at the module boundary.
struct LatticePoint2 {
  Int y1;
  Int y2;

  friend bool operator==(const LatticePoint2&, const LatticePoint2&) = default;
  friend bool operator<(const LatticePoint2& a, const LatticePoint2& b) {
    return a.y1 != b.y1 ? a.y1 < b.y1 : a.y2 < b.y2;
  }
  friend LatticePoint2 operator+(const LatticePoint2& a, const LatticePoint2& b) {
    return {a.y1 + b.y1, a.y2 + b.y2};
  }
  friend LatticePoint2 operator-(const LatticePoint2& a, const LatticePoint2& b) {
    return {a.y1 - b.y1, a.y2 - b.y2};
  }
  friend LatticePoint2 operator*(const Int& s, const LatticePoint2& a) {
    return {s * a.y1, s * a.y2};
  }
};

// cross(a, b) = a.y1*b.y2 - a.y2*b.y1.
Int cross(const LatticePoint2& a, const LatticePoint2& b);

// Odd-length continued fraction [a0; b0, a1, ..., b_{k-1}, a_k]:
// a_terms has one more entry than b_terms and every term is >= 1.
struct ContinuedFraction {
  std::vector<Int> a_terms;
  std::vector<Int> b_terms;

  std::size_t order() const { return b_terms.size(); }  // k
  void validate() const;
};

// Convergent chains C_0..C_{k+1} (on the curve below the value ray) and
// D_0..D_k, generated by C_i = a_{i-1} D_{i-1} + C_{i-1},
// D_i = b_{i-1} C_i + D_{i-1} from C_0 = (1,0), D_0 = (0,1).
struct ConvergentChains {
  std::vector<LatticePoint2> C;
  std::vector<LatticePoint2> D;
};

ConvergentChains convergents(const ContinuedFraction& cf);

// Exact value by nested evaluation a0 + 1/(b0 + 1/(...)); kept independent of
// the convergent recurrence so the two routes can check each other.
Rat eval_cfrac(const ContinuedFraction& cf);

// The unique odd-length representation of alpha > 1 with all terms >= 1.
ContinuedFraction to_odd_cfrac(const Rat& alpha);

// All integer points on the polygonal chain C_0 C_1 ... C_{k+1}, in order,
// with the first skip_prefix points removed.  Consecutive points on segment
// C_i C_{i+1} differ by D_i; segment joints are not duplicated.
std::vector<LatticePoint2> chain_points(const ConvergentChains& chains, const Int& skip_prefix);

// Same for the chain D_0 D_1 ... D_k (consecutive points differ by C_{i+1}).
std::vector<LatticePoint2> chain_points_d(const ConvergentChains& chains);

struct ChainPropertyReport {
  bool g1_primitive = false;
  bool g2_c_segment_counts = false;
  bool g3_d_segment_counts = false;
  bool g4_c_strictly_convex = false;
  bool g5_d_strictly_convex = false;
  bool g6_upper_envelope = false;
  std::string detail;

  bool all() const {
    return g1_primitive && g2_c_segment_counts && g3_d_segment_counts &&
           g4_c_strictly_convex && g5_d_strictly_convex && g6_upper_envelope;
  }
};

// Verifies G1..G6 for the chains of cf.  G6 is checked by exhaustive scan of
// lattice columns y1 in [1, q]: any point strictly above the chain and weakly
// below the ray O C_{k+1} is a violation, as is a chain vertex outside the
// cone.  The scan box is the chain's bounding box; a violation outside it
// translates into it along the segment directions.
ChainPropertyReport check_chain_properties(const ConvergentChains& chains,
                                           const ContinuedFraction& cf);

std::ostream& operator<<(std::ostream& os, const LatticePoint2& p);

}  // namespace presred

#endif
