#ifndef PRESRED_ENCODE_HPP
#define PRESRED_ENCODE_HPP

#include "presred/apcover.hpp"
#include "presred/contfrac.hpp"

#include <vector>

namespace presred {

// Result of compiling a normalized AP-COVER instance into a continued
// fraction whose chain, reduced mod M, reproduces the progressions:
// the relabeled terms are a_0..a_{2k-1}, b_0..b_{2k-2}, the final convergent
// is C_{2k} = (q, p), and v = (p, -q).  C' is the chain minus the first g1
// points; Delta = {y2 mod M : y in C'} equals the union of the progressions.
// For an instance with no progressions the fraction is the single term [M],
// whose only C' residue is 0 and therefore touches no point of J.
struct Encoding {
  Int M;
  ContinuedFraction cfrac;
  ConvergentChains chains;
  Int p;
  Int q;
  Int g1;
  APCoverInstance source;  // normalized

  std::size_t k() const { return source.triples.size(); }

  // Chain minus the first g1 integer points.
  std::vector<LatticePoint2> cprime() const { return chain_points(chains, g1); }

  // Sorted distinct values {y2 mod M : y in C'}.
  std::vector<Int> delta_residues() const;

  bool residue_covered(const Int& z) const;  // z mod M in delta_residues
};

// M = 1 + nu * prod g_i (g_i + h_i e_i); exceeds nu and every progression
// element, and is coprime to every g_i and g_i + h_i e_i.
Int compute_M(const APCoverInstance& inst);

// The step-by-step construction; requires a normalized instance.
Encoding build_encoding(const APCoverInstance& inst);

struct EncodingConditionReport {
  bool c1_term_range = true;      // all terms in [1, M]
  bool c2_even_terms_one = true;  // a_{2i} = 1 for 1 <= i < k
  bool c3_odd_terms_h = true;     // a_{2i-1} = h_i
  bool c4_odd_congruence = true;  // p_{2i-1} == g_i (mod M)
  bool c5_even_congruence = true; // p_{2i} == g_i + h_i e_i (mod M)
  bool c6_segments_match = true;  // |C_{2i-1}C_{2i}| = h_i+1 points; A_i = AP_i
  bool c7_no_interior = true;     // C_{2i}C_{2i+1} has no interior points
  std::string detail;

  bool all() const {
    return c1_term_range && c2_even_terms_one && c3_odd_terms_h && c4_odd_congruence &&
           c5_even_congruence && c6_segments_match && c7_no_interior;
  }
};

EncodingConditionReport check_conditions(const Encoding& enc);

}  // namespace presred

#endif
