#ifndef PRESRED_SATRED_HPP
#define PRESRED_SATRED_HPP

#include "presred/apcover.hpp"

#include <array>
#include <string>
#include <vector>

namespace presred {

// 3-CNF over variables 1..num_vars; literals are signed indices and may
// repeat inside a clause.
struct Cnf3 {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;

  void validate() const;
  bool satisfied_by(unsigned long long assignment_bits) const;
};

// Alternating prenex 3-CNF QBF; blocks are outermost-first and the innermost
// block is existential.
struct QbfInstance {
  std::vector<std::pair<Quantifier, std::vector<int>>> blocks;
  Cnf3 matrix;

  std::size_t num_blocks() const { return blocks.size(); }
  void validate() const;
};

inline constexpr int kMaxCountVars = 24;

// Exact model count by exhaustive enumeration; refuses num_vars > 24.
Int count_sat(const Cnf3& f);

// Exhaustive truth of an alternating QBF (total variables <= 24).
bool qbf_truth(const QbfInstance& f);

// Recovers assignments from uncovered points of the reduced instance:
// variable j is true iff z = 1 (mod its prime).
struct ApCoverDecoder {
  std::vector<Int> primes;   // one per CNF variable, in variable order
  bool parity_trick = false;

  std::vector<bool> decode(const Int& z) const;
  Int encode(const std::vector<bool>& assignment) const;
};

// 3SAT -> AP-COVER over J = [0, prod(primes)) with one progression per
// non-0/1 residue and one per clause (via CRT on the falsifying residues).
// Satisfying assignments correspond bijectively to uncovered z.  With
// parity_trick the primes are 3, 5, ... and an extra progression covers all
// even z, so every uncovered z is odd.
std::pair<APCoverInstance, ApCoverDecoder> reduce_3sat_to_apcover(const Cnf3& f,
                                                                  bool parity_trick = false);

// Alternating QBF -> m-AP-COVER.  Each block gets its own set of primes;
// outer blocks carry their residue restrictions in their own group, the
// innermost group holds the inner-block restrictions and all clause
// progressions against the tau-combination.
MAPCoverInstance reduce_qbf_to_mapcover(const QbfInstance& f);

Cnf3 parse_dimacs(const std::string& text);
QbfInstance parse_qdimacs(const std::string& text);
std::string to_dimacs(const Cnf3& f);

}  // namespace presred

#endif
