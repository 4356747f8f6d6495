#ifndef PRESRED_APCOVER_HPP
#define PRESRED_APCOVER_HPP

#include "presred/exactmath.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace presred {

// AP(g, h, e) = {g + j*e : 0 <= j <= h}.  Raw reductions may produce g = 0 or
// mu = 0; normalize() brings an instance into the positive form (mu >= 1,
// every g >= 2, every h >= 1) that the encoder requires.
struct APTriple {
  Int g;  // first term
  Int h;  // index bound
  Int e;  // step

  friend bool operator==(const APTriple&, const APTriple&) = default;
};

struct APCoverInstance {
  Int mu;
  Int nu;  // interval J = [mu, nu]
  std::vector<APTriple> triples;

  Int interval_size() const { return nu - mu + 1; }
  bool is_normalized() const;
  void validate() const;  // mu <= nu, every e >= 1, h >= 0, g >= 0

  friend bool operator==(const APCoverInstance&, const APCoverInstance&) = default;
};

enum class Quantifier { ForAll, Exists };

// m-AP-COVER instance.  Lists are outermost-first: quantifiers[t] binds z_t
// over intervals[t] minus groups[t] for t < m-1; the innermost existential
// binds z_{m-1} over intervals[m-1] plainly and the last group applies to the
// combination tau_0*z_0 + ... + tau_{m-1}*z_{m-1}.
struct MAPCoverInstance {
  std::vector<std::pair<Int, Int>> intervals;
  std::vector<std::vector<APTriple>> groups;
  std::vector<Int> taus;
  std::vector<Quantifier> quantifiers;  // alternating; last must be Exists

  std::size_t m() const { return intervals.size(); }
  void validate() const;
};

bool ap_member(const Int& z, const APTriple& t);

// Translate-and-augment: returns an equivalent instance with mu >= 1, every
// g >= 2 and every h >= 1, plus the applied shift.  z is uncovered in the
// input iff z + shift is uncovered in the output, over the original window;
// when a singleton progression forces it, nu grows by one and the appended
// point nu+1 is covered, so counts over the original window are preserved.
std::pair<APCoverInstance, Int> normalize(const APCoverInstance& inst);


bool decide_apcover(const APCoverInstance& inst);
Int count_apcover(const APCoverInstance& inst);

bool decide_mapcover(const MAPCoverInstance& inst);

// Textual formats (see docs/FORMATS.md).
std::string to_text(const APCoverInstance& inst);
APCoverInstance parse_apcover(const std::string& text);
std::string to_text(const MAPCoverInstance& inst);
MAPCoverInstance parse_mapcover(const std::string& text);

}  // namespace presred

#endif
