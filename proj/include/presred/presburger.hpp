#ifndef PRESRED_PRESBURGER_HPP
#define PRESRED_PRESBURGER_HPP

#include "presred/encode.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace presred {

// sum coeffs[i] * v_i <= bound, non-strict, integer coefficients.
struct LinearInequality {
  std::vector<Int> coeffs;
  Int bound;

  bool holds(const std::vector<Int>& assignment) const;
  friend bool operator==(const LinearInequality&, const LinearInequality&) = default;
};

// Boolean combination without negations (all inequalities pre-sharpened).
// AND() is true, OR() is false.
struct BoolTree {
  enum class Kind { Leaf, And, Or };
  Kind kind = Kind::And;
  LinearInequality row;  // Leaf only
  std::vector<BoolTree> children;

  static BoolTree leaf(LinearInequality r);
  static BoolTree make_and(std::vector<BoolTree> ch);
  static BoolTree make_or(std::vector<BoolTree> ch);

  bool eval(const std::vector<Int>& assignment) const;
  int row_count() const;
  friend bool operator==(const BoolTree&, const BoolTree&) = default;
};

struct QuantBlock {
  Quantifier quant;
  int size;
  friend bool operator==(const QuantBlock&, const QuantBlock&) = default;
};

// Inclusive per-variable ranges.
struct BoundedBox {
  std::vector<std::pair<Int, Int>> ranges;
};

// Metadata carried by sentences produced from m-AP-COVER instances: the
// source, per-group encodings and the normalization shift applied to each
// group before encoding.
struct MergedSentenceMeta {
  MAPCoverInstance source;
  std::vector<Encoding> group_encodings;
  std::vector<Int> shifts;
};

// Prenex sentence: quantifier blocks over integer vectors plus a Boolean
// combination of inequalities over all variables (in block order).
struct ShortSentence {
  std::vector<QuantBlock> prefix;
  int num_vars = 0;
  BoolTree matrix;

  // Present on sentences built from an encoding; drives the certified
  // evaluators and makes serialization self-contained.
  std::shared_ptr<const Encoding> enc3;
  std::shared_ptr<const MergedSentenceMeta> encm;

  int inequality_count() const { return matrix.row_count(); }
  void validate() const;
};

bool eval_expr(const BoolTree& tree, const std::vector<Int>& assignment);


// Exhaustive nested quantifier evaluation over the box.  Exact for the given
// box; the caller certifies that the box is sound for the sentence family.
bool decide_bounded(const ShortSentence& s, const BoundedBox& box);

// Evaluators for sentences carrying encoding metadata: the universal
// quantifier collapses to the finite chain C' (and, for merged sentences,
// each level collapses to its group's residue test).
bool decide_certified(const ShortSentence& s);
Int count_certified(const ShortSentence& s);

// exists z / forall y / exists x, 5 variables, 10 inequalities; true iff the
// source instance has an uncovered point.
ShortSentence build_sentence3(const Encoding& enc);

// The m-quantifier merge: m+2 alternating blocks sized 1, 2, 4, ..., 4, 2
// (4m+1 variables, 10m inequalities); true iff the m-AP-COVER instance is.
ShortSentence build_sentence_m(const MAPCoverInstance& inst);

// Rebuilds the deterministic per-group encodings used by build_sentence_m.
MergedSentenceMeta merged_meta_from_instance(const MAPCoverInstance& inst);

// De Morgan dual: flips quantifiers and negates the matrix with sharpened
// inequalities; decides the opposite.
ShortSentence negate_sentence(const ShortSentence& s);

std::string to_text(const ShortSentence& s);
ShortSentence parse_sentence(const std::string& text);

}  // namespace presred

#endif
