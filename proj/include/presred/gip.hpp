#ifndef PRESRED_GIP_HPP
#define PRESRED_GIP_HPP

#include "presred/geometry.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace presred {

// Candidate orderings that speed the exhaustive scans up without changing
// their answers: likely x-witnesses tried before the box scan, and likely
// failing y tried first.  Built from an Encoding for generated instances.
struct GipScanHints {
  std::function<std::vector<std::vector<Int>>(const Int& z, const LatticePoint2& y)> x_candidates;
  std::vector<LatticePoint2> y_first;
};

GipScanHints hints_from_encoding(const Encoding& enc, int n_t);


// Exhaustive decision of exists z in R, forall y in Q, exists x in x_box.
// The caller certifies that x_box is sound for the instance family.
bool decide_gip(const GIPInstance& inst, const BoundedBox& x_box,
                const GipScanHints* hints = nullptr);

// Number of z in R whose universal part holds.
Int count_gip(const GIPInstance& inst, const BoundedBox& x_box,
              const GipScanHints* hints = nullptr);

}  // namespace presred

#endif
