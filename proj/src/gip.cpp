#include "presred/gip.hpp"

#include <algorithm>

namespace presred {

GipScanHints hints_from_encoding(const Encoding& enc, int n_t) {
  GipScanHints h;
  h.y_first = enc.cprime();
  const Int M = enc.M, p = enc.p, q = enc.q;
  h.x_candidates = [M, p, q, n_t](const Int& z, const LatticePoint2& y) {
    std::vector<std::vector<Int>> cands;
    // Mod-window witness: the quotient makes the remainder land in [1, M-1].
    if (mod_euclid(z - y.y2, M) != 0) {
      std::vector<Int> x(2 + n_t, 0);
      x[0] = floor_div(z - y.y2, M);
      cands.push_back(std::move(x));
    }
    // Parallelogram witnesses, one per lattice row of P_y.
    const Int vy = p * y.y1 - q * y.y2;
    if (vy >= 0) {
      for (Int x2 = 1; x2 < y.y2; ++x2) {
        Int lo = -floor_div(-(q * x2), p);
        Int hi = floor_div(vy + q * x2, p);
        if (lo > hi) continue;
        std::vector<Int> x(2 + n_t, 1);
        x[0] = lo;
        x[1] = x2;
        cands.push_back(std::move(x));
      }
    }
    return cands;
  };
  return h;
}

namespace {

bool rows_hold(const GIPInstance& inst, const std::vector<Int>& x, const LatticePoint2& y,
               const Int& z) {
  for (std::size_t r = 0; r < inst.rows(); ++r) {
    Int lhs = inst.C[r][0] * z + inst.B[r][0] * y.y1 + inst.B[r][1] * y.y2;
    for (int i = 0; i < inst.n_x; ++i) {
      if (inst.A[r][i] != 0) lhs += inst.A[r][i] * x[i];
    }
    if (lhs > inst.b[r]) return false;
  }
  return true;
}

bool exists_x(const GIPInstance& inst, const BoundedBox& box, const GipScanHints* hints,
              const Int& z, const LatticePoint2& y) {
  if (hints && hints->x_candidates) {
    for (auto& cand : hints->x_candidates(z, y)) {
      bool in_box = true;
      for (int i = 0; i < inst.n_x; ++i) {
        if (cand[i] < box.ranges[i].first || cand[i] > box.ranges[i].second) {
          in_box = false;
          break;
        }
      }
      if (in_box && rows_hold(inst, cand, y, z)) return true;
    }
  }
  std::vector<Int> x(inst.n_x);
  for (int i = 0; i < inst.n_x; ++i) x[i] = box.ranges[i].first;
  while (true) {
    if (rows_hold(inst, x, y, z)) return true;
    int i = 0;
    for (; i < inst.n_x; ++i) {
      if (x[i] < box.ranges[i].second) {
        ++x[i];
        for (int j = 0; j < i; ++j) x[j] = box.ranges[j].first;
        break;
      }
    }
    if (i == inst.n_x) return false;
  }
}

bool forall_y(const GIPInstance& inst, const BoundedBox& box, const GipScanHints* hints,
              const Int& z, const std::vector<LatticePoint2>& ypts) {
  if (hints) {
    for (const auto& y : hints->y_first) {
      if (!inst.Q.contains_int({y.y1, y.y2})) continue;
      if (!exists_x(inst, box, hints, z, y)) return false;
    }
  }
  for (const auto& y : ypts) {
    if (!exists_x(inst, box, hints, z, y)) return false;
  }
  return true;
}

struct ScanPrep {
  std::vector<LatticePoint2> ypts;
};

ScanPrep prepare(const GIPInstance& inst, const BoundedBox& box) {
  inst.validate();
  if (box.ranges.size() != static_cast<std::size_t>(inst.n_x)) {
    throw std::invalid_argument("decide_gip: x_box arity mismatch");
  }
  ScanPrep prep;
  prep.ypts = lattice_points_2d(inst.Q);
  Int volume = inst.r_nu - inst.r_mu + 1;
  volume *= Int(prep.ypts.size());
  for (const auto& [lo, hi] : box.ranges) {
    if (lo > hi) throw std::invalid_argument("decide_gip: empty x_box range");
    volume *= hi - lo + 1;
  }
  if (volume > big_scan_limit()) {
    throw ScaleError("decide_gip: scan product exceeds the scan guard");
  }
  return prep;
}

}  // namespace

bool decide_gip(const GIPInstance& inst, const BoundedBox& x_box, const GipScanHints* hints) {
  ScanPrep prep = prepare(inst, x_box);
  for (Int z = inst.r_mu; z <= inst.r_nu; ++z) {
    if (forall_y(inst, x_box, hints, z, prep.ypts)) return true;
  }
  return false;
}

Int count_gip(const GIPInstance& inst, const BoundedBox& x_box, const GipScanHints* hints) {
  ScanPrep prep = prepare(inst, x_box);
  Int n = 0;
  for (Int z = inst.r_mu; z <= inst.r_nu; ++z) {
    if (forall_y(inst, x_box, hints, z, prep.ypts)) ++n;
  }
  return n;
}

}  // namespace presred
