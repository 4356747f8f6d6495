#include "presred/encode.hpp"

#include <algorithm>

namespace presred {

std::vector<Int> Encoding::delta_residues() const {
  std::vector<Int> out;
  for (const auto& pt : cprime()) out.push_back(mod_euclid(pt.y2, M));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Encoding::residue_covered(const Int& z) const {
  const auto res = delta_residues();
  return std::binary_search(res.begin(), res.end(), mod_euclid(z, M));
}

Int compute_M(const APCoverInstance& inst) {
  Int m = 1;
  for (const auto& t : inst.triples) m *= t.g * (t.g + t.h * t.e);
  m = 1 + inst.nu * m;
  if (m <= inst.nu) throw std::logic_error("compute_M: M must exceed nu");
  for (const auto& t : inst.triples) {
    if (m <= t.g + t.h * t.e) throw std::logic_error("compute_M: M must exceed every element");
    if (int_gcd(m, t.g) != 1 || int_gcd(m, t.g + t.h * t.e) != 1) {
      throw std::logic_error("compute_M: gcd condition failed");
    }
  }
  return m;
}

namespace {

// Representative of r in [1, M]: the term ranges require b >= 1.
Int rep_1_to_m(const Int& r, const Int& M) {
  Int x = mod_euclid(r, M);
  return x == 0 ? M : x;
}

}  // namespace

Encoding build_encoding(const APCoverInstance& inst) {
  inst.validate();
  if (!inst.is_normalized()) {
    throw std::invalid_argument("build_encoding: instance must be normalized first");
  }
  Encoding enc;
  enc.source = inst;
  enc.M = compute_M(inst);
  const Int& M = enc.M;
  const auto& tr = inst.triples;
  const std::size_t k = tr.size();

  ContinuedFraction cf;
  if (k == 0) {
    // No progressions: [M] has C' = {(1, M)}, whose residue 0 misses J.
    cf.a_terms.push_back(M);
    enc.g1 = M;
  } else {
    enc.g1 = tr[0].g;
    cf.a_terms.push_back(tr[0].g);  // a_0, Step 1
    // b_0: g_1 b_0 + 1 == e_1 (mod M), Step 2
    cf.b_terms.push_back(rep_1_to_m(mod_inverse(tr[0].g, M) * (tr[0].e - 1), M));
    cf.a_terms.push_back(tr[0].h);  // a_1, Step 3
    ConvergentChains ch = convergents(cf);
    for (std::size_t j = 1; j < k; ++j) {
      // Steps 4j..4j+3: aim C_{2j+1} at g_{j+1} and C_{2j+2} at g_{j+1}+h e.
      const Int target = mod_euclid(tr[j].g - (tr[j - 1].g + tr[j - 1].h * tr[j - 1].e), M);
      const Int c2j = mod_euclid(ch.C[2 * j].y2, M);
      cf.b_terms.push_back(rep_1_to_m(mod_inverse(c2j, M) * (target - ch.D[2 * j - 1].y2), M));
      cf.a_terms.push_back(1);
      ch = convergents(cf);
      const Int c2j1 = mod_euclid(ch.C[2 * j + 1].y2, M);
      cf.b_terms.push_back(
          rep_1_to_m(mod_inverse(c2j1, M) * (tr[j].e - ch.D[2 * j].y2), M));
      cf.a_terms.push_back(tr[j].h);
      ch = convergents(cf);
    }
  }
  cf.validate();
  enc.cfrac = cf;
  enc.chains = convergents(cf);
  enc.q = enc.chains.C.back().y1;
  enc.p = enc.chains.C.back().y2;
  return enc;
}

EncodingConditionReport check_conditions(const Encoding& enc) {
  EncodingConditionReport rep;
  const Int& M = enc.M;
  const auto& tr = enc.source.triples;
  const std::size_t k = tr.size();
  const auto& a = enc.cfrac.a_terms;
  const auto& C = enc.chains.C;
  const auto& D = enc.chains.D;

  for (const Int& t : enc.cfrac.a_terms) {
    if (t < 1 || t > M) rep.c1_term_range = false;
  }
  for (const Int& t : enc.cfrac.b_terms) {
    if (t < 1 || t > M) rep.c1_term_range = false;
  }
  if (k == 0) return rep;  // conditions (2)-(7) quantify over 1..k

  for (std::size_t i = 1; i < k; ++i) {
    if (a[2 * i] != 1) rep.c2_even_terms_one = false;
  }
  for (std::size_t i = 1; i <= k; ++i) {
    if (a[2 * i - 1] != tr[i - 1].h) rep.c3_odd_terms_h = false;
    if (mod_euclid(C[2 * i - 1].y2, M) != mod_euclid(tr[i - 1].g, M)) {
      rep.c4_odd_congruence = false;
      rep.detail += "condition (4) fails at i=" + std::to_string(i) + "; ";
    }
    if (mod_euclid(C[2 * i].y2, M) !=
        mod_euclid(tr[i - 1].g + tr[i - 1].h * tr[i - 1].e, M)) {
      rep.c5_even_congruence = false;
      rep.detail += "condition (5) fails at i=" + std::to_string(i) + "; ";
    }
    // Segment C_{2i-1} C_{2i}: h_i + 1 points whose residues are AP_i.
    const LatticePoint2 delta = C[2 * i] - C[2 * i - 1];
    using boost::multiprecision::abs;
    Int npts = int_gcd(abs(delta.y1), abs(delta.y2)) + 1;
    if (npts != tr[i - 1].h + 1) {
      rep.c6_segments_match = false;
    } else {
      std::vector<Int> got, want;
      for (Int j = 0; j <= tr[i - 1].h; ++j) {
        got.push_back(mod_euclid((C[2 * i - 1] + j * D[2 * i - 1]).y2, M));
        want.push_back(mod_euclid(tr[i - 1].g + j * tr[i - 1].e, M));
      }
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      if (got != want) {
        rep.c6_segments_match = false;
        rep.detail += "A_" + std::to_string(i) + " != AP_" + std::to_string(i) + "; ";
      }
    }
  }
  for (std::size_t i = 1; i < k; ++i) {
    const LatticePoint2 delta = C[2 * i + 1] - C[2 * i];
    using boost::multiprecision::abs;
    if (int_gcd(abs(delta.y1), abs(delta.y2)) != 1) rep.c7_no_interior = false;
  }
  return rep;
}

}  // namespace presred
