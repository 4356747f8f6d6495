#include "presred/contfrac.hpp"

#include <ostream>

namespace presred {

Int cross(const LatticePoint2& a, const LatticePoint2& b) {
  return a.y1 * b.y2 - a.y2 * b.y1;
}

void ContinuedFraction::validate() const {
  if (a_terms.size() != b_terms.size() + 1) {
    throw std::invalid_argument("continued fraction must have odd length (|a| = |b| + 1)");
  }
  for (const Int& t : a_terms) {
    if (t < 1) throw std::invalid_argument("continued fraction terms must be >= 1");
  }
  for (const Int& t : b_terms) {
    if (t < 1) throw std::invalid_argument("continued fraction terms must be >= 1");
  }
}

ConvergentChains convergents(const ContinuedFraction& cf) {
  cf.validate();
  const std::size_t k = cf.order();
  ConvergentChains ch;
  ch.C.reserve(k + 2);
  ch.D.reserve(k + 1);
  ch.C.push_back({1, 0});
  ch.D.push_back({0, 1});
  for (std::size_t i = 1; i <= k + 1; ++i) {
    ch.C.push_back(cf.a_terms[i - 1] * ch.D[i - 1] + ch.C[i - 1]);
    if (i <= k) ch.D.push_back(cf.b_terms[i - 1] * ch.C[i] + ch.D[i - 1]);
  }
  return ch;
}

Rat eval_cfrac(const ContinuedFraction& cf) {
  cf.validate();
  // Interleave back into [a0; b0, a1, ...] order and fold from the tail.
  std::vector<Int> terms;
  terms.reserve(cf.a_terms.size() + cf.b_terms.size());
  for (std::size_t i = 0; i < cf.a_terms.size(); ++i) {
    terms.push_back(cf.a_terms[i]);
    if (i < cf.b_terms.size()) terms.push_back(cf.b_terms[i]);
  }
  Rat value = terms.back();
  for (std::size_t i = terms.size() - 1; i-- > 0;) {
    value = Rat(terms[i]) + 1 / value;
  }
  return value;
}

ContinuedFraction to_odd_cfrac(const Rat& alpha) {
  if (alpha <= 1) throw std::invalid_argument("to_odd_cfrac: value must be > 1");
  // Euclidean expansion; the canonical form has last term >= 2 unless it is
  // the single-term case.
  std::vector<Int> terms;
  Int num = rat_num(alpha), den = rat_den(alpha);
  while (den != 0) {
    terms.push_back(num / den);
    Int r = num % den;
    num = den;
    den = r;
  }
  if (terms.size() % 2 == 0) {
    // a_n -> (a_n - 1, 1); a_n >= 2 here since the canonical tail term of a
    // multi-term expansion is >= 2.
    terms.back() -= 1;
    terms.push_back(1);
  }
  ContinuedFraction cf;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    (i % 2 == 0 ? cf.a_terms : cf.b_terms).push_back(terms[i]);
  }
  cf.validate();
  return cf;
}

std::vector<LatticePoint2> chain_points(const ConvergentChains& chains, const Int& skip_prefix) {
  if (skip_prefix < 0) throw std::invalid_argument("chain_points: skip_prefix must be >= 0");
  std::vector<LatticePoint2> pts;
  Int skip = skip_prefix;
  for (std::size_t i = 0; i + 1 < chains.C.size(); ++i) {
    const LatticePoint2& dir = chains.D[i];
    const LatticePoint2 delta = chains.C[i + 1] - chains.C[i];
    Int steps = dir.y1 != 0 ? delta.y1 / dir.y1 : delta.y2 / dir.y2;
    Int j0 = (i == 0) ? 0 : 1;  // segment joints appear once
    if (skip > steps - j0) {
      skip -= steps - j0 + 1;
      continue;
    }
    for (Int j = j0 + skip; j <= steps; ++j) {
      pts.push_back(chains.C[i] + j * dir);
    }
    skip = 0;
  }
  if (skip > 0) throw std::invalid_argument("chain_points: skip_prefix out of range");
  return pts;
}

std::vector<LatticePoint2> chain_points_d(const ConvergentChains& chains) {
  std::vector<LatticePoint2> pts;
  pts.push_back(chains.D[0]);
  for (std::size_t i = 0; i + 1 < chains.D.size(); ++i) {
    const LatticePoint2& dir = chains.C[i + 1];
    LatticePoint2 p = chains.D[i];
    while (p != chains.D[i + 1]) {
      p = p + dir;
      pts.push_back(p);
    }
  }
  return pts;
}

namespace {

// Number of lattice points on the closed segment from a to b.
Int segment_point_count(const LatticePoint2& a, const LatticePoint2& b) {
  using boost::multiprecision::abs;
  return int_gcd(abs(b.y1 - a.y1), abs(b.y2 - a.y2)) + 1;
}

// Max y2 attained by the chain over the vertical line y1 = x, or nullopt-like
// flag if the chain does not reach that column.
bool chain_height_at(const ConvergentChains& chains, const Int& x, Rat& out) {
  bool found = false;
  for (std::size_t i = 0; i + 1 < chains.C.size(); ++i) {
    const LatticePoint2& a = chains.C[i];
    const LatticePoint2& b = chains.C[i + 1];
    if (x < a.y1 || x > b.y1) continue;
    Rat h;
    if (a.y1 == b.y1) {
      h = Rat(b.y2 > a.y2 ? b.y2 : a.y2);
    } else {
      h = Rat(a.y2) + Rat((x - a.y1) * (b.y2 - a.y2), b.y1 - a.y1);
    }
    if (!found || h > out) out = h;
    found = true;
  }
  return found;
}

}  // namespace

ChainPropertyReport check_chain_properties(const ConvergentChains& chains,
                                           const ContinuedFraction& cf) {
  ChainPropertyReport rep;
  const std::size_t k = cf.order();
  const LatticePoint2& top = chains.C.back();
  const Int q = top.y1, p = top.y2;

  rep.g1_primitive = true;
  for (const auto& c : chains.C) {
    if (int_gcd(boost::multiprecision::abs(c.y1), boost::multiprecision::abs(c.y2)) != 1)
      rep.g1_primitive = false;
  }
  for (const auto& d : chains.D) {
    if (int_gcd(boost::multiprecision::abs(d.y1), boost::multiprecision::abs(d.y2)) != 1)
      rep.g1_primitive = false;
  }

  rep.g2_c_segment_counts = true;
  for (std::size_t i = 0; i + 1 < chains.C.size(); ++i) {
    if (segment_point_count(chains.C[i], chains.C[i + 1]) != cf.a_terms[i] + 1)
      rep.g2_c_segment_counts = false;
  }
  rep.g3_d_segment_counts = true;
  for (std::size_t i = 0; i + 1 < chains.D.size(); ++i) {
    if (segment_point_count(chains.D[i], chains.D[i + 1]) != cf.b_terms[i] + 1)
      rep.g3_d_segment_counts = false;
  }

  // Strict convexity via cross products of consecutive edges: the C-edges
  // turn clockwise, the D-edges counterclockwise.
  rep.g4_c_strictly_convex = true;
  for (std::size_t i = 0; i + 2 < chains.C.size(); ++i) {
    if (cross(chains.C[i + 1] - chains.C[i], chains.C[i + 2] - chains.C[i + 1]) >= 0)
      rep.g4_c_strictly_convex = false;
  }
  rep.g5_d_strictly_convex = true;
  for (std::size_t i = 0; i + 2 < chains.D.size(); ++i) {
    if (cross(chains.D[i + 1] - chains.D[i], chains.D[i + 2] - chains.D[i + 1]) <= 0)
      rep.g5_d_strictly_convex = false;
  }

  // G6: the chain is the upper envelope of the lattice points weakly below
  // the ray O C_{k+1}.  Two parts: every chain vertex lies weakly below the
  // ray, and no lattice point in the bounding box sits strictly above the
  // chain while weakly below the ray.
  rep.g6_upper_envelope = true;
  for (const auto& c : chains.C) {
    if (p * c.y1 - q * c.y2 < 0 || c.y1 < 0 || c.y2 < 0) {
      rep.g6_upper_envelope = false;
      rep.detail += "chain vertex outside the cone; ";
    }
  }
  if (rep.g6_upper_envelope) {
    for (Int x = 1; x <= q; ++x) {
      Rat h;
      if (!chain_height_at(chains, x, h)) continue;
      // smallest integer strictly above the chain at column x
      Int y_low = floor_div(rat_num(h), rat_den(h)) + 1;
      // largest integer weakly below the ray: y <= p*x/q
      Int y_high = floor_div(p * x, q);
      if (y_low <= y_high) {
        rep.g6_upper_envelope = false;
        rep.detail += "lattice point above the chain at column " + x.str() + "; ";
        break;
      }
    }
  }
  (void)k;
  return rep;
}

std::ostream& operator<<(std::ostream& os, const LatticePoint2& p) {
  return os << "(" << p.y1 << "," << p.y2 << ")";
}

}  // namespace presred
