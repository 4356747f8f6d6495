#include "presred/optimize.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace presred {

Rat QuadForm::eval(const std::vector<Int>& x) const {
  Rat v = constant;
  const std::size_t n = lin.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (lin[i] != 0) v += lin[i] * Rat(x[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (quad[i][j] != 0) v += quad[i][j] * Rat(x[i]) * Rat(x[j]);
    }
  }
  return v;
}

void BilevelInstance::validate() const {
  if (mu > nu) throw std::invalid_argument("bilevel: empty interval J");
  if (W.dim != 5) throw std::invalid_argument("bilevel: W must live in R^5");
  if (h.lin.size() != 6) throw std::invalid_argument("bilevel: h must take 6 variables");
}

bool is_weak_convergent_pair(const LatticePoint2& u, const LatticePoint2& v, const Rat& alpha) {
  if (u.y1 < 0 || v.y1 < 0) throw std::invalid_argument("weak convergents: need u1, v1 >= 0");
  if (alpha <= 1) throw std::invalid_argument("weak convergents: alpha must be > 1");
  const Int p = rat_num(alpha), q = rat_den(alpha);
  const bool hyp = (u.y2 * q < p * u.y1) && (p * v.y1 < q * v.y2) &&
                   (v.y2 * u.y1 - v.y1 * u.y2 == 1);
  if (!hyp) return false;
  const ConvergentChains chains = convergents(to_odd_cfrac(alpha));
  const auto cpts = chain_points(chains, 0);
  const auto dpts = chain_points_d(chains);
  const bool on_c = std::find(cpts.begin(), cpts.end(), u) != cpts.end();
  const bool on_d = std::find(dpts.begin(), dpts.end(), v) != dpts.end();
  if (!on_c || !on_d) {
    throw std::logic_error("weak-convergent hypothesis held off the chains for alpha " +
                           rat_num(alpha).str() + "/" + rat_den(alpha).str());
  }
  return true;
}

BilevelInstance build_bilevel(const Encoding& enc) {
  BilevelInstance inst;
  inst.mu = enc.source.mu;
  inst.nu = enc.source.nu;
  inst.M = enc.M;
  inst.T = -floor_div(-enc.p, enc.M);  // ceil(p / M)
  inst.K = int_pow(2 * inst.T * enc.M + enc.p, 3);
  inst.enc = enc;

  const Int &p = enc.p, &q = enc.q, &g1 = enc.g1;
  HPolytope w;
  w.dim = 5;
  // Q in (u1, u2)
  w.rows.push_back({{Int(0), Int(-1), Int(0), Int(0), Int(0)}, -g1});
  w.rows.push_back({{Int(1), Int(0), Int(0), Int(0), Int(0)}, q});
  w.rows.push_back({{-p, q, Int(0), Int(0), Int(0)}, Int(0)});
  // P in (v1, v2), with the origin excluded via v2 >= 1
  w.rows.push_back({{Int(0), Int(0), Int(0), Int(1), Int(0)}, p - 1});
  w.rows.push_back({{Int(0), Int(0), Int(-1), Int(0), Int(0)}, Int(0)});
  w.rows.push_back({{Int(0), Int(0), p, -q, Int(0)}, Int(0)});
  w.rows.push_back({{Int(0), Int(0), Int(0), Int(-1), Int(0)}, Int(-1)});
  // t in [0, T]
  w.rows.push_back({{Int(0), Int(0), Int(0), Int(0), Int(1)}, inst.T});
  w.rows.push_back({{Int(0), Int(0), Int(0), Int(0), Int(-1)}, Int(0)});
  inst.W = std::move(w);

  // h over (z, u1, u2, v1, v2, t)
  QuadForm h;
  h.quad.assign(6, std::vector<Rat>(6, Rat(0)));
  h.lin.assign(6, Rat(0));
  const Rat K2 = Rat(inst.K, 2);
  h.quad[0][0] = 1;                       // z^2
  h.quad[2][2] = 1;                       // u2^2
  h.quad[5][5] = Rat(inst.M * inst.M);    // M^2 t^2
  h.quad[0][2] = h.quad[2][0] = -1;       // -2 z u2
  h.quad[2][5] = h.quad[5][2] = Rat(-inst.M);
  h.quad[0][5] = h.quad[5][0] = Rat(inst.M);
  h.quad[1][4] = h.quad[4][1] = K2;       // K v2 u1
  h.quad[2][3] = h.quad[3][2] = -K2;      // -K v1 u2
  h.constant = Rat(-inst.K);
  inst.h = std::move(h);
  inst.validate();
  return inst;
}

namespace {

struct WPoints {
  std::vector<LatticePoint2> q_pts;  // (u1, u2)
  std::vector<LatticePoint2> p_pts;  // (v1, v2)
};

// The built W is Q x P x [0, T]; enumerate the two triangles separately.
WPoints w_lattice(const BilevelInstance& inst) {
  HPolytope uq, vp;
  uq.dim = 2;
  vp.dim = 2;
  for (const auto& r : inst.W.rows) {
    if (r.coeffs[4] != 0) continue;  // the t rows
    if (r.coeffs[0] != 0 || r.coeffs[1] != 0) {
      uq.rows.push_back({{r.coeffs[0], r.coeffs[1]}, r.bound});
    } else {
      vp.rows.push_back({{r.coeffs[2], r.coeffs[3]}, r.bound});
    }
  }
  return {lattice_points_2d(uq), lattice_points_2d(vp)};
}

}  // namespace

Int solve_bilevel_brute(const BilevelInstance& inst) {
  inst.validate();
  WPoints w = w_lattice(inst);
  Int volume = (inst.nu - inst.mu + 1) * Int(w.q_pts.size()) * Int(w.p_pts.size()) * (inst.T + 1);
  if (volume > big_scan_limit()) {
    throw ScaleError("solve_bilevel_brute: scan product exceeds the scan guard");
  }
  const Int& K = inst.K;
  const Int& M = inst.M;
  bool first_z = true;
  Int best = 0;
  for (Int z = inst.mu; z <= inst.nu; ++z) {
    bool first_w = true;
    Int inner = 0;
    for (const auto& u : w.q_pts) {
      // h splits over the independent v- and t-scans for fixed (z, u).
      bool first_v = true;
      Int det_min = 0;
      for (const auto& v : w.p_pts) {
        Int det = v.y2 * u.y1 - v.y1 * u.y2;
        if (first_v || det < det_min) det_min = det;
        first_v = false;
      }
      bool first_t = true;
      Int gap_min = 0;
      for (Int t = 0; t <= inst.T; ++t) {
        Int gap = u.y2 - z - t * M;
        gap *= gap;
        if (first_t || gap < gap_min) gap_min = gap;
        first_t = false;
      }
      Int value = K * (det_min - 1) + gap_min;
      if (first_w || value < inner) inner = value;
      first_w = false;
    }
    if (first_w) throw std::invalid_argument("solve_bilevel_brute: W has no lattice points");
    if (first_z || inner > best) best = inner;
    first_z = false;
  }
  return best;
}

Int semantic_bilevel_value(const Encoding& enc) {
  const auto pts = enc.cprime();
  const Int T = -floor_div(-enc.p, enc.M);
  Int best = 0;
  bool first_z = true;
  for (Int z = enc.source.mu; z <= enc.source.nu; ++z) {
    Int inner = 0;
    bool first = true;
    for (const auto& y : pts) {
      // Closest value of u2 - tM to z over t in [0, T].
      for (Int t : {floor_div(y.y2 - z, enc.M), -floor_div(-(y.y2 - z), enc.M)}) {
        if (t < 0) t = 0;
        if (t > T) t = T;
        Int gap = y.y2 - z - t * enc.M;
        gap *= gap;
        if (first || gap < inner) inner = gap;
        first = false;
      }
    }
    if (first) throw std::logic_error("semantic_bilevel_value: empty chain");
    if (first_z || inner > best) best = inner;
    first_z = false;
  }
  return best;
}

ParetoInstance build_pareto(const Encoding& enc, bool parity_trick) {
  BilevelInstance bl = build_bilevel(enc);
  ParetoInstance inst;
  inst.domain.dim = 6;
  inst.domain.rows.push_back({{Int(-1), Int(0), Int(0), Int(0), Int(0), Int(0)}, -bl.mu});
  inst.domain.rows.push_back({{Int(1), Int(0), Int(0), Int(0), Int(0), Int(0)}, bl.nu});
  for (const auto& r : bl.W.rows) {
    LinearInequality row;
    row.coeffs.push_back(0);
    for (const auto& c : r.coeffs) row.coeffs.push_back(c);
    row.bound = r.bound;
    inst.domain.rows.push_back(std::move(row));
  }
  inst.f1 = {Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
  inst.f2 = {Rat(-1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
  inst.f3 = bl.h;
  inst.g = {Rat(0), Rat(0), Rat(-1)};
  inst.parity_source = parity_trick;
  inst.enc = enc;
  return inst;
}

ParetoSolution solve_pareto_brute(const ParetoInstance& inst) {
  if (inst.domain.dim != 6 || inst.f1.size() != 6 || inst.f2.size() != 6 ||
      inst.f3.lin.size() != 6 || inst.g.size() != 3) {
    throw std::invalid_argument("solve_pareto_brute: instance must live in R^6");
  }
  // f1 = c z and f2 = -c z make outcomes with distinct z incomparable, so
  // the Pareto minima are exactly the per-z outcomes with minimal f3.
  for (int i = 1; i < 6; ++i) {
    if (inst.f1[i] != 0 || inst.f2[i] != 0) {
      throw std::invalid_argument("solve_pareto_brute: f1, f2 must depend on z only");
    }
  }
  if (inst.f1[0] == 0 || inst.f2[0] != -inst.f1[0] || rat_den(inst.f1[0]) != 1) {
    throw std::invalid_argument("solve_pareto_brute: needs f2 = -f1 with nonzero integer slope");
  }
  // Split the product domain J x Q x P x [0, T].
  Int z_lo, z_hi, t_lo, t_hi;
  bool have_zlo = false, have_zhi = false, have_tlo = false, have_thi = false;
  HPolytope uq, vp;
  uq.dim = vp.dim = 2;
  for (const auto& r : inst.domain.rows) {
    bool on_z = r.coeffs[0] != 0;
    bool on_u = r.coeffs[1] != 0 || r.coeffs[2] != 0;
    bool on_v = r.coeffs[3] != 0 || r.coeffs[4] != 0;
    bool on_t = r.coeffs[5] != 0;
    if (on_z + on_u + on_v + on_t != 1) {
      throw std::invalid_argument("solve_pareto_brute: domain is not a product");
    }
    if (on_z) {
      if (r.coeffs[0] > 0) {
        Int hi = floor_div(r.bound, r.coeffs[0]);
        if (!have_zhi || hi < z_hi) z_hi = hi;
        have_zhi = true;
      } else {
        Int lo = -floor_div(r.bound, -r.coeffs[0]);
        if (!have_zlo || lo > z_lo) z_lo = lo;
        have_zlo = true;
      }
    } else if (on_u) {
      uq.rows.push_back({{r.coeffs[1], r.coeffs[2]}, r.bound});
    } else if (on_v) {
      vp.rows.push_back({{r.coeffs[3], r.coeffs[4]}, r.bound});
    } else {
      if (r.coeffs[5] > 0) {
        Int hi = floor_div(r.bound, r.coeffs[5]);
        if (!have_thi || hi < t_hi) t_hi = hi;
        have_thi = true;
      } else {
        Int lo = -floor_div(r.bound, -r.coeffs[5]);
        if (!have_tlo || lo > t_lo) t_lo = lo;
        have_tlo = true;
      }
    }
  }
  if (!have_zlo || !have_zhi || !have_tlo || !have_thi || z_lo > z_hi || t_lo > t_hi) {
    throw std::invalid_argument("solve_pareto_brute: unbounded domain");
  }
  const auto q_pts = lattice_points_2d(uq);
  const auto p_pts = lattice_points_2d(vp);
  Int volume =
      (z_hi - z_lo + 1) * Int(q_pts.size()) * Int(p_pts.size()) * (t_hi - t_lo + 1);
  if (volume > big_scan_limit()) {
    throw ScaleError("solve_pareto_brute: scan product exceeds the scan guard");
  }
  ParetoSolution sol;
  bool have_g = false;
  std::vector<Int> x(6);
  for (Int z = z_lo; z <= z_hi; ++z) {
    bool first_w = true;
    Rat inner;
    x[0] = z;
    for (const auto& u : q_pts) {
      x[1] = u.y1;
      x[2] = u.y2;
      for (const auto& v : p_pts) {
        x[3] = v.y1;
        x[4] = v.y2;
        for (Int t = t_lo; t <= t_hi; ++t) {
          x[5] = t;
          Rat value = inst.f3.eval(x);
          if (first_w || value < inner) inner = value;
          first_w = false;
        }
      }
    }
    if (first_w) throw std::invalid_argument("solve_pareto_brute: W has no lattice points");
    if (rat_den(inner) != 1) {
      throw std::invalid_argument("solve_pareto_brute: non-integer outcome value");
    }
    sol.pareto_set.push_back({inst.f1[0].convert_to<Int>() * z,
                              inst.f2[0].convert_to<Int>() * z, rat_num(inner)});
    Rat gv = 0;
    for (int c = 0; c < 3; ++c) gv += inst.g[c] * Rat(sol.pareto_set.back()[c]);
    if (!have_g || gv < sol.min_g) sol.min_g = gv;
    have_g = true;
  }
  // Dominance sanity: with f1 = z, f2 = -z no two outcomes are comparable.
  for (std::size_t i = 0; i < sol.pareto_set.size(); ++i) {
    for (std::size_t j = 0; j < sol.pareto_set.size(); ++j) {
      if (i == j) continue;
      const auto &a = sol.pareto_set[i], &b = sol.pareto_set[j];
      if (a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2] && a != b) {
        throw std::logic_error("solve_pareto_brute: dominated outcome in Pareto set");
      }
    }
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Textual formats
// ---------------------------------------------------------------------------

namespace {

std::string rat_str(const Rat& r) { return rat_num(r).str() + "/" + rat_den(r).str(); }

Rat parse_rat_tok(const std::string& s, int lineno) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseError(lineno, "expected rational, got '" + s + "'");
  }
}

void quad_to_text(const QuadForm& h, std::ostringstream& os) {
  os << "QUAD " << h.lin.size() << "\n";
  for (const auto& row : h.quad) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << rat_str(row[i]);
    os << "\n";
  }
  os << "LIN";
  for (const auto& c : h.lin) os << " " << rat_str(c);
  os << "\nCONST " << rat_str(h.constant) << "\n";
}

QuadForm quad_from_lines(std::istream& is, int& lineno) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError(lineno, "missing QUAD section");
  ++lineno;
  std::istringstream hs(line);
  std::string tag;
  long long n = -1;
  if (!(hs >> tag >> n) || tag != "QUAD" || n < 1) throw ParseError(lineno, "bad QUAD header");
  QuadForm h;
  h.quad.assign(n, std::vector<Rat>(n, Rat(0)));
  for (long long r = 0; r < n; ++r) {
    if (!std::getline(is, line)) throw ParseError(lineno, "missing QUAD row");
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    for (long long c = 0; c < n; ++c) {
      if (!(ls >> tok)) throw ParseError(lineno, "short QUAD row");
      h.quad[r][c] = parse_rat_tok(tok, lineno);
    }
  }
  if (!std::getline(is, line)) throw ParseError(lineno, "missing LIN record");
  ++lineno;
  {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok != "LIN") throw ParseError(lineno, "expected LIN record");
    while (ls >> tok) h.lin.push_back(parse_rat_tok(tok, lineno));
    if (static_cast<long long>(h.lin.size()) != n) throw ParseError(lineno, "LIN arity mismatch");
  }
  if (!std::getline(is, line)) throw ParseError(lineno, "missing CONST record");
  ++lineno;
  {
    std::istringstream ls(line);
    std::string tok, val;
    if (!(ls >> tok >> val) || tok != "CONST") throw ParseError(lineno, "expected CONST record");
    h.constant = parse_rat_tok(val, lineno);
  }
  return h;
}

void hpoly_to_text(const HPolytope& h, std::ostringstream& os, const std::string& tag) {
  os << tag << " " << h.dim << " " << h.rows.size() << "\n";
  for (const auto& r : h.rows) {
    for (const auto& c : r.coeffs) os << c << " ";
    os << r.bound << "\n";
  }
}

HPolytope hpoly_from_lines(std::istream& is, int& lineno, const std::string& tag) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError(lineno, "missing " + tag + " section");
  ++lineno;
  std::istringstream hs(line);
  std::string got;
  long long dim = -1, nrows = -1;
  if (!(hs >> got >> dim >> nrows) || got != tag || dim < 1 || nrows < 0) {
    throw ParseError(lineno, "bad " + tag + " header");
  }
  HPolytope h;
  h.dim = static_cast<int>(dim);
  for (long long r = 0; r < nrows; ++r) {
    if (!std::getline(is, line)) throw ParseError(lineno, "missing " + tag + " row");
    ++lineno;
    std::istringstream ls(line);
    std::vector<Int> vals;
    std::string tok;
    while (ls >> tok) vals.emplace_back(tok);
    if (vals.size() != static_cast<std::size_t>(dim) + 1) {
      throw ParseError(lineno, tag + " row arity mismatch");
    }
    LinearInequality row;
    row.coeffs.assign(vals.begin(), vals.end() - 1);
    row.bound = vals.back();
    h.rows.push_back(std::move(row));
  }
  return h;
}

}  // namespace

std::string to_text(const BilevelInstance& inst) {
  std::ostringstream os;
  os << "BILEVEL\n";
  os << "J " << inst.mu << " " << inst.nu << "\n";
  os << "K " << inst.K << " T " << inst.T << " M " << inst.M << "\n";
  hpoly_to_text(inst.W, os, "W");
  quad_to_text(inst.h, os);
  return os.str();
}

BilevelInstance parse_bilevel(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  if (!std::getline(is, line) || line != "BILEVEL") throw ParseError(1, "expected BILEVEL header");
  ++lineno;
  BilevelInstance inst;
  if (!std::getline(is, line)) throw ParseError(lineno, "missing J record");
  ++lineno;
  {
    std::istringstream ls(line);
    std::string tag, a, b;
    if (!(ls >> tag >> a >> b) || tag != "J") throw ParseError(lineno, "bad J record");
    inst.mu = Int(a);
    inst.nu = Int(b);
  }
  if (!std::getline(is, line)) throw ParseError(lineno, "missing K/T/M record");
  ++lineno;
  {
    std::istringstream ls(line);
    std::string tk, tt, tm, k, t, m;
    if (!(ls >> tk >> k >> tt >> t >> tm >> m) || tk != "K" || tt != "T" || tm != "M") {
      throw ParseError(lineno, "bad K/T/M record");
    }
    inst.K = Int(k);
    inst.T = Int(t);
    inst.M = Int(m);
  }
  inst.W = hpoly_from_lines(is, lineno, "W");
  inst.h = quad_from_lines(is, lineno);
  inst.validate();
  return inst;
}

std::string to_text(const ParetoInstance& inst) {
  std::ostringstream os;
  os << "PARETO " << (inst.parity_source ? 1 : 0) << "\n";
  hpoly_to_text(inst.domain, os, "D");
  os << "F1";
  for (const auto& c : inst.f1) os << " " << rat_str(c);
  os << "\nF2";
  for (const auto& c : inst.f2) os << " " << rat_str(c);
  os << "\n";
  quad_to_text(inst.f3, os);
  os << "G";
  for (const auto& c : inst.g) os << " " << rat_str(c);
  os << "\n";
  return os.str();
}

ParetoInstance parse_pareto(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  if (!std::getline(is, line)) throw ParseError(1, "expected PARETO header");
  ++lineno;
  ParetoInstance inst;
  {
    std::istringstream ls(line);
    std::string tag;
    int parity = 0;
    if (!(ls >> tag >> parity) || tag != "PARETO") throw ParseError(lineno, "bad PARETO header");
    inst.parity_source = parity != 0;
  }
  inst.domain = hpoly_from_lines(is, lineno, "D");
  auto read_linear = [&](const std::string& tag, std::vector<Rat>& out) {
    if (!std::getline(is, line)) throw ParseError(lineno, "missing " + tag);
    ++lineno;
    std::istringstream ls(line);
    std::string got, tok;
    if (!(ls >> got) || got != tag) throw ParseError(lineno, "expected " + tag);
    while (ls >> tok) out.push_back(parse_rat_tok(tok, lineno));
  };
  read_linear("F1", inst.f1);
  read_linear("F2", inst.f2);
  inst.f3 = quad_from_lines(is, lineno);
  read_linear("G", inst.g);
  return inst;
}

}  // namespace presred
