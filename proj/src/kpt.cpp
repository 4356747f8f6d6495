#include "presred/kpt.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace presred {

void PipInstance::validate() const {
  for (const auto& r : A) {
    if (r.size() != num_vars()) throw std::invalid_argument("PIP: ragged A");
  }
  if (F.size() != A.size() || f0.size() != A.size()) {
    throw std::invalid_argument("PIP: f must have one row per constraint");
  }
  for (const auto& r : F) {
    if (r.size() != num_params()) throw std::invalid_argument("PIP: ragged F");
  }
  if (const auto* radii = std::get_if<std::vector<Int>>(&domain)) {
    if (radii->size() != num_params()) {
      throw std::invalid_argument("PIP: box arity mismatch");
    }
    for (const auto& r : *radii) {
      if (r < 1) throw std::invalid_argument("PIP: box radii must be >= 1");
    }
  }
}

bool PipInstance::feasible_at(const std::vector<Int>& params, const BoundedBox& x_box) const {
  if (params.size() != num_params()) throw std::invalid_argument("PIP: parameter arity");
  if (x_box.ranges.size() != num_vars()) throw std::invalid_argument("PIP: x_box arity");
  std::vector<Rat> rhs;
  for (std::size_t r = 0; r < num_rows(); ++r) {
    Rat v = f0[r];
    for (std::size_t j = 0; j < num_params(); ++j) v += F[r][j] * Rat(params[j]);
    rhs.push_back(v);
  }
  std::vector<Int> x(num_vars());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = x_box.ranges[i].first;
  while (true) {
    bool ok = true;
    for (std::size_t r = 0; r < num_rows() && ok; ++r) {
      Int lhs = 0;
      for (std::size_t i = 0; i < x.size(); ++i) lhs += A[r][i] * x[i];
      if (Rat(lhs) > rhs[r]) ok = false;
    }
    if (ok) return true;
    std::size_t i = 0;
    for (; i < x.size(); ++i) {
      if (x[i] < x_box.ranges[i].second) {
        ++x[i];
        for (std::size_t j = 0; j < i; ++j) x[j] = x_box.ranges[j].first;
        break;
      }
    }
    if (i == x.size()) return false;
  }
}

FibonacciFamily fibonacci_family(int s) {
  if (s < 1 || s > 8) throw std::invalid_argument("fibonacci_family: s must be in [1, 8]");
  FibonacciFamily fam;
  fam.cfrac.a_terms.assign(s + 1, Int(1));
  fam.cfrac.a_terms[0] = 2;
  fam.cfrac.b_terms.assign(s, Int(1));
  const ConvergentChains ch = convergents(fam.cfrac);
  fam.q = ch.C.back().y1;
  fam.p = ch.C.back().y2;

  fam.Q.dim = 2;
  fam.Q.rows.push_back({{Int(0), Int(-1)}, Int(-2)});          // y2 >= 2
  fam.Q.rows.push_back({{Int(1), Int(0)}, fam.q});             // y1 <= q
  fam.Q.rows.push_back({{-fam.p, fam.q}, Int(0)});             // p y1 - q y2 >= 0

  // p x1 - q x2 <= p y1 - q y2; -(p x1 - q x2) <= 0; x2 <= y2 - 1; -x2 <= -1
  fam.pip.A = {{fam.p, -fam.q}, {-fam.p, fam.q}, {Int(0), Int(1)}, {Int(0), Int(-1)}};
  fam.pip.F = {{Rat(fam.p), Rat(-fam.q)}, {Rat(0), Rat(0)}, {Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
  fam.pip.f0 = {Rat(0), Rat(0), Rat(-1), Rat(-1)};
  fam.pip.domain = fam.Q;
  fam.pip.validate();
  return fam;
}

std::vector<LatticePoint2> infeasible_set(const FibonacciFamily& fam) {
  std::vector<LatticePoint2> out;
  for (const auto& y : lattice_points_2d(fam.Q)) {
    if (parallelogram_lattice_free(y, fam.p, fam.q)) out.push_back(y);
  }
  return out;
}

bool midpoint_free(const std::vector<LatticePoint2>& points) {
  std::vector<LatticePoint2> pts(points);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::set<std::pair<Int, Int>> index;
  for (const auto& p : pts) index.emplace(p.y1, p.y2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Int s1 = pts[i].y1 + pts[j].y1;
      Int s2 = pts[i].y2 + pts[j].y2;
      if (mod_euclid(s1, 2) != 0 || mod_euclid(s2, 2) != 0) continue;
      if (index.count({s1 / 2, s2 / 2})) return false;
    }
  }
  return true;
}

namespace {

// Integer-scales a rational constraint row a.x - f_row(params) <= 0.
void scaled_row(const std::vector<Int>& arow, const std::vector<Rat>& frow, const Rat& f0v,
                std::vector<Int>& a_out, std::vector<Rat>& f_out, Rat& f0_out) {
  Int lcm = 1;
  for (const auto& c : frow) lcm = lcm / int_gcd(lcm, rat_den(c)) * rat_den(c);
  lcm = lcm / int_gcd(lcm, rat_den(f0v)) * rat_den(f0v);
  a_out.clear();
  for (const auto& c : arow) a_out.push_back(c * lcm);
  f_out.clear();
  for (const auto& c : frow) f_out.push_back(c * Rat(lcm));
  f0_out = f0v * Rat(lcm);
}

}  // namespace

PipInstance flatten_params(const PipInstance& inst) {
  inst.validate();
  const auto* radii = std::get_if<std::vector<Int>>(&inst.domain);
  if (!radii) throw std::invalid_argument("flatten_params: needs a box domain");
  const std::size_t k = radii->size();
  const std::size_t n = inst.num_vars();
  PipInstance out;
  const std::size_t np = n + k;  // variables (x, y)
  // Original rows: A x - F y <= f0, with F columns turned into variables.
  for (std::size_t r = 0; r < inst.num_rows(); ++r) {
    std::vector<Int> a;
    std::vector<Rat> f;
    Rat f0v;
    // Scale so the y-columns become integral.
    std::vector<Rat> frow = inst.F[r];
    Int lcm = 1;
    for (const auto& c : frow) lcm = lcm / int_gcd(lcm, rat_den(c)) * rat_den(c);
    lcm = lcm / int_gcd(lcm, rat_den(inst.f0[r])) * rat_den(inst.f0[r]);
    std::vector<Int> row(np, 0);
    for (std::size_t i = 0; i < n; ++i) row[i] = inst.A[r][i] * lcm;
    for (std::size_t j = 0; j < k; ++j) {
      row[n + j] = -rat_num(frow[j]) * (lcm / rat_den(frow[j]));
    }
    out.A.push_back(std::move(row));
    out.F.push_back({Rat(0)});
    out.f0.push_back(inst.f0[r] * Rat(lcm));
  }
  // Mixed-radix constraint: y1 + y2 r1 + ... = y' (two inequalities).
  {
    std::vector<Int> row(np, 0);
    Int w = 1;
    for (std::size_t j = 0; j < k; ++j) {
      row[n + j] = w;
      w *= (*radii)[j];
    }
    out.A.push_back(row);
    out.F.push_back({Rat(1)});
    out.f0.push_back(Rat(0));
    for (auto& c : row) c = -c;
    out.A.push_back(row);
    out.F.push_back({Rat(-1)});
    out.f0.push_back(Rat(0));
  }
  // Digit bounds 0 <= y_j <= r_j - 1.
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Int> row(np, 0);
    row[n + j] = 1;
    out.A.push_back(row);
    out.F.push_back({Rat(0)});
    out.f0.push_back(Rat((*radii)[j] - 1));
    row[n + j] = -1;
    out.A.push_back(row);
    out.F.push_back({Rat(0)});
    out.f0.push_back(Rat(0));
  }
  Int prod = 1;
  for (const auto& r : *radii) prod *= r;
  out.domain = std::vector<Int>{prod};
  out.validate();
  return out;
}

PipInstance add_interval_split(const PipInstance& inst, const Int& n_range, const Int& m_range) {
  inst.validate();
  const auto* radii = std::get_if<std::vector<Int>>(&inst.domain);
  if (!radii || radii->size() != 1) {
    throw std::invalid_argument("add_interval_split: needs a one-parameter box domain");
  }
  if ((*radii)[0] != n_range) {
    throw std::invalid_argument("add_interval_split: domain must be [0, N)");
  }
  if (m_range < 1) throw std::invalid_argument("add_interval_split: M must be >= 1");
  const std::size_t n = inst.num_vars();
  const std::size_t np = n + 2;  // (x, y1, y2)
  PipInstance out;
  for (std::size_t r = 0; r < inst.num_rows(); ++r) {
    Int lcm = rat_den(inst.F[r][0]);
    lcm = lcm / int_gcd(lcm, rat_den(inst.f0[r])) * rat_den(inst.f0[r]);
    std::vector<Int> row(np, 0);
    for (std::size_t i = 0; i < n; ++i) row[i] = inst.A[r][i] * lcm;
    row[n + 1] = -rat_num(inst.F[r][0]) * (lcm / rat_den(inst.F[r][0]));  // y2 is the old param
    out.A.push_back(std::move(row));
    out.F.push_back({Rat(0)});
    out.f0.push_back(inst.f0[r] * Rat(lcm));
  }
  // N y1 + y2 = y'
  {
    std::vector<Int> row(np, 0);
    row[n] = n_range;
    row[n + 1] = 1;
    out.A.push_back(row);
    out.F.push_back({Rat(1)});
    out.f0.push_back(Rat(0));
    for (auto& c : row) c = -c;
    out.A.push_back(row);
    out.F.push_back({Rat(-1)});
    out.f0.push_back(Rat(0));
  }
  const std::vector<std::pair<Int, Int>> bounds = {{0, m_range - 1}, {0, n_range - 1}};
  for (int j = 0; j < 2; ++j) {
    std::vector<Int> row(np, 0);
    row[n + j] = 1;
    out.A.push_back(row);
    out.F.push_back({Rat(0)});
    out.f0.push_back(Rat(bounds[j].second));
    row[n + j] = -1;
    out.A.push_back(row);
    out.F.push_back({Rat(0)});
    out.f0.push_back(Rat(0));
  }
  out.domain = std::vector<Int>{m_range * n_range};
  out.validate();
  return out;
}

std::string to_text(const PipInstance& inst) {
  std::ostringstream os;
  os << "PIP " << inst.num_rows() << " " << inst.num_vars() << " " << inst.num_params() << "\n";
  for (const auto& r : inst.A) {
    os << "A";
    for (const auto& c : r) os << " " << c;
    os << "\n";
  }
  for (std::size_t r = 0; r < inst.num_rows(); ++r) {
    os << "F";
    for (const auto& c : inst.F[r]) os << " " << rat_num(c) << "/" << rat_den(c);
    os << " " << rat_num(inst.f0[r]) << "/" << rat_den(inst.f0[r]) << "\n";
  }
  if (const auto* radii = std::get_if<std::vector<Int>>(&inst.domain)) {
    os << "BOX";
    for (const auto& r : *radii) os << " " << r;
    os << "\n";
  } else {
    const auto& q = std::get<HPolytope>(inst.domain);
    os << "DOMAIN " << q.dim << " " << q.rows.size() << "\n";
    for (const auto& r : q.rows) {
      for (const auto& c : r.coeffs) os << c << " ";
      os << r.bound << "\n";
    }
  }
  return os.str();
}

PipInstance parse_pip(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  if (!std::getline(is, line)) throw ParseError(1, "empty PIP file");
  ++lineno;
  long long m = -1, n = -1, k = -1;
  {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag >> m >> n >> k) || tag != "PIP" || m < 0 || n < 1 || k < 1) {
      throw ParseError(lineno, "expected PIP header");
    }
  }
  PipInstance inst;
  auto parse_rat_tok = [](const std::string& s, int ln) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rat(Int(s));
      return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw ParseError(ln, "expected rational, got '" + s + "'");
    }
  };
  for (long long r = 0; r < m; ++r) {
    if (!std::getline(is, line)) throw ParseError(lineno, "missing A row");
    ++lineno;
    std::istringstream ls(line);
    std::string tag, tok;
    if (!(ls >> tag) || tag != "A") throw ParseError(lineno, "expected A row");
    std::vector<Int> row;
    while (ls >> tok) row.emplace_back(tok);
    if (row.size() != static_cast<std::size_t>(n)) throw ParseError(lineno, "A arity mismatch");
    inst.A.push_back(std::move(row));
  }
  for (long long r = 0; r < m; ++r) {
    if (!std::getline(is, line)) throw ParseError(lineno, "missing F row");
    ++lineno;
    std::istringstream ls(line);
    std::string tag, tok;
    if (!(ls >> tag) || tag != "F") throw ParseError(lineno, "expected F row");
    std::vector<Rat> row;
    while (ls >> tok) row.push_back(parse_rat_tok(tok, lineno));
    if (row.size() != static_cast<std::size_t>(k) + 1) throw ParseError(lineno, "F arity mismatch");
    inst.f0.push_back(row.back());
    row.pop_back();
    inst.F.push_back(std::move(row));
  }
  if (!std::getline(is, line)) throw ParseError(lineno, "missing domain record");
  ++lineno;
  {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) throw ParseError(lineno, "missing domain record");
    if (tag == "BOX") {
      std::vector<Int> radii;
      std::string tok;
      while (ls >> tok) radii.emplace_back(tok);
      if (radii.size() != static_cast<std::size_t>(k)) {
        throw ParseError(lineno, "BOX arity mismatch");
      }
      inst.domain = std::move(radii);
    } else if (tag == "DOMAIN") {
      long long dim = -1, nrows = -1;
      if (!(ls >> dim >> nrows) || dim != k || nrows < 0) {
        throw ParseError(lineno, "bad DOMAIN header");
      }
      HPolytope h;
      h.dim = static_cast<int>(dim);
      for (long long r = 0; r < nrows; ++r) {
        if (!std::getline(is, line)) throw ParseError(lineno, "missing DOMAIN row");
        ++lineno;
        std::istringstream rs(line);
        std::vector<Int> vals;
        std::string tok;
        while (rs >> tok) vals.emplace_back(tok);
        if (vals.size() != static_cast<std::size_t>(dim) + 1) {
          throw ParseError(lineno, "DOMAIN row arity mismatch");
        }
        LinearInequality row;
        row.coeffs.assign(vals.begin(), vals.end() - 1);
        row.bound = vals.back();
        h.rows.push_back(std::move(row));
      }
      inst.domain = std::move(h);
    } else {
      throw ParseError(lineno, "expected BOX or DOMAIN record");
    }
  }
  inst.validate();
  return inst;
}

}  // namespace presred
