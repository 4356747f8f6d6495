#include "presred/satred.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace presred {

void Cnf3::validate() const {
  if (num_vars < 0) throw std::invalid_argument("CNF: negative variable count");
  for (const auto& cl : clauses) {
    for (int lit : cl) {
      if (lit == 0 || std::abs(lit) > num_vars) {
        throw std::invalid_argument("CNF: literal out of range");
      }
    }
  }
}

bool Cnf3::satisfied_by(unsigned long long bits) const {
  for (const auto& cl : clauses) {
    bool sat = false;
    for (int lit : cl) {
      bool v = (bits >> (std::abs(lit) - 1)) & 1;
      if (lit < 0) v = !v;
      if (v) { sat = true; break; }
    }
    if (!sat) return false;
  }
  return true;
}

void QbfInstance::validate() const {
  matrix.validate();
  if (blocks.empty()) throw std::invalid_argument("QBF: needs at least one block");
  if (blocks.back().first != Quantifier::Exists) {
    throw std::invalid_argument("QBF: innermost block must be existential");
  }
  std::vector<bool> seen(matrix.num_vars + 1, false);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i + 1 < blocks.size() && blocks[i].first == blocks[i + 1].first) {
      throw std::invalid_argument("QBF: blocks must alternate");
    }
    if (blocks[i].second.empty()) throw std::invalid_argument("QBF: empty block");
    for (int v : blocks[i].second) {
      if (v < 1 || v > matrix.num_vars || seen[v]) {
        throw std::invalid_argument("QBF: bad or repeated block variable");
      }
      seen[v] = true;
    }
  }
  for (int v = 1; v <= matrix.num_vars; ++v) {
    if (!seen[v]) throw std::invalid_argument("QBF: unquantified variable");
  }
}

Int count_sat(const Cnf3& f) {
  f.validate();
  if (f.num_vars > kMaxCountVars) {
    throw ScaleError("count_sat: more than 24 variables");
  }
  Int n = 0;
  const unsigned long long total = 1ULL << f.num_vars;
  for (unsigned long long bits = 0; bits < total; ++bits) {
    if (f.satisfied_by(bits)) ++n;
  }
  return n;
}

namespace {

bool qbf_rec(const QbfInstance& f, std::size_t level, unsigned long long bits) {
  if (level == f.blocks.size()) return f.matrix.satisfied_by(bits);
  const auto& [q, vars] = f.blocks[level];
  const std::size_t n = vars.size();
  for (unsigned long long sub = 0; sub < (1ULL << n); ++sub) {
    unsigned long long b = bits;
    for (std::size_t i = 0; i < n; ++i) {
      if ((sub >> i) & 1) b |= 1ULL << (vars[i] - 1);
    }
    bool r = qbf_rec(f, level + 1, b);
    if (q == Quantifier::ForAll && !r) return false;
    if (q == Quantifier::Exists && r) return true;
  }
  return q == Quantifier::ForAll;
}

}  // namespace

bool qbf_truth(const QbfInstance& f) {
  f.validate();
  if (f.matrix.num_vars > kMaxCountVars) {
    throw ScaleError("qbf_truth: more than 24 variables");
  }
  return qbf_rec(f, 0, 0);
}

std::vector<bool> ApCoverDecoder::decode(const Int& z) const {
  std::vector<bool> out;
  out.reserve(primes.size());
  for (const Int& p : primes) out.push_back(mod_euclid(z, p) == 1);
  return out;
}

Int ApCoverDecoder::encode(const std::vector<bool>& assignment) const {
  std::vector<std::pair<Int, Int>> residues;
  if (parity_trick) residues.emplace_back(1, 2);
  for (std::size_t j = 0; j < primes.size(); ++j) {
    residues.emplace_back(assignment[j] ? 1 : 0, primes[j]);
  }
  return crt_solve(residues);
}

namespace {

// Residue class {z in [0, hi] : z == r (mod m)} as an AP triple.
APTriple residue_ap(const Int& r, const Int& m, const Int& hi) {
  return {r, floor_div(hi - r, m), m};
}

// Falsifying residue of a literal: a positive literal fails when its variable
// is false (residue 0), a negated one when it is true (residue 1).
// Returns false for a tautological clause (both polarities of one variable).
bool clause_falsifying_residues(const std::array<int, 3>& clause,
                                std::map<int, Int>* residues) {
  for (int lit : clause) {
    Int r = lit > 0 ? 0 : 1;
    int v = std::abs(lit);
    auto it = residues->find(v);
    if (it == residues->end()) {
      residues->emplace(v, r);
    } else if (it->second != r) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::pair<APCoverInstance, ApCoverDecoder> reduce_3sat_to_apcover(const Cnf3& f,
                                                                  bool parity_trick) {
  f.validate();
  if (f.num_vars > kMaxCountVars) {
    throw ScaleError("reduce_3sat_to_apcover: more than 24 variables");
  }
  ApCoverDecoder dec;
  dec.parity_trick = parity_trick;
  dec.primes = first_primes(f.num_vars, parity_trick ? 1 : 0);

  Int prod = 1;
  for (const Int& p : dec.primes) prod *= p;
  if (parity_trick) prod *= 2;

  APCoverInstance inst;
  inst.mu = 0;
  inst.nu = prod - 1;

  // Exclude residues 2..p-1 for each prime.
  for (std::size_t j = 0; j < dec.primes.size(); ++j) {
    const Int& p = dec.primes[j];
    for (Int t = 2; t < p; ++t) {
      inst.triples.push_back(residue_ap(t, p, inst.nu));
    }
  }
  if (parity_trick) {
    inst.triples.push_back(residue_ap(0, 2, inst.nu));
  }
  // One progression per clause: the CRT class of its falsifying residues.
  for (const auto& cl : f.clauses) {
    std::map<int, Int> residues;
    if (!clause_falsifying_residues(cl, &residues)) continue;
    std::vector<std::pair<Int, Int>> crt;
    for (const auto& [v, r] : residues) crt.emplace_back(r, dec.primes[v - 1]);
    Int mod = 1;
    for (const auto& [r, m] : crt) mod *= m;
    inst.triples.push_back(residue_ap(crt_solve(crt), mod, inst.nu));
  }
  return {inst, dec};
}

MAPCoverInstance reduce_qbf_to_mapcover(const QbfInstance& f) {
  f.validate();
  if (f.matrix.num_vars > 20) {
    throw ScaleError("reduce_qbf_to_mapcover: more than 20 variables");
  }
  const std::size_t m = f.num_blocks();
  std::vector<Int> all_primes = first_primes(f.matrix.num_vars);

  // prime_of[v] is the prime of CNF variable v; blocks take primes in order.
  std::vector<Int> prime_of(f.matrix.num_vars + 1, 0);
  std::vector<std::vector<Int>> block_primes(m);
  std::vector<int> block_of(f.matrix.num_vars + 1, -1);
  {
    std::size_t next = 0;
    for (std::size_t t = 0; t < m; ++t) {
      for (int v : f.blocks[t].second) {
        prime_of[v] = all_primes[next++];
        block_primes[t].push_back(prime_of[v]);
        block_of[v] = static_cast<int>(t);
      }
    }
  }

  MAPCoverInstance inst;
  inst.quantifiers.reserve(m);
  for (const auto& [q, vars] : f.blocks) inst.quantifiers.push_back(q);

  std::vector<Int> prods(m, 1);
  for (std::size_t t = 0; t < m; ++t) {
    for (const Int& p : block_primes[t]) prods[t] *= p;
    inst.intervals.emplace_back(0, prods[t] - 1);
  }

  // tau_t == 1 mod its own block product and == 0 mod every other one.
  for (std::size_t t = 0; t < m; ++t) {
    std::vector<std::pair<Int, Int>> crt;
    for (std::size_t s = 0; s < m; ++s) crt.emplace_back(s == t ? 1 : 0, prods[s]);
    inst.taus.push_back(crt_solve(crt));
  }

  // The combination ranges over [0, cmax]; its progressions must reach cmax.
  Int cmax = 0;
  for (std::size_t t = 0; t < m; ++t) cmax += inst.taus[t] * (prods[t] - 1);

  inst.groups.resize(m);
  for (std::size_t t = 0; t + 1 < m; ++t) {
    for (const Int& p : block_primes[t]) {
      for (Int r = 2; r < p; ++r) {
        inst.groups[t].push_back({r, floor_div(prods[t] - 1 - r, p), p});
      }
    }
  }
  // Inner-block residue restrictions ride on the combination.
  for (const Int& p : block_primes[m - 1]) {
    for (Int r = 2; r < p; ++r) {
      inst.groups[m - 1].push_back({r, floor_div(cmax - r, p), p});
    }
  }
  // Clause progressions: CRT over the falsifying residues, applied to the
  // combination (which is congruent to each z_t mod that block's product).
  for (const auto& cl : f.matrix.clauses) {
    std::map<int, Int> residues;
    if (!clause_falsifying_residues(cl, &residues)) continue;
    std::vector<std::pair<Int, Int>> crt;
    for (const auto& [v, r] : residues) crt.emplace_back(r, prime_of[v]);
    Int mod = 1;
    for (const auto& [r, mm] : crt) mod *= mm;
    Int g = crt_solve(crt);
    inst.groups[m - 1].push_back({g, floor_div(cmax - g, mod), mod});
  }
  inst.validate();
  return inst;
}

Cnf3 parse_dimacs(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Cnf3 f;
  bool have_header = false;
  int lineno = 0;
  std::vector<int> pending;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string kind;
      long long nv = -1, nc = -1;
      if (!(ls >> kind >> nv >> nc) || kind != "cnf" || nv < 0) {
        throw ParseError(lineno, "bad problem line");
      }
      f.num_vars = static_cast<int>(nv);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "clause before problem line");
    std::istringstream again(line);
    long long lit;
    while (again >> lit) {
      if (lit == 0) {
        if (pending.size() != 3) {
          throw ParseError(lineno, "expected exactly 3 literals per clause");
        }
        f.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
      } else {
        pending.push_back(static_cast<int>(lit));
      }
    }
  }
  if (!have_header) throw ParseError(1, "missing problem line");
  if (!pending.empty()) throw ParseError(lineno, "unterminated clause");
  f.validate();
  return f;
}

QbfInstance parse_qdimacs(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  QbfInstance f;
  bool have_header = false;
  int lineno = 0;
  std::vector<int> pending;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string kind;
      long long nv = -1, nc = -1;
      if (!(ls >> kind >> nv >> nc) || kind != "cnf" || nv < 0) {
        throw ParseError(lineno, "bad problem line");
      }
      f.matrix.num_vars = static_cast<int>(nv);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "record before problem line");
    if (tok == "a" || tok == "e") {
      std::vector<int> vars;
      long long v;
      while (ls >> v && v != 0) vars.push_back(static_cast<int>(v));
      f.blocks.emplace_back(tok == "a" ? Quantifier::ForAll : Quantifier::Exists,
                            std::move(vars));
      continue;
    }
    std::istringstream again(line);
    long long lit;
    while (again >> lit) {
      if (lit == 0) {
        if (pending.size() != 3) {
          throw ParseError(lineno, "expected exactly 3 literals per clause");
        }
        f.matrix.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
      } else {
        pending.push_back(static_cast<int>(lit));
      }
    }
  }
  if (!pending.empty()) throw ParseError(lineno, "unterminated clause");
  f.validate();
  return f;
}

std::string to_dimacs(const Cnf3& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for (const auto& cl : f.clauses) {
    os << cl[0] << " " << cl[1] << " " << cl[2] << " 0\n";
  }
  return os.str();
}

}  // namespace presred
