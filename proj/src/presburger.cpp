#include "presred/presburger.hpp"

#include <algorithm>
#include <sstream>

namespace presred {

bool LinearInequality::holds(const std::vector<Int>& assignment) const {
  Int lhs = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) lhs += coeffs[i] * assignment[i];
  }
  return lhs <= bound;
}

BoolTree BoolTree::leaf(LinearInequality r) {
  BoolTree t;
  t.kind = Kind::Leaf;
  t.row = std::move(r);
  return t;
}

BoolTree BoolTree::make_and(std::vector<BoolTree> ch) {
  BoolTree t;
  t.kind = Kind::And;
  t.children = std::move(ch);
  return t;
}

BoolTree BoolTree::make_or(std::vector<BoolTree> ch) {
  BoolTree t;
  t.kind = Kind::Or;
  t.children = std::move(ch);
  return t;
}

bool BoolTree::eval(const std::vector<Int>& assignment) const {
  switch (kind) {
    case Kind::Leaf:
      return row.holds(assignment);
    case Kind::And:
      for (const auto& c : children) {
        if (!c.eval(assignment)) return false;
      }
      return true;
    case Kind::Or:
      for (const auto& c : children) {
        if (c.eval(assignment)) return true;
      }
      return false;
  }
  return false;
}

int BoolTree::row_count() const {
  if (kind == Kind::Leaf) return 1;
  int n = 0;
  for (const auto& c : children) n += c.row_count();
  return n;
}

void ShortSentence::validate() const {
  int total = 0;
  for (const auto& b : prefix) {
    if (b.size < 1) throw std::invalid_argument("sentence: empty quantifier block");
    total += b.size;
  }
  if (total != num_vars) throw std::invalid_argument("sentence: block sizes must sum to num_vars");
}

bool eval_expr(const BoolTree& tree, const std::vector<Int>& assignment) {
  return tree.eval(assignment);
}

namespace {

bool bounded_rec(const ShortSentence& s, const BoundedBox& box, std::size_t block,
                 std::size_t var0, std::vector<Int>& assignment) {
  if (block == s.prefix.size()) return s.matrix.eval(assignment);
  const auto& blk = s.prefix[block];
  const bool universal = blk.quant == Quantifier::ForAll;
  const std::size_t var_end = var0 + static_cast<std::size_t>(blk.size);

  // Odometer over the block's ranges.
  for (std::size_t i = var0; i < var_end; ++i) assignment[i] = box.ranges[i].first;
  while (true) {
    bool sub = bounded_rec(s, box, block + 1, var_end, assignment);
    if (universal && !sub) return false;
    if (!universal && sub) return true;
    std::size_t i = var0;
    for (; i < var_end; ++i) {
      if (assignment[i] < box.ranges[i].second) {
        ++assignment[i];
        for (std::size_t j = var0; j < i; ++j) assignment[j] = box.ranges[j].first;
        break;
      }
    }
    if (i == var_end) break;
  }
  return universal;
}

}  // namespace

bool decide_bounded(const ShortSentence& s, const BoundedBox& box) {
  s.validate();
  if (box.ranges.size() != static_cast<std::size_t>(s.num_vars)) {
    throw std::invalid_argument("decide_bounded: box arity mismatch");
  }
  std::size_t var0 = 0;
  for (const auto& blk : s.prefix) {
    Int volume = 1;
    for (int i = 0; i < blk.size; ++i) {
      const auto& [lo, hi] = box.ranges[var0 + i];
      if (lo > hi) throw std::invalid_argument("decide_bounded: empty range");
      volume *= hi - lo + 1;
    }
    if (volume > scan_limit()) {
      throw ScaleError("decide_bounded: block volume exceeds the scan guard");
    }
    var0 += blk.size;
  }
  std::vector<Int> assignment(s.num_vars, 0);
  return bounded_rec(s, box, 0, 0, assignment);
}

// ---------------------------------------------------------------------------
// Sentence builders
// ---------------------------------------------------------------------------

namespace {

// A linear expression over the sentence variables plus a constant.
struct LinExpr {
  std::vector<std::pair<int, Int>> terms;  // (var, coeff)
  Int constant = 0;
};

LinearInequality make_row(int num_vars, const std::vector<std::pair<int, Int>>& terms,
                          const Int& bound) {
  LinearInequality r;
  r.coeffs.assign(num_vars, 0);
  for (const auto& [v, c] : terms) r.coeffs[v] += c;
  r.bound = bound;
  return r;
}

// expr' = expr + shift is NOT in the encoded union: either it misses every
// chain residue class (mod row pair), or y is outside the chain region, or
// the parallelogram P_y has the witness x.
BoolTree not_in_delta(int num_vars, const Encoding& enc, const Int& shift, const LinExpr& expr,
                      int ya, int xa) {
  const Int C = expr.constant + shift;
  const Int &M = enc.M, &p = enc.p, &q = enc.q, &g1 = enc.g1;
  const int y1 = ya, y2 = ya + 1, x1 = xa, x2 = xa + 1;

  auto with_expr = [&](Int ecoef, std::vector<std::pair<int, Int>> extra) {
    for (const auto& [v, c] : expr.terms) extra.emplace_back(v, ecoef * c);
    return extra;
  };

  std::vector<BoolTree> mod_pair;
  mod_pair.push_back(BoolTree::leaf(
      make_row(num_vars, with_expr(-1, {{y2, 1}, {x1, M}}), C - 1)));
  mod_pair.push_back(BoolTree::leaf(
      make_row(num_vars, with_expr(1, {{y2, -1}, {x1, -M}}), M - 1 - C)));

  std::vector<BoolTree> pyx;
  pyx.push_back(BoolTree::leaf(
      make_row(num_vars, {{y1, -p}, {y2, q}, {x1, p}, {x2, -q}}, 0)));  // v.x <= v.y
  pyx.push_back(BoolTree::leaf(make_row(num_vars, {{x1, -p}, {x2, q}}, 0)));  // 0 <= v.x
  pyx.push_back(BoolTree::leaf(make_row(num_vars, {{y2, -1}, {x2, 1}}, -1)));
  pyx.push_back(BoolTree::leaf(make_row(num_vars, {{x2, -1}}, -1)));

  std::vector<BoolTree> alts;
  alts.push_back(BoolTree::make_and(std::move(mod_pair)));
  alts.push_back(BoolTree::leaf(make_row(num_vars, {{y1, p}, {y2, -q}}, -1)));  // v.y <= -1
  alts.push_back(BoolTree::leaf(make_row(num_vars, {{y2, 1}}, g1 - 1)));
  alts.push_back(BoolTree::make_and(std::move(pyx)));
  return BoolTree::make_or(std::move(alts));
}

// expr' = expr + shift IS in the encoded union: there is a chain point w
// (characterized by cone position and an integer-point-free parallelogram,
// the De Morgan dual of the block above) congruent to expr' mod M.
BoolTree in_delta(int num_vars, const Encoding& enc, const Int& shift, const LinExpr& expr,
                  int wa, int ua) {
  const Int C = expr.constant + shift;
  const Int &M = enc.M, &p = enc.p, &q = enc.q, &g1 = enc.g1;
  const int w1 = wa, w2 = wa + 1, u1 = ua, u2 = ua + 1;

  auto with_expr = [&](Int ecoef, std::vector<std::pair<int, Int>> extra) {
    for (const auto& [v, c] : expr.terms) extra.emplace_back(v, ecoef * c);
    return extra;
  };

  std::vector<BoolTree> mod_pair;  // expr' - w2 - M u1 <= 0  or  >= M
  mod_pair.push_back(BoolTree::leaf(
      make_row(num_vars, with_expr(1, {{w2, -1}, {u1, -M}}), -C)));
  mod_pair.push_back(BoolTree::leaf(
      make_row(num_vars, with_expr(-1, {{w2, 1}, {u1, M}}), C - M)));

  std::vector<BoolTree> empty_py;  // u escapes the parallelogram P_w
  empty_py.push_back(BoolTree::leaf(
      make_row(num_vars, {{w1, p}, {w2, -q}, {u1, -p}, {u2, q}}, -1)));  // v.u >= v.w + 1
  empty_py.push_back(BoolTree::leaf(make_row(num_vars, {{u1, p}, {u2, -q}}, -1)));  // v.u <= -1
  empty_py.push_back(BoolTree::leaf(make_row(num_vars, {{w2, 1}, {u2, -1}}, 0)));   // u2 >= w2
  empty_py.push_back(BoolTree::leaf(make_row(num_vars, {{u2, 1}}, 0)));             // u2 <= 0

  std::vector<BoolTree> parts;
  parts.push_back(BoolTree::make_or(std::move(mod_pair)));
  parts.push_back(BoolTree::leaf(make_row(num_vars, {{w1, -p}, {w2, q}}, 0)));  // v.w >= 0
  parts.push_back(BoolTree::leaf(make_row(num_vars, {{w2, -1}}, -g1)));
  parts.push_back(BoolTree::make_or(std::move(empty_py)));
  return BoolTree::make_and(std::move(parts));
}

int level_var(std::size_t t) { return t == 0 ? 0 : 4 * static_cast<int>(t) - 3; }
int pair_a(std::size_t t) { return 4 * static_cast<int>(t) + 1; }
int pair_b(std::size_t t) { return 4 * static_cast<int>(t) + 3; }

ShortSentence build_merged(const MergedSentenceMeta& meta) {
  const MAPCoverInstance& inst = meta.source;
  const std::size_t m = inst.m();
  ShortSentence s;
  s.num_vars = 4 * static_cast<int>(m) + 1;

  s.prefix.push_back({inst.quantifiers[0], 1});
  s.prefix.push_back({inst.quantifiers.size() > 1 ? inst.quantifiers[1]
                                                  : Quantifier::ForAll,
                      2});
  for (std::size_t j = 2; j <= m; ++j) {
    s.prefix.push_back({inst.quantifiers[j % 2 == 0 ? 0 : 1], 4});
  }
  s.prefix.push_back({Quantifier::Exists, 2});
  // Block j's quantifier alternates from block 0; rebuild cleanly:
  for (std::size_t j = 0; j < s.prefix.size(); ++j) {
    s.prefix[j].quant = (j % 2 == 0) ? inst.quantifiers[0]
                                     : (inst.quantifiers[0] == Quantifier::ForAll
                                            ? Quantifier::Exists
                                            : Quantifier::ForAll);
  }

  // Assemble bottom-up: level m-1 tests the tau-combination, outer levels
  // restrict their own variable and chain onto the rest.
  LinExpr comb;
  for (std::size_t t = 0; t < m; ++t) comb.terms.emplace_back(level_var(t), inst.taus[t]);

  const auto& [mu_last, nu_last] = inst.intervals[m - 1];
  std::vector<BoolTree> inner;
  inner.push_back(BoolTree::leaf(make_row(s.num_vars, {{level_var(m - 1), -1}}, -mu_last)));
  inner.push_back(BoolTree::leaf(make_row(s.num_vars, {{level_var(m - 1), 1}}, nu_last)));
  inner.push_back(not_in_delta(s.num_vars, meta.group_encodings[m - 1], meta.shifts[m - 1],
                               comb, pair_a(m - 1), pair_b(m - 1)));
  BoolTree tree = BoolTree::make_and(std::move(inner));

  for (std::size_t t = m - 1; t-- > 0;) {
    const auto& [mu, nu] = inst.intervals[t];
    LinExpr self;
    self.terms.emplace_back(level_var(t), 1);
    if (inst.quantifiers[t] == Quantifier::Exists) {
      std::vector<BoolTree> parts;
      parts.push_back(BoolTree::leaf(make_row(s.num_vars, {{level_var(t), -1}}, -mu)));
      parts.push_back(BoolTree::leaf(make_row(s.num_vars, {{level_var(t), 1}}, nu)));
      parts.push_back(not_in_delta(s.num_vars, meta.group_encodings[t], meta.shifts[t], self,
                                   pair_a(t), pair_b(t)));
      parts.push_back(std::move(tree));
      tree = BoolTree::make_and(std::move(parts));
    } else {
      std::vector<BoolTree> parts;
      parts.push_back(BoolTree::leaf(make_row(s.num_vars, {{level_var(t), 1}}, mu - 1)));
      parts.push_back(BoolTree::leaf(make_row(s.num_vars, {{level_var(t), -1}}, -nu - 1)));
      parts.push_back(in_delta(s.num_vars, meta.group_encodings[t], meta.shifts[t], self,
                               pair_a(t), pair_b(t)));
      parts.push_back(std::move(tree));
      tree = BoolTree::make_or(std::move(parts));
    }
  }
  s.matrix = std::move(tree);
  s.encm = std::make_shared<MergedSentenceMeta>(meta);
  s.validate();
  return s;
}

}  // namespace

MergedSentenceMeta merged_meta_from_instance(const MAPCoverInstance& inst) {
  inst.validate();
  MergedSentenceMeta meta;
  meta.source = inst;
  const std::size_t m = inst.m();
  for (std::size_t t = 0; t < m; ++t) {
    APCoverInstance raw;
    if (t + 1 < m) {
      raw.mu = inst.intervals[t].first;
      raw.nu = inst.intervals[t].second;
    } else {
      // The tau-combination's exact range.
      Int cmin = 0, cmax = 0;
      for (std::size_t u = 0; u < m; ++u) {
        Int a = inst.taus[u] * inst.intervals[u].first;
        Int b = inst.taus[u] * inst.intervals[u].second;
        cmin += a < b ? a : b;
        cmax += a < b ? b : a;
      }
      raw.mu = cmin;
      raw.nu = cmax;
    }
    raw.triples = inst.groups[t];
    auto [norm, shift] = normalize(raw);
    meta.group_encodings.push_back(build_encoding(norm));
    meta.shifts.push_back(shift);
  }
  return meta;
}

ShortSentence build_sentence3(const Encoding& enc) {
  ShortSentence s;
  s.num_vars = 5;
  s.prefix = {{Quantifier::Exists, 1}, {Quantifier::ForAll, 2}, {Quantifier::Exists, 2}};
  LinExpr self;
  self.terms.emplace_back(0, 1);
  std::vector<BoolTree> parts;
  parts.push_back(BoolTree::leaf(make_row(5, {{0, -1}}, -enc.source.mu)));
  parts.push_back(BoolTree::leaf(make_row(5, {{0, 1}}, enc.source.nu)));
  parts.push_back(not_in_delta(5, enc, 0, self, 1, 3));
  s.matrix = BoolTree::make_and(std::move(parts));
  s.enc3 = std::make_shared<Encoding>(enc);
  s.validate();
  return s;
}

ShortSentence build_sentence_m(const MAPCoverInstance& inst) {
  return build_merged(merged_meta_from_instance(inst));
}

// ---------------------------------------------------------------------------
// Certified evaluation
// ---------------------------------------------------------------------------

namespace {

struct GroupResidues {
  std::vector<std::vector<Int>> residues;  // sorted, per group

  bool covered(const MergedSentenceMeta& meta, std::size_t t, const Int& value) const {
    const Encoding& enc = meta.group_encodings[t];
    Int r = mod_euclid(value + meta.shifts[t], enc.M);
    return std::binary_search(residues[t].begin(), residues[t].end(), r);
  }
};

bool certified_rec(const MergedSentenceMeta& meta, const GroupResidues& res, std::size_t t,
                   const Int& csum) {
  const auto& inst = meta.source;
  const std::size_t last = inst.m() - 1;
  const auto& [mu, nu] = inst.intervals[t];
  if (t == last) {
    for (Int z = mu; z <= nu; ++z) {
      if (!res.covered(meta, last, csum + inst.taus[last] * z)) return true;
    }
    return false;
  }
  const bool universal = inst.quantifiers[t] == Quantifier::ForAll;
  for (Int z = mu; z <= nu; ++z) {
    if (res.covered(meta, t, z)) continue;
    bool sub = certified_rec(meta, res, t + 1, csum + inst.taus[t] * z);
    if (universal && !sub) return false;
    if (!universal && sub) return true;
  }
  return universal;
}

void guard_certified_scale(const MAPCoverInstance& inst) {
  Int product = 1;
  for (const auto& [mu, nu] : inst.intervals) {
    product *= nu - mu + 1;
    if (product > scan_limit()) {
      throw ScaleError("certified evaluation: interval product exceeds the scan guard");
    }
  }
}

}  // namespace

bool decide_certified(const ShortSentence& s) {
  if (s.enc3) {
    const Encoding& enc = *s.enc3;
    if (enc.source.interval_size() > scan_limit()) {
      throw ScaleError("decide_certified: interval exceeds the scan guard");
    }
    const auto res = enc.delta_residues();
    for (Int z = enc.source.mu; z <= enc.source.nu; ++z) {
      if (!std::binary_search(res.begin(), res.end(), mod_euclid(z, enc.M))) return true;
    }
    return false;
  }
  if (s.encm) {
    const auto& meta = *s.encm;
    guard_certified_scale(meta.source);
    GroupResidues res;
    for (const auto& enc : meta.group_encodings) res.residues.push_back(enc.delta_residues());
    return certified_rec(meta, res, 0, 0);
  }
  throw std::invalid_argument("decide_certified: sentence carries no encoding metadata");
}

Int count_certified(const ShortSentence& s) {
  if (!s.enc3) {
    throw std::invalid_argument("count_certified: sentence carries no 3-quantifier metadata");
  }
  const Encoding& enc = *s.enc3;
  if (enc.source.interval_size() > scan_limit()) {
    throw ScaleError("count_certified: interval exceeds the scan guard");
  }
  const auto res = enc.delta_residues();
  Int n = 0;
  for (Int z = enc.source.mu; z <= enc.source.nu; ++z) {
    if (!std::binary_search(res.begin(), res.end(), mod_euclid(z, enc.M))) ++n;
  }
  return n;
}

ShortSentence negate_sentence(const ShortSentence& s) {
  ShortSentence out;
  out.num_vars = s.num_vars;
  for (const auto& b : s.prefix) {
    out.prefix.push_back(
        {b.quant == Quantifier::ForAll ? Quantifier::Exists : Quantifier::ForAll, b.size});
  }
  struct Negate {
    BoolTree operator()(const BoolTree& t) const {
      switch (t.kind) {
        case BoolTree::Kind::Leaf: {
          LinearInequality r;
          r.coeffs.reserve(t.row.coeffs.size());
          for (const Int& c : t.row.coeffs) r.coeffs.push_back(-c);
          r.bound = -t.row.bound - 1;
          return BoolTree::leaf(std::move(r));
        }
        case BoolTree::Kind::And:
        case BoolTree::Kind::Or: {
          std::vector<BoolTree> ch;
          ch.reserve(t.children.size());
          for (const auto& c : t.children) ch.push_back((*this)(c));
          return t.kind == BoolTree::Kind::And ? BoolTree::make_or(std::move(ch))
                                               : BoolTree::make_and(std::move(ch));
        }
      }
      return {};
    }
  };
  out.matrix = Negate{}(s.matrix);
  return out;
}

// ---------------------------------------------------------------------------
// Textual format
// ---------------------------------------------------------------------------

namespace {

void tree_to_text(const BoolTree& t, std::ostream& os) {
  switch (t.kind) {
    case BoolTree::Kind::Leaf:
      os << "(LE";
      for (const Int& c : t.row.coeffs) os << " " << c;
      os << " " << t.row.bound << ")";
      return;
    case BoolTree::Kind::And:
    case BoolTree::Kind::Or:
      os << (t.kind == BoolTree::Kind::And ? "(AND" : "(OR");
      for (const auto& c : t.children) {
        os << " ";
        tree_to_text(c, os);
      }
      os << ")";
      return;
  }
}

struct TreeParser {
  std::vector<std::string> toks;
  std::size_t pos = 0;
  int num_vars;

  static std::vector<std::string> lex(const std::string& s, int lineno) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == '(' || c == ')') {
        if (!cur.empty()) { out.push_back(cur); cur.clear(); }
        out.push_back(std::string(1, c));
      } else if (isspace(static_cast<unsigned char>(c))) {
        if (!cur.empty()) { out.push_back(cur); cur.clear(); }
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(cur);
    if (out.empty()) throw ParseError(lineno, "empty tree");
    return out;
  }

  const std::string& next(int lineno) {
    if (pos >= toks.size()) throw ParseError(lineno, "unexpected end of tree");
    return toks[pos++];
  }

  BoolTree parse(int lineno) {
    if (next(lineno) != "(") throw ParseError(lineno, "expected '('");
    const std::string op = next(lineno);
    if (op == "LE") {
      LinearInequality r;
      std::vector<Int> nums;
      while (pos < toks.size() && toks[pos] != ")") nums.emplace_back(next(lineno));
      next(lineno);  // ')'
      if (nums.size() != static_cast<std::size_t>(num_vars) + 1) {
        throw ParseError(lineno, "row arity mismatch");
      }
      r.bound = nums.back();
      nums.pop_back();
      r.coeffs = std::move(nums);
      return BoolTree::leaf(std::move(r));
    }
    if (op != "AND" && op != "OR") throw ParseError(lineno, "expected AND/OR/LE");
    std::vector<BoolTree> ch;
    while (pos < toks.size() && toks[pos] != ")") ch.push_back(parse(lineno));
    next(lineno);  // ')'
    return op == "AND" ? BoolTree::make_and(std::move(ch)) : BoolTree::make_or(std::move(ch));
  }
};

}  // namespace

std::string to_text(const ShortSentence& s) {
  std::ostringstream os;
  os << "SENTENCE " << s.num_vars << "\n";
  for (const auto& b : s.prefix) {
    os << (b.quant == Quantifier::ForAll ? "A " : "E ") << b.size << "\n";
  }
  tree_to_text(s.matrix, os);
  os << "\n";
  if (s.enc3) {
    os << "META3\n";
    std::istringstream body(to_text(s.enc3->source));
    std::string line;
    std::getline(body, line);  // drop the APCOVER header inside the section
    while (std::getline(body, line)) os << line << "\n";
    os << "ENDMETA\n";
  } else if (s.encm) {
    os << "METAM\n" << to_text(s.encm->source) << "ENDMETA\n";
  }
  return os.str();
}

ShortSentence parse_sentence(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  ShortSentence s;

  if (!std::getline(is, line)) throw ParseError(1, "empty sentence file");
  ++lineno;
  {
    std::istringstream ls(line);
    std::string head;
    long long nv = -1;
    if (!(ls >> head >> nv) || head != "SENTENCE" || nv < 1) {
      throw ParseError(lineno, "expected SENTENCE header");
    }
    s.num_vars = static_cast<int>(nv);
  }
  // Quantifier block lines until the tree line (starts with '(').
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '(') break;
    std::istringstream ls(line);
    std::string q;
    long long sz = -1;
    if (!(ls >> q >> sz) || (q != "A" && q != "E") || sz < 1) {
      throw ParseError(lineno, "expected quantifier block line");
    }
    s.prefix.push_back(
        {q == "A" ? Quantifier::ForAll : Quantifier::Exists, static_cast<int>(sz)});
  }
  if (line.empty() || line[0] != '(') throw ParseError(lineno, "missing matrix tree");
  TreeParser tp;
  tp.toks = TreeParser::lex(line, lineno);
  tp.num_vars = s.num_vars;
  s.matrix = tp.parse(lineno);
  if (tp.pos != tp.toks.size()) throw ParseError(lineno, "trailing tokens after tree");

  // Optional metadata section.
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line == "META3" || line == "METAM") {
      std::string body;
      bool closed = false;
      std::string inner;
      while (std::getline(is, inner)) {
        ++lineno;
        if (inner == "ENDMETA") { closed = true; break; }
        body += inner + "\n";
      }
      if (!closed) throw ParseError(lineno, "unterminated metadata section");
      if (line == "META3") {
        s.enc3 = std::make_shared<Encoding>(build_encoding(parse_apcover("APCOVER\n" + body)));
      } else {
        s.encm = std::make_shared<MergedSentenceMeta>(
            merged_meta_from_instance(parse_mapcover(body)));
      }
    } else {
      throw ParseError(lineno, "unexpected content after tree");
    }
  }
  s.validate();
  return s;
}

}  // namespace presred
