#include "presred/apcover.hpp"

#include <algorithm>
#include <sstream>

namespace presred {

bool APCoverInstance::is_normalized() const {
  if (mu < 1) return false;
  for (const auto& t : triples) {
    if (t.g < 2 || t.h < 1) return false;
  }
  return true;
}

void APCoverInstance::validate() const {
  if (mu > nu) throw std::invalid_argument("AP-COVER: empty interval (mu > nu)");
  for (const auto& t : triples) {
    if (t.e < 1) throw std::invalid_argument("AP-COVER: step must be >= 1");
    if (t.h < 0) throw std::invalid_argument("AP-COVER: index bound must be >= 0");
    if (t.g < 0) throw std::invalid_argument("AP-COVER: first term must be >= 0");
  }
}

void MAPCoverInstance::validate() const {
  const std::size_t n = intervals.size();
  if (n == 0) throw std::invalid_argument("m-AP-COVER: needs at least one group");
  if (groups.size() != n || taus.size() != n || quantifiers.size() != n) {
    throw std::invalid_argument("m-AP-COVER: mismatched section lengths");
  }
  if (quantifiers.back() != Quantifier::Exists) {
    throw std::invalid_argument("m-AP-COVER: innermost quantifier must be existential");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (quantifiers[i] == quantifiers[i + 1]) {
      throw std::invalid_argument("m-AP-COVER: quantifiers must alternate");
    }
  }
  for (const auto& [mu, nu] : intervals) {
    if (mu > nu) throw std::invalid_argument("m-AP-COVER: empty interval");
  }
}

bool ap_member(const Int& z, const APTriple& t) {
  if (z < t.g) return false;
  Int d = z - t.g;
  if (d % t.e != 0) return false;
  return d / t.e <= t.h;
}

namespace {

bool covered(const Int& z, const std::vector<APTriple>& triples) {
  for (const auto& t : triples) {
    if (ap_member(z, t)) return true;
  }
  return false;
}

}  // namespace

std::pair<APCoverInstance, Int> normalize(const APCoverInstance& inst) {
  inst.validate();
  Int shift = 0;
  if (inst.mu < 1) shift = 1 - inst.mu;
  for (const auto& t : inst.triples) {
    if (t.g + shift < 2) shift = 2 - t.g;
  }
  APCoverInstance out;
  out.mu = inst.mu + shift;
  out.nu = inst.nu + shift;
  bool has_singleton = false;
  for (const auto& t : inst.triples) {
    out.triples.push_back({t.g + shift, t.h, t.e});
    if (t.h == 0) has_singleton = true;
  }
  if (has_singleton) {
    out.nu += 1;  // the appended point out.nu is absorbed into every singleton
    for (auto& t : out.triples) {
      if (t.h != 0) continue;
      if (t.g < out.nu) {
        t = {t.g, 1, out.nu - t.g};
      } else if (t.g == out.nu) {
        t = {t.g, 1, t.e};
      } else {
        t = {out.nu, 1, t.g - out.nu};
      }
    }
  }
  return {out, shift};
}

bool decide_apcover(const APCoverInstance& inst) {
  inst.validate();
  if (inst.interval_size() > scan_limit()) {
    throw ScaleError("decide_apcover: interval exceeds the scan guard");
  }
  for (Int z = inst.mu; z <= inst.nu; ++z) {
    if (!covered(z, inst.triples)) return true;
  }
  return false;
}

Int count_apcover(const APCoverInstance& inst) {
  inst.validate();
  if (inst.interval_size() > scan_limit()) {
    throw ScaleError("count_apcover: interval exceeds the scan guard");
  }
  Int n = 0;
  for (Int z = inst.mu; z <= inst.nu; ++z) {
    if (!covered(z, inst.triples)) ++n;
  }
  return n;
}

namespace {

bool mapcover_rec(const MAPCoverInstance& inst, std::size_t level, Int partial_sum) {
  const std::size_t last = inst.m() - 1;
  const auto& [mu, nu] = inst.intervals[level];
  if (level == last) {
    for (Int z = mu; z <= nu; ++z) {
      if (!covered(partial_sum + inst.taus[level] * z, inst.groups[level])) return true;
    }
    return false;
  }
  const bool universal = inst.quantifiers[level] == Quantifier::ForAll;
  for (Int z = mu; z <= nu; ++z) {
    if (covered(z, inst.groups[level])) continue;  // domain is J_t minus the group
    bool sub = mapcover_rec(inst, level + 1, partial_sum + inst.taus[level] * z);
    if (universal && !sub) return false;
    if (!universal && sub) return true;
  }
  return universal;
}

}  // namespace

bool decide_mapcover(const MAPCoverInstance& inst) {
  inst.validate();
  Int product = 1;
  for (const auto& [mu, nu] : inst.intervals) {
    product *= nu - mu + 1;
    if (product > scan_limit()) {
      throw ScaleError("decide_mapcover: interval product exceeds the scan guard");
    }
  }
  return mapcover_rec(inst, 0, 0);
}

std::string to_text(const APCoverInstance& inst) {
  std::ostringstream os;
  os << "APCOVER\n";
  os << "J " << inst.mu << " " << inst.nu << "\n";
  for (const auto& t : inst.triples) {
    os << "AP " << t.g << " " << t.h << " " << t.e << "\n";
  }
  return os.str();
}

namespace {

std::vector<std::pair<int, std::vector<std::string>>> tokenize_lines(const std::string& text) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty() || toks[0][0] == '#') continue;
    out.emplace_back(lineno, std::move(toks));
  }
  return out;
}

Int parse_int(const std::string& s, int lineno) {
  try {
    return Int(s);
  } catch (const std::exception&) {
    throw ParseError(lineno, "expected integer, got '" + s + "'");
  }
}

}  // namespace

APCoverInstance parse_apcover(const std::string& text) {
  auto lines = tokenize_lines(text);
  if (lines.empty() || lines[0].second[0] != "APCOVER") {
    throw ParseError(lines.empty() ? 1 : lines[0].first, "expected APCOVER header");
  }
  APCoverInstance inst;
  bool have_j = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [ln, toks] = lines[i];
    if (toks[0] == "J" && toks.size() == 3) {
      inst.mu = parse_int(toks[1], ln);
      inst.nu = parse_int(toks[2], ln);
      have_j = true;
    } else if (toks[0] == "AP" && toks.size() == 4) {
      inst.triples.push_back(
          {parse_int(toks[1], ln), parse_int(toks[2], ln), parse_int(toks[3], ln)});
    } else {
      throw ParseError(ln, "unrecognized record '" + toks[0] + "'");
    }
  }
  if (!have_j) throw ParseError(1, "missing J record");
  inst.validate();
  return inst;
}

std::string to_text(const MAPCoverInstance& inst) {
  std::ostringstream os;
  os << "MAPCOVER " << inst.m() << "\n";
  os << "PREFIX ";
  for (auto q : inst.quantifiers) os << (q == Quantifier::ForAll ? 'A' : 'E');
  os << "\n";
  os << "TAU";
  for (const auto& t : inst.taus) os << " " << t;
  os << "\n";
  for (std::size_t t = 0; t < inst.m(); ++t) {
    os << "J " << (t + 1) << " " << inst.intervals[t].first << " " << inst.intervals[t].second
       << "\n";
    for (const auto& ap : inst.groups[t]) {
      os << "AP " << (t + 1) << " " << ap.g << " " << ap.h << " " << ap.e << "\n";
    }
  }
  return os.str();
}

MAPCoverInstance parse_mapcover(const std::string& text) {
  auto lines = tokenize_lines(text);
  if (lines.empty() || lines[0].second[0] != "MAPCOVER" || lines[0].second.size() != 2) {
    throw ParseError(lines.empty() ? 1 : lines[0].first, "expected MAPCOVER header");
  }
  const int m = static_cast<int>(to_ll(parse_int(lines[0].second[1], lines[0].first)));
  if (m < 1) throw ParseError(lines[0].first, "group count must be >= 1");
  MAPCoverInstance inst;
  inst.intervals.resize(m, {0, -1});
  inst.groups.resize(m);
  inst.taus.resize(m, 0);
  std::vector<bool> seen_j(m, false);
  bool have_prefix = false, have_tau = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [ln, toks] = lines[i];
    if (toks[0] == "PREFIX" && toks.size() == 2) {
      if (toks[1].size() != static_cast<std::size_t>(m)) {
        throw ParseError(ln, "PREFIX length must equal group count");
      }
      for (char c : toks[1]) {
        if (c != 'A' && c != 'E') throw ParseError(ln, "PREFIX must be a string of A/E");
        inst.quantifiers.push_back(c == 'A' ? Quantifier::ForAll : Quantifier::Exists);
      }
      have_prefix = true;
    } else if (toks[0] == "TAU" && toks.size() == static_cast<std::size_t>(m) + 1) {
      for (int t = 0; t < m; ++t) inst.taus[t] = parse_int(toks[t + 1], ln);
      have_tau = true;
    } else if (toks[0] == "J" && toks.size() == 4) {
      int g = static_cast<int>(to_ll(parse_int(toks[1], ln)));
      if (g < 1 || g > m) throw ParseError(ln, "group index out of range");
      inst.intervals[g - 1] = {parse_int(toks[2], ln), parse_int(toks[3], ln)};
      seen_j[g - 1] = true;
    } else if (toks[0] == "AP" && toks.size() == 5) {
      int g = static_cast<int>(to_ll(parse_int(toks[1], ln)));
      if (g < 1 || g > m) throw ParseError(ln, "group index out of range");
      inst.groups[g - 1].push_back(
          {parse_int(toks[2], ln), parse_int(toks[3], ln), parse_int(toks[4], ln)});
    } else {
      throw ParseError(ln, "unrecognized record '" + toks[0] + "'");
    }
  }
  if (!have_prefix) throw ParseError(1, "missing PREFIX record");
  if (!have_tau) throw ParseError(1, "missing TAU record");
  for (int t = 0; t < m; ++t) {
    if (!seen_j[t]) throw ParseError(1, "missing J record for group " + std::to_string(t + 1));
  }
  inst.validate();
  return inst;
}

}  // namespace presred
