#include "presred.h"

#include "presred/geometry.hpp"
#include "presred/gip.hpp"
#include "presred/kpt.hpp"
#include "presred/optimize.hpp"
#include "presred/presburger.hpp"
#include "presred/props.hpp"
#include "presred/satred.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

using namespace presred;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn, translating exceptions into status codes + pr_last_error.
template <typename Fn>
pr_status guarded(Fn&& fn) {
  try {
    fn();
    return PR_OK;
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return PR_ERR_PARSE;
  } catch (const ScaleError& e) {
    g_last_error = e.what();
    return PR_ERR_SCALE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PR_ERR_INVALID;
  }
}

}  // namespace

struct pr_cnf { Cnf3 v; };
struct pr_qbf { QbfInstance v; };
struct pr_apcover { APCoverInstance v; };
struct pr_mapcover { MAPCoverInstance v; };
struct pr_sentence { ShortSentence v; };
struct pr_gip { GIPInstance v; };
struct pr_bilevel { BilevelInstance v; };
struct pr_pareto { ParetoInstance v; };

extern "C" {

const char* pr_last_error(void) { return g_last_error.c_str(); }

void pr_string_free(char* s) { std::free(s); }

void pr_set_jobs(int jobs) { set_max_threads(jobs); }

void pr_set_max_scale(long long scan_points) {
  if (scan_points >= 1) set_max_scale(scan_points);
}

pr_status pr_cnf_parse(const char* dimacs, pr_cnf** out) {
  return guarded([&] { *out = new pr_cnf{parse_dimacs(dimacs)}; });
}
pr_status pr_qbf_parse(const char* qdimacs, pr_qbf** out) {
  return guarded([&] { *out = new pr_qbf{parse_qdimacs(qdimacs)}; });
}
pr_status pr_apcover_parse(const char* text, pr_apcover** out) {
  return guarded([&] { *out = new pr_apcover{parse_apcover(text)}; });
}
pr_status pr_mapcover_parse(const char* text, pr_mapcover** out) {
  return guarded([&] { *out = new pr_mapcover{parse_mapcover(text)}; });
}
pr_status pr_sentence_parse(const char* text, pr_sentence** out) {
  return guarded([&] { *out = new pr_sentence{parse_sentence(text)}; });
}
pr_status pr_gip_parse(const char* text, pr_gip** out) {
  return guarded([&] { *out = new pr_gip{parse_gip(text)}; });
}
pr_status pr_bilevel_parse(const char* text, pr_bilevel** out) {
  return guarded([&] { *out = new pr_bilevel{parse_bilevel(text)}; });
}
pr_status pr_pareto_parse(const char* text, pr_pareto** out) {
  return guarded([&] { *out = new pr_pareto{parse_pareto(text)}; });
}

pr_status pr_apcover_text(const pr_apcover* h, char** out) {
  return guarded([&] { *out = dup_string(to_text(h->v)); });
}
pr_status pr_mapcover_text(const pr_mapcover* h, char** out) {
  return guarded([&] { *out = dup_string(to_text(h->v)); });
}
pr_status pr_sentence_text(const pr_sentence* h, char** out) {
  return guarded([&] { *out = dup_string(to_text(h->v)); });
}
pr_status pr_gip_text(const pr_gip* h, char** out) {
  return guarded([&] { *out = dup_string(to_text(h->v)); });
}
pr_status pr_bilevel_text(const pr_bilevel* h, char** out) {
  return guarded([&] { *out = dup_string(to_text(h->v)); });
}
pr_status pr_pareto_text(const pr_pareto* h, char** out) {
  return guarded([&] { *out = dup_string(to_text(h->v)); });
}

void pr_cnf_free(pr_cnf* h) { delete h; }
void pr_qbf_free(pr_qbf* h) { delete h; }
void pr_apcover_free(pr_apcover* h) { delete h; }
void pr_mapcover_free(pr_mapcover* h) { delete h; }
void pr_sentence_free(pr_sentence* h) { delete h; }
void pr_gip_free(pr_gip* h) { delete h; }
void pr_bilevel_free(pr_bilevel* h) { delete h; }
void pr_pareto_free(pr_pareto* h) { delete h; }

pr_status pr_reduce_cnf_to_apcover(const pr_cnf* f, int parity_trick, pr_apcover** out) {
  return guarded([&] {
    *out = new pr_apcover{reduce_3sat_to_apcover(f->v, parity_trick != 0).first};
  });
}
pr_status pr_reduce_qbf_to_mapcover(const pr_qbf* f, pr_mapcover** out) {
  return guarded([&] { *out = new pr_mapcover{reduce_qbf_to_mapcover(f->v)}; });
}
pr_status pr_apcover_to_sentence(const pr_apcover* inst, pr_sentence** out) {
  return guarded([&] {
    auto [norm, shift] = normalize(inst->v);
    *out = new pr_sentence{build_sentence3(build_encoding(norm))};
  });
}
pr_status pr_mapcover_to_sentence(const pr_mapcover* inst, pr_sentence** out) {
  return guarded([&] { *out = new pr_sentence{build_sentence_m(inst->v)}; });
}
pr_status pr_apcover_to_gip(const pr_apcover* inst, int system, pr_gip** out) {
  return guarded([&] {
    if (system != 1 && system != 2) throw std::invalid_argument("system must be 1 or 2");
    auto [norm, shift] = normalize(inst->v);
    Encoding enc = build_encoding(norm);
    *out = new pr_gip{system == 1 ? build_system1(enc) : build_system2(enc)};
  });
}
pr_status pr_apcover_to_bilevel(const pr_apcover* inst, pr_bilevel** out) {
  return guarded([&] {
    auto [norm, shift] = normalize(inst->v);
    *out = new pr_bilevel{build_bilevel(build_encoding(norm))};
  });
}
pr_status pr_apcover_to_pareto(const pr_apcover* inst, int parity_source, pr_pareto** out) {
  return guarded([&] {
    auto [norm, shift] = normalize(inst->v);
    *out = new pr_pareto{build_pareto(build_encoding(norm), parity_source != 0)};
  });
}

pr_status pr_apcover_decide(const pr_apcover* inst, int* result) {
  return guarded([&] { *result = decide_apcover(inst->v) ? 1 : 0; });
}
pr_status pr_apcover_count(const pr_apcover* inst, char** count) {
  return guarded([&] { *count = dup_string(count_apcover(inst->v).str()); });
}
pr_status pr_mapcover_decide(const pr_mapcover* inst, int* result) {
  return guarded([&] { *result = decide_mapcover(inst->v) ? 1 : 0; });
}
pr_status pr_sentence_decide(const pr_sentence* s, int* result) {
  return guarded([&] { *result = decide_certified(s->v) ? 1 : 0; });
}
pr_status pr_sentence_count(const pr_sentence* s, char** count) {
  return guarded([&] { *count = dup_string(count_certified(s->v).str()); });
}
pr_status pr_gip_decide(const pr_gip* g, int* result) {
  return guarded([&] { *result = decide_gip(g->v, g->v.x_box) ? 1 : 0; });
}
pr_status pr_gip_count(const pr_gip* g, char** count) {
  return guarded([&] { *count = dup_string(count_gip(g->v, g->v.x_box).str()); });
}
pr_status pr_bilevel_solve(const pr_bilevel* b, char** value) {
  return guarded([&] { *value = dup_string(solve_bilevel_brute(b->v).str()); });
}
pr_status pr_pareto_solve(const pr_pareto* p, char** min_g, char** pareto_set) {
  return guarded([&] {
    ParetoSolution sol = solve_pareto_brute(p->v);
    *min_g = dup_string(rat_num(sol.min_g).str() + "/" + rat_den(sol.min_g).str());
    std::ostringstream os;
    for (const auto& y : sol.pareto_set) {
      os << y[0] << " " << y[1] << " " << y[2] << "\n";
    }
    *pareto_set = dup_string(os.str());
  });
}

pr_status pr_verify_pipeline(const char* dimacs, const char* stages, int parity_trick,
                             char** report, int* all_pass) {
  pr_status st = guarded([&] {
    Cnf3 f = parse_dimacs(dimacs);
    std::vector<std::string> names;
    std::istringstream ss(stages ? stages : "");
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) names.push_back(tok);
    }
    if (names.empty()) names = {"sat", "apcover", "sentence"};
    PipelineReport rep = verify_pipeline(f, names, parity_trick != 0);
    *report = dup_string(rep.text());
    *all_pass = rep.all_pass ? 1 : 0;
  });
  if (st == PR_OK && *all_pass == 0) return PR_ERR_MISMATCH;
  return st;
}

pr_status pr_kpt_report(int s, char** report) {
  return guarded([&] {
    FibonacciFamily fam = fibonacci_family(s);
    auto infeasible = infeasible_set(fam);
    bool mfree = midpoint_free(infeasible);
    auto chain = chain_points(convergents(fam.cfrac), 2);
    std::sort(chain.begin(), chain.end());
    auto sorted = infeasible;
    std::sort(sorted.begin(), sorted.end());
    bool on_chain = sorted == chain;
    bool convex = true;
    for (std::size_t i = 0; i + 2 < infeasible.size(); ++i) {
      if (cross(infeasible[i + 1] - infeasible[i], infeasible[i + 2] - infeasible[i + 1]) >= 0) {
        convex = false;
      }
    }
    std::ostringstream os;
    os << "s " << s << "\n";
    os << "p " << fam.p << " q " << fam.q << "\n";
    os << "infeasible " << infeasible.size() << "\n";
    for (const auto& y : infeasible) os << y.y1 << " " << y.y2 << "\n";
    os << "chain " << (on_chain ? "yes" : "no") << "\n";
    os << "convex " << (convex ? "yes" : "no") << "\n";
    os << "midpoint-free " << (mfree ? "yes" : "no") << "\n";
    os << to_text(fam.pip);
    *report = dup_string(os.str());
  });
}

pr_status pr_props_run(const char* suite, unsigned long long seed, char** report, int* pass) {
  pr_status st = guarded([&] {
    std::vector<PropResult> results;
    if (suite == nullptr || std::string(suite) == "all") {
      results = run_all_prop_suites(seed);
    } else {
      results.push_back(run_prop_suite(suite, seed));
    }
    std::ostringstream os;
    bool all = true;
    for (const auto& r : results) {
      os << (r.pass ? "PASS" : "FAIL") << " " << r.suite << " (" << r.checks << " checks)";
      if (!r.pass) os << ": " << r.detail;
      os << "\n";
      all = all && r.pass;
    }
    *report = dup_string(os.str());
    *pass = all ? 1 : 0;
  });
  if (st == PR_OK && *pass == 0) return PR_ERR_MISMATCH;
  return st;
}

}  // extern "C"
