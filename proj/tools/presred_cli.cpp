// presred command line: reductions from CNF/QBF through AP-COVER, short
// Presburger sentences, integer-program and optimization instances, plus the
// exact brute-force oracles and invariant suites.
//
// Exit codes: 0 decision-true/verified, 1 decision-false, 2 usage or parse
// error, 3 scale-guard refusal, 4 verification mismatch.

#include "presred.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitScale = 3;
constexpr int kExitMismatch = 4;

int status_exit(pr_status st) {
  switch (st) {
    case PR_OK: return 0;
    case PR_ERR_PARSE: return kExitUsage;
    case PR_ERR_SCALE: return kExitScale;
    case PR_ERR_MISMATCH: return kExitMismatch;
    default: return kExitUsage;
  }
}

int fail(pr_status st) {
  std::cerr << "error: " << pr_last_error() << "\n";
  return status_exit(st);
}

std::string read_input(const std::string& path) {
  std::string resolved = path;
  std::ifstream in(resolved);
  if (!in) {
    // Only environment knob: the fixture directory for relative inputs.
    if (const char* dir = std::getenv("PRESRED_FIXTURE_DIR")) {
      resolved = std::string(dir) + "/" + path;
      in.open(resolved);
    }
  }
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
}

enum class Kind { Cnf, Qbf, ApCover, MapCover, Sentence, Gip, Bilevel, Pareto };

Kind sniff(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c" || tok == "#") continue;
    if (tok == "p") {
      // DIMACS; quantifier lines make it QDIMACS.
      std::string rest;
      while (std::getline(is, rest)) {
        std::istringstream rs(rest);
        std::string t;
        if (rs >> t && (t == "a" || t == "e")) return Kind::Qbf;
      }
      return Kind::Cnf;
    }
    if (tok == "APCOVER") return Kind::ApCover;
    if (tok == "MAPCOVER") return Kind::MapCover;
    if (tok == "SENTENCE") return Kind::Sentence;
    if (tok == "GIP") return Kind::Gip;
    if (tok == "BILEVEL") return Kind::Bilevel;
    if (tok == "PARETO") return Kind::Pareto;
    break;
  }
  throw std::runtime_error("unrecognized input format");
}

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { pr_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

int cmd_reduce(const std::string& input, const std::string& target, bool parity,
               const std::string& out_path) {
  const std::string text = read_input(input);
  const Kind kind = sniff(text);
  pr_status st = PR_OK;
  OwnedString out;

  if (kind == Kind::Qbf) {
    pr_qbf* qbf = nullptr;
    if ((st = pr_qbf_parse(text.c_str(), &qbf)) != PR_OK) return fail(st);
    pr_mapcover* mc = nullptr;
    if ((st = pr_reduce_qbf_to_mapcover(qbf, &mc)) != PR_OK) {
      pr_qbf_free(qbf);
      return fail(st);
    }
    if (target == "apcover" || target == "mapcover") {
      st = pr_mapcover_text(mc, &out.s);
    } else if (target == "sentence") {
      pr_sentence* s = nullptr;
      if ((st = pr_mapcover_to_sentence(mc, &s)) == PR_OK) {
        st = pr_sentence_text(s, &out.s);
        pr_sentence_free(s);
      }
    } else {
      std::cerr << "error: target '" << target << "' needs a CNF or AP-COVER input\n";
      pr_mapcover_free(mc);
      pr_qbf_free(qbf);
      return kExitUsage;
    }
    pr_mapcover_free(mc);
    pr_qbf_free(qbf);
    if (st != PR_OK) return fail(st);
    write_output(out_path, out.str());
    return 0;
  }

  pr_apcover* ap = nullptr;
  if (kind == Kind::Cnf) {
    pr_cnf* cnf = nullptr;
    if ((st = pr_cnf_parse(text.c_str(), &cnf)) != PR_OK) return fail(st);
    st = pr_reduce_cnf_to_apcover(cnf, parity ? 1 : 0, &ap);
    pr_cnf_free(cnf);
    if (st != PR_OK) return fail(st);
  } else if (kind == Kind::ApCover) {
    if ((st = pr_apcover_parse(text.c_str(), &ap)) != PR_OK) return fail(st);
  } else {
    std::cerr << "error: reduce expects a CNF, QBF or AP-COVER input\n";
    return kExitUsage;
  }

  if (target == "apcover") {
    st = pr_apcover_text(ap, &out.s);
  } else if (target == "sentence") {
    pr_sentence* s = nullptr;
    if ((st = pr_apcover_to_sentence(ap, &s)) == PR_OK) {
      st = pr_sentence_text(s, &out.s);
      pr_sentence_free(s);
    }
  } else if (target == "gip1" || target == "gip2") {
    pr_gip* g = nullptr;
    if ((st = pr_apcover_to_gip(ap, target == "gip1" ? 1 : 2, &g)) == PR_OK) {
      st = pr_gip_text(g, &out.s);
      pr_gip_free(g);
    }
  } else if (target == "bilevel") {
    pr_bilevel* b = nullptr;
    if ((st = pr_apcover_to_bilevel(ap, &b)) == PR_OK) {
      st = pr_bilevel_text(b, &out.s);
      pr_bilevel_free(b);
    }
  } else if (target == "pareto") {
    pr_pareto* p = nullptr;
    if ((st = pr_apcover_to_pareto(ap, parity ? 1 : 0, &p)) == PR_OK) {
      st = pr_pareto_text(p, &out.s);
      pr_pareto_free(p);
    }
  } else {
    std::cerr << "error: unknown target '" << target << "'\n";
    pr_apcover_free(ap);
    return kExitUsage;
  }
  pr_apcover_free(ap);
  if (st != PR_OK) return fail(st);
  write_output(out_path, out.str());
  return 0;
}

int cmd_decide(const std::string& input) {
  const std::string text = read_input(input);
  int result = 0;
  pr_status st;
  switch (sniff(text)) {
    case Kind::ApCover: {
      pr_apcover* h = nullptr;
      if ((st = pr_apcover_parse(text.c_str(), &h)) != PR_OK) return fail(st);
      st = pr_apcover_decide(h, &result);
      pr_apcover_free(h);
      break;
    }
    case Kind::MapCover: {
      pr_mapcover* h = nullptr;
      if ((st = pr_mapcover_parse(text.c_str(), &h)) != PR_OK) return fail(st);
      st = pr_mapcover_decide(h, &result);
      pr_mapcover_free(h);
      break;
    }
    case Kind::Sentence: {
      pr_sentence* h = nullptr;
      if ((st = pr_sentence_parse(text.c_str(), &h)) != PR_OK) return fail(st);
      st = pr_sentence_decide(h, &result);
      pr_sentence_free(h);
      break;
    }
    case Kind::Gip: {
      pr_gip* h = nullptr;
      if ((st = pr_gip_parse(text.c_str(), &h)) != PR_OK) return fail(st);
      st = pr_gip_decide(h, &result);
      pr_gip_free(h);
      break;
    }
    default:
      std::cerr << "error: decide expects an APCOVER, MAPCOVER, SENTENCE or GIP file\n";
      return kExitUsage;
  }
  if (st != PR_OK) return fail(st);
  std::cout << (result ? "true" : "false") << "\n";
  return result ? 0 : kExitFalse;
}

int cmd_count(const std::string& input) {
  const std::string text = read_input(input);
  OwnedString count;
  pr_status st;
  switch (sniff(text)) {
    case Kind::ApCover: {
      pr_apcover* h = nullptr;
      if ((st = pr_apcover_parse(text.c_str(), &h)) != PR_OK) return fail(st);
      st = pr_apcover_count(h, &count.s);
      pr_apcover_free(h);
      break;
    }
    case Kind::Sentence: {
      pr_sentence* h = nullptr;
      if ((st = pr_sentence_parse(text.c_str(), &h)) != PR_OK) return fail(st);
      st = pr_sentence_count(h, &count.s);
      pr_sentence_free(h);
      break;
    }
    case Kind::Gip: {
      pr_gip* h = nullptr;
      if ((st = pr_gip_parse(text.c_str(), &h)) != PR_OK) return fail(st);
      st = pr_gip_count(h, &count.s);
      pr_gip_free(h);
      break;
    }
    case Kind::Bilevel: {
      pr_bilevel* h = nullptr;
      if ((st = pr_bilevel_parse(text.c_str(), &h)) != PR_OK) return fail(st);
      st = pr_bilevel_solve(h, &count.s);
      pr_bilevel_free(h);
      break;
    }
    case Kind::Pareto: {
      pr_pareto* h = nullptr;
      if ((st = pr_pareto_parse(text.c_str(), &h)) != PR_OK) return fail(st);
      OwnedString pareto_set;
      st = pr_pareto_solve(h, &count.s, &pareto_set.s);
      pr_pareto_free(h);
      break;
    }
    default:
      std::cerr << "error: count expects an APCOVER, SENTENCE, GIP, BILEVEL or PARETO file\n";
      return kExitUsage;
  }
  if (st != PR_OK) return fail(st);
  std::cout << count.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reduction compiler and verification toolkit"};
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads for facet enumeration")->capture_default_str();
  long long max_scale = 10'000'000;
  app.add_option("--max-scale", max_scale, "point budget for brute-force scan guards")
      ->capture_default_str();

  std::string input, output, target = "apcover", stages;
  bool parity = false;

  auto* reduce = app.add_subcommand("reduce", "compile an input to a downstream instance");
  reduce->add_option("input", input, "CNF/QBF/APCOVER file")->required();
  reduce->add_option("--target", target,
                     "apcover|sentence|gip1|gip2|bilevel|pareto (QBF: apcover|sentence)");
  reduce->add_flag("--parity-trick", parity, "use shifted primes and cover even numbers");
  reduce->add_option("-o,--output", output, "output file (default stdout)");

  auto* decide = app.add_subcommand("decide", "decide an instance file");
  decide->add_option("input", input, "APCOVER/MAPCOVER/SENTENCE/GIP file")->required();

  auto* count = app.add_subcommand("count", "count witnesses / solve values");
  count->add_option("input", input, "APCOVER/SENTENCE/GIP/BILEVEL/PARETO file")->required();

  auto* verify = app.add_subcommand("verify-pipeline", "run stages with their oracles");
  verify->add_option("input", input, "CNF file")->required();
  verify->add_option("--stages", stages, "comma-separated stage list (default sat,apcover,sentence)");
  verify->add_flag("--parity-trick", parity, "use shifted primes");

  int kpt_s = 2;
  auto* genkpt = app.add_subcommand("gen-kpt", "emit the Fibonacci family instance");
  genkpt->add_option("--s", kpt_s, "family index (1..8)")->capture_default_str();
  genkpt->add_option("-o,--output", output, "output file (default stdout)");

  auto* genbl = app.add_subcommand("gen-bilevel", "emit a bilevel instance");
  genbl->add_option("input", input, "CNF or APCOVER file")->required();
  genbl->add_option("-o,--output", output, "output file (default stdout)");

  auto* genpa = app.add_subcommand("gen-pareto", "emit a Pareto instance");
  genpa->add_option("input", input, "CNF or APCOVER file")->required();
  genpa->add_flag("--parity-trick", parity, "use shifted primes");
  genpa->add_option("-o,--output", output, "output file (default stdout)");

  std::string suite = "all";
  unsigned long long seed = 1;
  auto* props = app.add_subcommand("props", "run the randomized invariant suites");
  props->add_option("--suite", suite, "suite name or 'all'")->capture_default_str();
  props->add_option("--seed", seed, "rng seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  pr_set_jobs(jobs);
  pr_set_max_scale(max_scale);
  try {
    if (reduce->parsed()) return cmd_reduce(input, target, parity, output);
    if (decide->parsed()) return cmd_decide(input);
    if (count->parsed()) return cmd_count(input);
    if (verify->parsed()) {
      const std::string text = read_input(input);
      OwnedString report;
      int all_pass = 0;
      pr_status st =
          pr_verify_pipeline(text.c_str(), stages.c_str(), parity ? 1 : 0, &report.s, &all_pass);
      std::cout << report.str();
      if (st != PR_OK && st != PR_ERR_MISMATCH) return fail(st);
      return all_pass ? 0 : kExitMismatch;
    }
    if (genkpt->parsed()) {
      OwnedString report;
      pr_status st = pr_kpt_report(kpt_s, &report.s);
      if (st != PR_OK) return fail(st);
      write_output(output, report.str());
      return 0;
    }
    if (genbl->parsed()) return cmd_reduce(input, "bilevel", false, output);
    if (genpa->parsed()) return cmd_reduce(input, "pareto", parity, output);
    if (props->parsed()) {
      OwnedString report;
      int pass = 0;
      pr_status st = pr_props_run(suite.c_str(), seed, &report.s, &pass);
      std::cout << report.str();
      if (st != PR_OK && st != PR_ERR_MISMATCH) return fail(st);
      return pass ? 0 : kExitMismatch;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
