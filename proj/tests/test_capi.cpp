// Exercises the shared-library C surface end to end: parse, reduce, decide,
// count, verify, and the report entry points.

#include "presred.h"

#include <cassert>
#include <cstdio>
#include <cstring>
#include <string>

#define CHECK(cond)                                                       \
  do {                                                                    \
    if (!(cond)) {                                                        \
      std::fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                                           \
    }                                                                     \
  } while (0)

namespace {

int test_pipeline() {
  const char* dimacs = "p cnf 2 2\n1 2 2 0\n-1 2 2 0\n";
  pr_cnf* cnf = nullptr;
  CHECK(pr_cnf_parse(dimacs, &cnf) == PR_OK);

  pr_apcover* ap = nullptr;
  CHECK(pr_reduce_cnf_to_apcover(cnf, 0, &ap) == PR_OK);

  char* count = nullptr;
  CHECK(pr_apcover_count(ap, &count) == PR_OK);
  CHECK(std::string(count) == "2");
  pr_string_free(count);

  int result = -1;
  CHECK(pr_apcover_decide(ap, &result) == PR_OK);
  CHECK(result == 1);

  pr_sentence* s = nullptr;
  CHECK(pr_apcover_to_sentence(ap, &s) == PR_OK);
  CHECK(pr_sentence_count(s, &count) == PR_OK);
  CHECK(std::string(count) == "2");
  pr_string_free(count);

  char* text = nullptr;
  CHECK(pr_sentence_text(s, &text) == PR_OK);
  pr_sentence* s2 = nullptr;
  CHECK(pr_sentence_parse(text, &s2) == PR_OK);
  char* text2 = nullptr;
  CHECK(pr_sentence_text(s2, &text2) == PR_OK);
  CHECK(std::string(text) == text2);
  pr_string_free(text);
  pr_string_free(text2);
  pr_sentence_free(s2);
  pr_sentence_free(s);
  pr_apcover_free(ap);
  pr_cnf_free(cnf);
  return 0;
}

int test_gip_path() {
  pr_apcover* ap = nullptr;
  CHECK(pr_apcover_parse("APCOVER\nJ 1 5\nAP 2 1 3\n", &ap) == PR_OK);
  pr_gip* g = nullptr;
  CHECK(pr_apcover_to_gip(ap, 1, &g) == PR_OK);
  char* count = nullptr;
  CHECK(pr_gip_count(g, &count) == PR_OK);
  CHECK(std::string(count) == "3");
  pr_string_free(count);
  pr_gip_free(g);

  pr_bilevel* b = nullptr;
  CHECK(pr_apcover_to_bilevel(ap, &b) == PR_OK);
  char* value = nullptr;
  CHECK(pr_bilevel_solve(b, &value) == PR_OK);
  CHECK(std::string(value) == "1");
  pr_string_free(value);
  pr_bilevel_free(b);

  pr_pareto* p = nullptr;
  CHECK(pr_apcover_to_pareto(ap, 0, &p) == PR_OK);
  char* min_g = nullptr;
  char* pareto_set = nullptr;
  CHECK(pr_pareto_solve(p, &min_g, &pareto_set) == PR_OK);
  CHECK(std::string(min_g) == "-1/1");
  pr_string_free(min_g);
  pr_string_free(pareto_set);
  pr_pareto_free(p);
  pr_apcover_free(ap);
  return 0;
}

int test_errors() {
  pr_cnf* cnf = nullptr;
  CHECK(pr_cnf_parse("p cnf 2 1\n1 2 0\n", &cnf) == PR_ERR_PARSE);
  CHECK(std::strlen(pr_last_error()) > 0);

  pr_apcover* ap = nullptr;
  CHECK(pr_apcover_parse("APCOVER\nJ 1 100000000\n", &ap) == PR_OK);
  char* count = nullptr;
  CHECK(pr_apcover_count(ap, &count) == PR_ERR_SCALE);
  pr_apcover_free(ap);
  return 0;
}

int test_verify_and_reports() {
  char* report = nullptr;
  int all_pass = 0;
  CHECK(pr_verify_pipeline("p cnf 2 1\n1 -2 1 0\n", "sat,apcover,sentence", 0, &report,
                           &all_pass) == PR_OK);
  CHECK(all_pass == 1);
  CHECK(std::string(report).find("PASS pipeline") != std::string::npos);
  pr_string_free(report);

  CHECK(pr_kpt_report(2, &report) == PR_OK);
  std::string rep(report);
  CHECK(rep.find("p 13 q 5") != std::string::npos);
  CHECK(rep.find("infeasible 3") != std::string::npos);
  CHECK(rep.find("midpoint-free yes") != std::string::npos);
  pr_string_free(report);

  int pass = 0;
  CHECK(pr_props_run("exactmath", 42, &report, &pass) == PR_OK);
  CHECK(pass == 1);
  pr_string_free(report);
  return 0;
}

int test_qbf_path() {
  pr_qbf* q = nullptr;
  CHECK(pr_qbf_parse("p cnf 2 2\na 1 0\ne 2 0\n2 1 1 0\n-2 -1 -1 0\n", &q) == PR_OK);
  pr_mapcover* m = nullptr;
  CHECK(pr_reduce_qbf_to_mapcover(q, &m) == PR_OK);
  int result = -1;
  CHECK(pr_mapcover_decide(m, &result) == PR_OK);
  CHECK(result == 1);
  pr_sentence* s = nullptr;
  CHECK(pr_mapcover_to_sentence(m, &s) == PR_OK);
  CHECK(pr_sentence_decide(s, &result) == PR_OK);
  CHECK(result == 1);
  pr_sentence_free(s);
  pr_mapcover_free(m);
  pr_qbf_free(q);
  return 0;
}

}  // namespace

int main() {
  pr_set_jobs(2);
  int rc = 0;
  rc |= test_pipeline();
  rc |= test_gip_path();
  rc |= test_errors();
  rc |= test_verify_and_reports();
  rc |= test_qbf_path();
  if (rc == 0) std::printf("capi tests passed\n");
  return rc;
}
