/* presred C API: reduction pipeline from CNF/QBF instances through
 * AP-COVER, short Presburger sentences and integer-program instances,
 * with exact brute-force oracles.
 *
 * All functions return PR_OK on success; on failure pr_last_error() holds a
 * message for the calling thread.  Objects are opaque handles released with
 * their _free function; strings returned through char** are released with
 * pr_string_free.  Counts and values are decimal strings (they routinely
 * exceed 64 bits).
 */

#ifndef PRESRED_H
#define PRESRED_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  PR_OK = 0,
  PR_ERR_PARSE = 2,
  PR_ERR_SCALE = 3,
  PR_ERR_MISMATCH = 4,
  PR_ERR_INVALID = 5
} pr_status;

const char* pr_last_error(void);
void pr_string_free(char* s);

/* Worker threads for the facet enumeration; 1 by default. */
void pr_set_jobs(int jobs);

/* Point budget for the brute-force scan guards (default 10^7 for single
 * scans; combined products get ten times this). */
void pr_set_max_scale(long long scan_points);

typedef struct pr_cnf pr_cnf;
typedef struct pr_qbf pr_qbf;
typedef struct pr_apcover pr_apcover;
typedef struct pr_mapcover pr_mapcover;
typedef struct pr_sentence pr_sentence;
typedef struct pr_gip pr_gip;
typedef struct pr_bilevel pr_bilevel;
typedef struct pr_pareto pr_pareto;

/* Parsing and serialization (formats documented in docs/FORMATS.md). */
pr_status pr_cnf_parse(const char* dimacs, pr_cnf** out);
pr_status pr_qbf_parse(const char* qdimacs, pr_qbf** out);
pr_status pr_apcover_parse(const char* text, pr_apcover** out);
pr_status pr_mapcover_parse(const char* text, pr_mapcover** out);
pr_status pr_sentence_parse(const char* text, pr_sentence** out);
pr_status pr_gip_parse(const char* text, pr_gip** out);
pr_status pr_bilevel_parse(const char* text, pr_bilevel** out);
pr_status pr_pareto_parse(const char* text, pr_pareto** out);

pr_status pr_apcover_text(const pr_apcover* h, char** out);
pr_status pr_mapcover_text(const pr_mapcover* h, char** out);
pr_status pr_sentence_text(const pr_sentence* h, char** out);
pr_status pr_gip_text(const pr_gip* h, char** out);
pr_status pr_bilevel_text(const pr_bilevel* h, char** out);
pr_status pr_pareto_text(const pr_pareto* h, char** out);

void pr_cnf_free(pr_cnf* h);
void pr_qbf_free(pr_qbf* h);
void pr_apcover_free(pr_apcover* h);
void pr_mapcover_free(pr_mapcover* h);
void pr_sentence_free(pr_sentence* h);
void pr_gip_free(pr_gip* h);
void pr_bilevel_free(pr_bilevel* h);
void pr_pareto_free(pr_pareto* h);

/* Reductions.  parity_trick shifts the primes by one and covers the even
 * numbers, making uncovered points odd. */
pr_status pr_reduce_cnf_to_apcover(const pr_cnf* f, int parity_trick, pr_apcover** out);
pr_status pr_reduce_qbf_to_mapcover(const pr_qbf* f, pr_mapcover** out);
pr_status pr_apcover_to_sentence(const pr_apcover* inst, pr_sentence** out);
pr_status pr_mapcover_to_sentence(const pr_mapcover* inst, pr_sentence** out);
/* system is 1 (24 rows, x in Z^6) or 2 (<= 8400 rows, x in Z^3). */
pr_status pr_apcover_to_gip(const pr_apcover* inst, int system, pr_gip** out);
pr_status pr_apcover_to_bilevel(const pr_apcover* inst, pr_bilevel** out);
pr_status pr_apcover_to_pareto(const pr_apcover* inst, int parity_source, pr_pareto** out);

/* Decision and counting oracles; *result is 1 for true, 0 for false. */
pr_status pr_apcover_decide(const pr_apcover* inst, int* result);
pr_status pr_apcover_count(const pr_apcover* inst, char** count);
pr_status pr_mapcover_decide(const pr_mapcover* inst, int* result);
pr_status pr_sentence_decide(const pr_sentence* s, int* result);
pr_status pr_sentence_count(const pr_sentence* s, char** count);
pr_status pr_gip_decide(const pr_gip* g, int* result);
pr_status pr_gip_count(const pr_gip* g, char** count);
pr_status pr_bilevel_solve(const pr_bilevel* b, char** value);
/* min_g is a rational string "num/den"; the Pareto set is one outcome
 * triple per line. */
pr_status pr_pareto_solve(const pr_pareto* p, char** min_g, char** pareto_set);

/* Full verification of one CNF through the requested stages
 * (comma-separated subset of sat,apcover,sentence,gip1,gip2,bilevel,pareto).
 * *all_pass is 1 when every stage count agreed. */
pr_status pr_verify_pipeline(const char* dimacs, const char* stages, int parity_trick,
                             char** report, int* all_pass);

/* Fibonacci counterexample family report for 1 <= s <= 8. */
pr_status pr_kpt_report(int s, char** report);

/* Runs one seeded invariant suite ("all" runs every suite). */
pr_status pr_props_run(const char* suite, unsigned long long seed, char** report, int* pass);

#ifdef __cplusplus
}
#endif

#endif
