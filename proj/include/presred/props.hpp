#ifndef PRESRED_PROPS_HPP
#define PRESRED_PROPS_HPP

#include "presred/gip.hpp"
#include "presred/kpt.hpp"
#include "presred/optimize.hpp"
#include "presred/satred.hpp"

#include <random>
#include <string>
#include <vector>

namespace presred {

// Deterministic test randomness (seeded, engine-defined sequence).
class Rng {
 public:
  explicit Rng(unsigned long long seed) : eng_(seed) {}
  // Uniform in [lo, hi].
  long long pick(long long lo, long long hi) {
    return lo + static_cast<long long>(eng_() % static_cast<unsigned long long>(hi - lo + 1));
  }
  bool flip() { return (eng_() & 1) != 0; }

 private:
  std::mt19937_64 eng_;
};

Cnf3 random_cnf(Rng& rng, int num_vars, int num_clauses);
QbfInstance random_qbf(Rng& rng, int num_blocks, int vars_per_block, int num_clauses);
APCoverInstance random_normalized_apcover(Rng& rng, int max_k, int max_param);

// Fixed family of pipeline instances small enough for every brute oracle
// (single progressions whose continued-fraction terms stay tiny).
std::vector<APCoverInstance> tiny_pipeline_instances(std::size_t count);

struct PropResult {
  std::string suite;
  bool pass = false;
  int checks = 0;
  std::string detail;
};

// Stage-by-stage verification of one CNF: every requested stage runs next to
// its brute oracle and the parsimony counts must agree (bilevel and Pareto
// contribute their values and positivity instead of counts).
struct PipelineStage {
  std::string name;
  std::string value;
  bool agree = false;
};

struct PipelineReport {
  std::vector<PipelineStage> stages;
  bool all_pass = true;
  std::string text() const;
};

inline const std::vector<std::string> kAllPipelineStages = {
    "sat", "apcover", "sentence", "gip1", "gip2", "bilevel", "pareto"};

PipelineReport verify_pipeline(const Cnf3& f, const std::vector<std::string>& stages,
                               bool parity_trick);

std::vector<std::string> prop_suite_names();
PropResult run_prop_suite(const std::string& name, unsigned long long seed);
std::vector<PropResult> run_all_prop_suites(unsigned long long seed);

}  // namespace presred

#endif
