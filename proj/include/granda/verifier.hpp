#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "granda/grandnorm.hpp"

namespace granda {

// Shared knobs for every property suite.  Each case derives its own RNG
// stream from (seed, suite name, case index), so runs are deterministic and
// any failing case can be replayed in isolation.
struct SuiteConfig {
  std::uint64_t seed = 42;
  int cases = 100;
  double tolerance = 1e-9;  // absolute slack, scaled by max(1, magnitude)
  int budget = 24;          // decomposition-search budget where applicable

  // Parameter ranges for generated instances.
  double q_min = 1.0, q_max = 4.0;
  double theta_min = 0.25, theta_max = 4.0;
  double p_min = 1.0, p_max = 4.0;
  int max_support = 32;    // sequence support size
  int max_intervals = 16;  // step-function pieces
  int max_cells = 4;       // cells per piece

  OptimizerConfig opt;    // first attempt
  OptimizerConfig tight;  // one retry after an inconclusive verdict

  SuiteConfig() {
    tight.grid_points = 1200;
    tight.refine_tol = 1e-12;
    tight.refine_max_iter = 600;
    tight.sum.horizon = 4000000;
    tight.sum.rel_tol = 1e-10;
  }
};

struct CaseRecord {
  int index = 0;
  std::string digest;  // short hash of the generated inputs
  NormBracket lhs;
  NormBracket rhs;
  CheckStatus status = CheckStatus::Pass;
  double slack = 0.0;
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  int cases = 0;
  double tolerance = 0.0;
  std::vector<CaseRecord> records;  // in case-index order
  int passed = 0, failed = 0, inconclusive = 0;

  // Line-delimited records plus one trailing summary line; field order is
  // fixed, so identical runs give identical bytes.
  std::string to_records() const;
  std::string summary_line() const;
};

// Registered suites, in registry order.
std::vector<std::string> suite_names();

// Runs one suite; cases evaluate independently (concurrently when enabled)
// and the report order is fixed by the case index.
VerificationReport run_suite(const std::string& name, const SuiteConfig& cfg);

// Re-runs a single case of a suite (the replayer for failed records).
CaseRecord run_case(const std::string& name, const SuiteConfig& cfg, int index);

// Which suites exercise which verified claims.  The claim list enumerates
// everything in scope for this artifact; the self-test below keeps the
// registry honest when suites are added or renamed.
struct CoverageEntry {
  std::string claim;
  std::vector<std::string> suites;
};

const std::vector<CoverageEntry>& coverage_table();
bool coverage_complete(std::string* problem = nullptr);

// Numeric divergence evidence: a ladder of certified evaluations expected to
// exceed `threshold` with monotone growth.  The report records a growth-
// exponent fit where a power law is expected; it is evidence, never a proof.
struct DemoRow {
  double x = 0.0;      // eps, or truncation horizon
  double value = 0.0;  // certified lower evaluation
};

struct DivergenceReport {
  std::string family;
  std::vector<DemoRow> rows;
  double threshold = 0.0;
  bool crossed = false;
  bool monotone = false;
  double growth_fit = 0.0;  // least-squares slope of log value vs log x
  std::string note;
};

std::vector<std::string> demo_families();
DivergenceReport divergence_demo(const std::string& family, double threshold,
                                 const SumConfig& cfg = {});

}  // namespace granda
