#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "granda/amalgam.hpp"
#include "granda/stepfn.hpp"

namespace granda {

// Pointwise multiplication by a compactly supported step symbol.  The
// operator norm on the amalgam space equals the sup of |g|: the upper bound
// holds interval-wise, and concentrating the argument on the flattest part
// of the symbol attains it.
StepFunction multiplier_apply(const StepFunction& g, const StepFunction& f);

struct OpNormReport {
  double upper = 0.0;        // exact sup of |g|
  double lower = 0.0;        // best certified trial ratio ||gf|| / ||f||
  double best_delta = 0.0;   // ladder level of the best trial (0 = peak cell)
  int trials = 0;
  StepFunction witness;      // argument attaining `lower`
  std::string detail;
};

// Certified two-sided operator-norm estimate.  The lower bound walks a
// ladder of super-level sets {|g| >= (1-delta) sup|g|} plus the peak cell
// itself and keeps the best ratio of norm brackets.
OpNormReport op_norm_estimate(const StepFunction& g, AmalgamParams params,
                              const OptimizerConfig& cfg = {});

struct IsometryReport {
  bool structural = false;   // |g| == 1 on every positive-width cell
  CheckStatus trials = CheckStatus::Pass;  // Fail = certified norm change
  int trials_run = 0;
  std::int64_t witness_k = 0;   // violating interval (structural = false)
  double witness_value = 0.0;   // its cell value
  double worst_gap = 0.0;       // largest certified |  ||gf|| - ||f||  |
  std::string detail;
};

// Checks whether multiplication by g preserves norms of arguments supported
// inside supp(g): structurally (|g| = 1 cell by cell, with a witness cell
// otherwise) and empirically (random arguments on the cells of g, plus the
// witness cell itself).  The two views must agree; `trials` reports Fail
// only on a certified norm change.
IsometryReport isometry_check(const StepFunction& g, AmalgamParams params,
                              int trials, std::uint64_t seed = 0,
                              double tolerance = 1e-9,
                              const OptimizerConfig& cfg = {});

// integral |g f| <= small-amalgam norm of the symbol (pairing exponent)
// times the grand-amalgam norm of the argument.
IneqReport l1_bound_check(const StepFunction& g, const StepFunction& f,
                          AmalgamParams params, double tolerance = 1e-9,
                          int budget = 48, const OptimizerConfig& cfg = {},
                          std::uint64_t seed = 0);

// Truncation ladder for an unbounded symbol (1+|k|)^growth: the restriction
// to [-M, M) is a bona fide multiplier for every M, but the operator norms
// escape to infinity, so no multiplier extends the full symbol.
struct TruncationRow {
  std::int64_t M = 0;
  double op_upper = 0.0;
  double op_lower = 0.0;
};

struct TruncationDemo {
  std::vector<TruncationRow> rows;
  bool unbounded = false;  // norms grew by > 10x across the ladder
};

TruncationDemo truncation_demo(double growth, const std::vector<std::int64_t>& Ms,
                               AmalgamParams params,
                               const OptimizerConfig& cfg = {});

}  // namespace granda
