#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "granda/bracket.hpp"
#include "granda/sequence.hpp"

namespace granda {

// One constant cell of a unit-interval partition.
struct StepCell {
  double width = 0.0;
  double value = 0.0;
};

// Partition of [k, k+1) into finitely many constant cells.  Widths are
// positive and sum to 1; the partition order runs left to right.
struct StepPiece {
  std::int64_t k = 0;
  std::vector<StepCell> cells;
};

// Closed-form continuations over all intervals n >= n0.  Two shapes cover
// every analytic example we need:
//   * Plateau:   constant value n^(-a) * ln(n+1)^(-b) on the whole of
//                [n, n+1).  Its local L^p norm is the value itself for every
//                p, including p = infinity.
//   * Shrinking: value n^growth on [n, n + n^(-gamma)), zero on the rest of
//                the interval.  Local L^p norm is n^(growth - gamma/p).
struct AnalyticFamily {
  enum class Kind { Plateau, Shrinking };
  Kind kind = Kind::Plateau;
  std::int64_t n0 = 1;
  double a = 0.0;       // Plateau: power exponent
  double b = 0.0;       // Plateau: log exponent
  double growth = 0.0;  // Shrinking: value exponent
  double gamma = 0.0;   // Shrinking: support-width exponent, >= 0
};

// Piecewise-constant function on the unit intervals I_k = [k, k+1).
// Finitely many explicit pieces, optionally continued by an analytic family
// on all indices >= family->n0.  Intervals with no piece (and outside the
// family) carry the zero function.  All local integrals are exact sums; no
// quadrature appears anywhere downstream.
struct StepFunction {
  IndexSet index_set = IndexSet::Z;
  std::vector<StepPiece> pieces;  // sorted by k, unique
  std::optional<AnalyticFamily> family;

  bool is_zero() const { return pieces.empty() && !family; }
  bool finite_support() const { return !family; }
};

// Validating constructor.  Checks: indices in the index set, sorted unique
// pieces, positive cell widths summing to 1 per piece (tolerance 1e-12),
// finite values, and for a family: a one-sided index set, n0 >= 1, explicit
// pieces strictly below n0, gamma >= 0 for the shrinking kind.
StepFunction make_step(IndexSet set, std::vector<StepPiece> pieces,
                       std::optional<AnalyticFamily> family = std::nullopt);

// Indicator of [a, b) as a step function on Z; requires a < b and both
// finite.  Cells align with the integer grid, so widths are exact whenever
// the endpoints are representable.
StepFunction indicator_interval(double a, double b);

// Local L^p norms ||g * chi_{I_k}||_p as a sequence over the support.
// Explicit pieces are exact cell sums; a family maps to its closed-form
// power-log tail.  p may be +infinity (local sup norms).
GrandSequence local_lp(const StepFunction& g, double p);

// Largest |value| over positive-width cells (zero for the empty function).
// Requires finite support.
double ess_sup(const StepFunction& g);

// Integral of |g| over the line.  Requires finite support; exact.
double integral_abs(const StepFunction& g);

// Enclosure of the integral of |g| for a family continuation (partial sums
// plus tail bounds; upper is +infinity when the series diverges).
NormBracket family_integral_abs(const AnalyticFamily& fam,
                                const SumConfig& cfg = {});

// Pointwise product on the common cell refinement.  Both factors must have
// finite support; intervals covered by only one factor vanish.
StepFunction product(const StepFunction& f, const StepFunction& g);

// Scale every value by a constant.
StepFunction scale(const StepFunction& g, double c);

}  // namespace granda
