#pragma once

#include <cstdint>
#include <string>

#include "granda/bracket.hpp"
#include "granda/grandnorm.hpp"
#include "granda/smallnorm.hpp"
#include "granda/stepfn.hpp"

namespace granda {

// Amalgam parameters: p is the local (interval-wise) exponent, q and theta
// parameterize the global sequence norm applied to the local norms.
struct AmalgamParams {
  double p = 1.0;
  double q = 1.0;
  double theta = 1.0;
};

// || k -> ||g chi_{I_k}||_p ||  under the grand sequence norm.  Factors
// exactly through the local-norm sequence, so brackets and divergence flags
// carry over unchanged.
GrandNormResult amalgam_grand_norm(const StepFunction& g, AmalgamParams params,
                                   const OptimizerConfig& cfg = {});

// Closed-form norm bound (2M)^(1/q) * psi_max^(theta/q), valid for the
// indicator of any measurable set inside [-M, M].
double char_fn_norm_bound(std::int64_t M, AmalgamParams params);

// Small-norm estimate of the local-norm sequence.  Finite support only.
SmallNormEstimate amalgam_small_norm(const StepFunction& f,
                                     AmalgamParams params, int budget,
                                     const OptimizerConfig& cfg = {},
                                     std::uint64_t seed = 0);

// Exponent conjugate to p for the pairing inequalities: p/(p-1), with
// p = 1 mapping to +infinity.
double pairing_exponent(double p);

// Three-state verdict for one inequality instance, with both sides and the
// slack that was granted recorded for the report line.
struct IneqReport {
  CheckStatus status = CheckStatus::Inconclusive;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 1.0;
  double slack_used = 0.0;
  std::string detail;
};

// integral |g f|  <=  grand-amalgam norm of g (exponent p) times the
// small-amalgam norm of f (pairing exponent p').  The left side is exact and
// both right factors are upper bounds, so a Fail verdict certifies a genuine
// violation.
IneqReport holder_integral_check(const StepFunction& g, const StepFunction& f,
                                 AmalgamParams params, double tolerance = 1e-9,
                                 int budget = 48,
                                 const OptimizerConfig& cfg = {},
                                 std::uint64_t seed = 0);

// integral of |g| over E  <=  small-amalgam norm of chi_E (pairing exponent)
// times the grand-amalgam norm of g.  E is passed as an indicator step
// function (values 0/1).
IneqReport integral_over_set_bound(const StepFunction& g,
                                   const StepFunction& chi_E,
                                   AmalgamParams params,
                                   double tolerance = 1e-9, int budget = 48,
                                   const OptimizerConfig& cfg = {},
                                   std::uint64_t seed = 0);

// ||fg|| at (p3,q3)  <=  c * C * ||f|| at (p1,q1) * ||g|| at (p2,q2), all
// with the same theta.  The claim decomposes into a local leg (per-interval
// Hoelder with constant C, needs 1/p3 = 1/p1 + 1/p2) and a sequence leg
// (constant c, needs 1/q3 = 1/q1 + 1/q2).  Both legs are checked on the
// given inputs; `hypothesis_failed` reports a certified violation of either
// leg, in which case the composed bound is not asserted.
struct ExponentTriple {
  double p1 = 1.0, q1 = 1.0;
  double p2 = 1.0, q2 = 1.0;
  double p3 = 1.0, q3 = 1.0;
};

struct ProductCompositionReport {
  CheckStatus status = CheckStatus::Inconclusive;
  bool hypothesis_failed = false;
  double lhs = 0.0;                // upper bound of ||fg||
  double rhs = 0.0;                // c*C times the product of factor lowers
  double local_residual = 0.0;     // worst per-interval excess of the local leg
  double sequence_residual = 0.0;  // certified excess of the sequence leg
  double slack_used = 0.0;
  std::string detail;
};

ProductCompositionReport product_composition_check(
    const StepFunction& f, const StepFunction& g, const ExponentTriple& t,
    double theta, double c, double C, double tolerance = 1e-9,
    const OptimizerConfig& cfg = {});

// Norm comparisons between neighbouring parameterizations, each with its
// explicit constant:
//   QScale     ||g|| at (p, q2), theta          <= ||g|| at (p, q), (q/q2) theta
//              for q2 >= q (constant 1);
//   ThetaScale ||g|| at (p, q), theta2          <= psi_max^((theta2-theta)/q)
//              * ||g|| at (p, q), theta for theta2 >= theta;
//   LocalP     ||g chi_I||_p2 <= ||g chi_I||_p  on every interval, p2 <= p
//              (unit measure; both sides exact);
//   PlainQ     ||g|| at (p, q), theta           <= psi_max^(theta/q)
//              * || local norms ||_q;
//   Sandwich   || local norms ||_{q(1+delta)}   <= delta^(-theta/(q(1+delta)))
//              * ||g||, and ||g|| <= psi_max^(theta/q)
//              * || local norms ||_{q(1-sigma)} for 0 < sigma < 1/q'
//              (the sigma leg is empty when q = 1).
enum class EmbeddingKind { QScale, ThetaScale, LocalP, PlainQ, Sandwich };

struct EmbeddingReport {
  EmbeddingKind kind = EmbeddingKind::QScale;
  CheckStatus status = CheckStatus::Inconclusive;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 1.0;
  double aux = 0.0;   // q2 / theta2 / p2 / unused / delta
  double aux2 = 0.0;  // sigma (Sandwich only)
  double slack_used = 0.0;
  std::string detail;
};

EmbeddingReport embedding_check(EmbeddingKind kind, const StepFunction& g,
                                AmalgamParams params, double aux,
                                double aux2 = 0.0, double tolerance = 1e-9,
                                const OptimizerConfig& cfg = {});

}  // namespace granda
