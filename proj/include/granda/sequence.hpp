#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "granda/bracket.hpp"

namespace granda {

enum class IndexSet { N, N0, Z };

// Analytic tail x_n = n^(-a) * ln(n+1)^(-b) for n >= n0. Terms must be
// positive and nonincreasing: a >= 0, and b < 0 is accepted only with a > 0
// and n0 large enough that the power decay already dominates the growing log
// factor (n0 >= exp(-b/a) - 1).
struct PowerLogTail {
  std::int64_t n0 = 1;
  double a = 0.0;
  double b = 0.0;
};

// Finitely many explicit entries plus an optional analytic tail. Entries are
// kept sorted by index with no duplicates; indices outside the explicit part
// and below any tail carry the value 0.
struct GrandSequence {
  IndexSet index_set = IndexSet::N;
  std::vector<std::pair<std::int64_t, double>> entries;
  std::optional<PowerLogTail> tail;

  bool is_zero() const { return entries.empty() && !tail; }
};

// Validating constructor; throws std::invalid_argument on malformed input.
GrandSequence make_sequence(IndexSet set,
                            std::vector<std::pair<std::int64_t, double>> entries,
                            std::optional<PowerLogTail> tail = std::nullopt);

double tail_term(const PowerLogTail& t, std::int64_t n);

// Value of x at index n (0 off the explicit part and tail).
double value_at(const GrandSequence& x, std::int64_t n);

struct SumConfig {
  std::int64_t horizon = 1000000;  // max explicitly summed tail terms
  double rel_tol = 1e-8;           // early-stop bracket width target
  // Add the integral-comparison lower bound of the remainder to the bracket's
  // lower end (valid because tail models are nonincreasing). Divergence
  // ladders rely on it; switching it off keeps plain partial sums.
  bool integral_lower = true;
};

// Enclosure of sum_n |x_n|^p (p >= 1). The explicit part is summed exactly;
// a tail contributes partial sums plus an integral-comparison remainder
// bound, and upper = +inf when the tail series diverges (p*a < 1, or
// p*a == 1 with p*b <= 1).
NormBracket lp_power_sum(const GrandSequence& x, double p, const SumConfig& cfg = {});

// Enclosure of the l^p norm, p >= 1: lp_power_sum(...)^(1/p).
NormBracket lp_norm(const GrandSequence& x, double p, const SumConfig& cfg = {});

// Supremum norm; exact (tails are nonincreasing, so the tail contributes its
// first term).
double linf_norm(const GrandSequence& x);

// True when x_n >= y_n for every index; both sequences must be entrywise
// nonnegative and share the index set. Tail-vs-tail comparison combines an
// explicit window with a monotone log-ratio certificate; returns false when
// domination cannot be certified.
bool pointwise_dominates(const GrandSequence& x, const GrandSequence& y);

// --- building blocks shared by the norm modules ---

// Enclosure of sum_{n >= n0} exp(-log_offset) * n^(-s) * ln(n+1)^(-t).
// Splits into an exact partial sum and an integral-comparison remainder; the
// offset lets callers renormalize so that terms stay representable at very
// large exponents.
NormBracket tail_sum(std::int64_t n0, double s, double t, const SumConfig& cfg,
                     double log_offset = 0.0);

// ln of an upper bound of the integral of x^(-s) ln(x+1)^(-t) over [N, inf);
// +inf when the integral diverges.
double log_tail_integral_upper(double N, double s, double t);

// ln of a certified lower bound of the same integral (-inf when nothing
// usable). For divergent integrals this returns a finite, arbitrarily
// extendable truncation, which divergence-evidence ladders rely on.
double log_tail_integral_lower(double N, double s, double t);

}  // namespace granda
