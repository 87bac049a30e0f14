#include "granda/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "granda/parallel.hpp"

namespace granda {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool index_in_set(IndexSet set, std::int64_t n) {
  switch (set) {
    case IndexSet::N: return n >= 1;
    case IndexSet::N0: return n >= 0;
    case IndexSet::Z: return true;
  }
  return false;
}

double term_st(std::int64_t n, double s, double t, double logoff = 0.0) {
  const double x = static_cast<double>(n);
  return std::exp(-s * std::log(x) - t * std::log(std::log(x + 1.0)) - logoff);
}

// Integral of x^(-s) over [lo, hi] (finite endpoints, s != 1 handled too).
double power_integral(double lo, double hi, double s) {
  if (s == 1.0) return std::log(hi / lo);
  return (std::pow(lo, 1.0 - s) - std::pow(hi, 1.0 - s)) / (s - 1.0);
}

}  // namespace

GrandSequence make_sequence(IndexSet set,
                            std::vector<std::pair<std::int64_t, double>> entries,
                            std::optional<PowerLogTail> tail) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!index_in_set(set, entries[i].first))
      throw std::invalid_argument("make_sequence: index outside index set");
    if (i > 0 && entries[i].first == entries[i - 1].first)
      throw std::invalid_argument("make_sequence: duplicate index");
    if (!std::isfinite(entries[i].second))
      throw std::invalid_argument("make_sequence: nonfinite entry value");
  }
  if (tail) {
    if (set == IndexSet::Z)
      throw std::invalid_argument("make_sequence: tails need a one-sided index set");
    if (tail->n0 < 1)
      throw std::invalid_argument("make_sequence: tail must start at n0 >= 1");
    if (!entries.empty() && entries.back().first >= tail->n0)
      throw std::invalid_argument("make_sequence: tail overlaps explicit entries");
    if (!(tail->a >= 0.0))
      throw std::invalid_argument("make_sequence: tail power exponent must be >= 0");
    if (tail->b < 0.0) {
      if (!(tail->a > 0.0))
        throw std::invalid_argument("make_sequence: growing log factor needs a > 0");
      // Nonincreasing from n0 on requires ln(n0+1) >= -b/a.
      if (std::log(static_cast<double>(tail->n0) + 1.0) < -tail->b / tail->a)
        throw std::invalid_argument(
            "make_sequence: tail with b < 0 starts before it is nonincreasing");
    }
  }
  GrandSequence x;
  x.index_set = set;
  x.entries = std::move(entries);
  x.tail = tail;
  return x;
}

double tail_term(const PowerLogTail& t, std::int64_t n) {
  return term_st(n, t.a, t.b);
}

double value_at(const GrandSequence& x, std::int64_t n) {
  auto it = std::lower_bound(
      x.entries.begin(), x.entries.end(), n,
      [](const auto& e, std::int64_t v) { return e.first < v; });
  if (it != x.entries.end() && it->first == n) return it->second;
  if (x.tail && n >= x.tail->n0) return tail_term(*x.tail, n);
  return 0.0;
}

double log_tail_integral_upper(double N, double s, double t) {
  if (s < 1.0) return kInf;
  if (s == 1.0) {
    if (t <= 1.0) return kInf;
    const double L = std::log(N);
    if (L < 1.0) return kInf;  // callers sum explicitly up to N >= 3 first
    return (1.0 - t) * std::log(L) - std::log(t - 1.0);
  }
  const double lnN = std::log(N);
  const double lnlnN1 = std::log(std::log(N + 1.0));
  if (t >= 0.0) {
    return -t * lnlnN1 + (1.0 - s) * lnN - std::log(s - 1.0);
  }
  // Growing log factor: two bounds, use the smaller.
  const double g = -t;
  double bound = kInf;
  const double delta = 0.5 * (s - 1.0);
  if (std::log(N + 1.0) >= g / delta) {
    bound = g * lnlnN1 + (1.0 - s) * lnN - std::log(delta);
  }
  // Substitute u = ln x; ln(x+1) <= u + 1 for x >= 1, then extend to a full
  // gamma integral.
  const double e = s - 1.0;
  bound = std::min(bound, e + std::lgamma(1.0 + g) - (1.0 + g) * std::log(e));
  return bound;
}

double log_tail_integral_lower(double N, double s, double t) {
  if (t == 0.0) {
    if (s > 1.0) return (1.0 - s) * std::log(N) - std::log(s - 1.0);
    return std::log(power_integral(N, N * 1e12, s));
  }
  // Piecewise lower bound over geometric decades [lo, 10 lo): freeze the log
  // factor at whichever endpoint is worst for its sign, so the integrand is
  // lowered pointwise on each decade before integrating the power part.
  double total = 0.0;
  double lo = N;
  for (int j = 0; j < 290; ++j) {
    const double hi = lo * 10.0;
    if (!std::isfinite(hi)) break;
    const double logf = (t > 0.0) ? std::pow(std::log(hi + 1.0), -t)
                                  : std::pow(std::log(lo), -t);
    const double seg = logf * power_integral(lo, hi, s);
    if (!std::isfinite(seg) || !std::isfinite(total + seg)) break;
    total += seg;
    lo = hi;
  }
  return std::log(total);
}

NormBracket tail_sum(std::int64_t n0, double s, double t, const SumConfig& cfg,
                     double log_offset) {
  const bool diverges = (s < 1.0) || (s == 1.0 && t <= 1.0);

  // Sum explicit terms in fixed-size batches; remainder via integral bounds.
  const std::int64_t batch = 8 * kSumChunk;
  std::int64_t next = n0;
  const std::int64_t min_explicit = std::max<std::int64_t>(n0 + 2, 3);
  const std::int64_t hard_end = n0 + cfg.horizon;
  double partial = 0.0;
  NormBracket out;
  while (true) {
    std::int64_t hi = std::min(hard_end, next + batch);
    if (hi < min_explicit) hi = std::min(hard_end, min_explicit);
    if (hi > next) {
      partial += chunked_sum(next, hi,
                             [&](std::int64_t n) { return term_st(n, s, t, log_offset); });
      next = hi;
    }
    const double N = static_cast<double>(next);
    if (diverges) {
      if (next >= hard_end) {
        out.lower = partial;
        if (cfg.integral_lower)
          out.lower += std::exp(log_tail_integral_lower(N, s, t) - log_offset);
        out.upper = kInf;
        return out;
      }
      continue;
    }
    double rem_up, rem_lo;
    if (t == 0.0 && cfg.integral_lower) {
      // Pure power remainder: x^{-s} is convex, so the trapezoid comparison
      // gives sum_{n>=N} f(n) >= f(N)/2 + int_N^inf f, and the midpoint rule
      // gives sum_{n>=N} f(n) <= int_{N-1/2}^inf f <= f(N-1/2)/2 + int_N^inf f.
      // The bracket gap shrinks like s*f(N)/(4N) instead of a whole f(N).
      const double base = std::exp(log_tail_integral_upper(N, s, t) - log_offset);
      rem_up = 0.5 * std::exp(-s * std::log(N - 0.5) - log_offset) + base;
      rem_lo = 0.5 * term_st(next, s, t, log_offset) + base;
    } else {
      rem_up = term_st(next, s, t, log_offset) +
               std::exp(log_tail_integral_upper(N, s, t) - log_offset);
      rem_lo = cfg.integral_lower ? std::exp(log_tail_integral_lower(N, s, t) - log_offset) : 0.0;
    }
    // Rounding slack for the explicit partial (standard chunked-summation
    // bound), so the bracket still encloses the exact sum of the terms.
    const double fp_err =
        2.3e-16 * partial *
        static_cast<double>(kSumChunk + (next - n0) / kSumChunk + 4);
    out.lower = std::max(0.0, partial + rem_lo - fp_err);
    out.upper = partial + rem_up + fp_err;
    if (!std::isfinite(out.upper)) {
      if (next >= hard_end) return out;
      continue;
    }
    if (out.width() <= cfg.rel_tol * std::max(out.lower, 1e-300)) return out;
    if (next >= hard_end) return out;
  }
}

NormBracket lp_power_sum(const GrandSequence& x, double p, const SumConfig& cfg) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_power_sum: requires p >= 1");
  double finite = 0.0;
  for (const auto& [n, v] : x.entries) {
    (void)n;
    finite += std::pow(std::fabs(v), p);
  }
  NormBracket out = NormBracket::point(finite);
  if (x.tail) out += tail_sum(x.tail->n0, p * x.tail->a, p * x.tail->b, cfg);
  return out;
}

NormBracket lp_norm(const GrandSequence& x, double p, const SumConfig& cfg) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: requires p >= 1");
  // Normalize by the sup so the power sum stays representable at large p.
  const double m = linf_norm(x);
  if (m == 0.0) return NormBracket::point(0.0);
  double finite = 0.0;
  for (const auto& [n, v] : x.entries) {
    (void)n;
    finite += std::pow(std::fabs(v) / m, p);
  }
  NormBracket sum = NormBracket::point(finite);
  if (x.tail)
    sum += tail_sum(x.tail->n0, p * x.tail->a, p * x.tail->b, cfg, p * std::log(m));
  return sum.pow(1.0 / p).scaled(m);
}

double linf_norm(const GrandSequence& x) {
  double m = 0.0;
  for (const auto& [n, v] : x.entries) {
    (void)n;
    m = std::max(m, std::fabs(v));
  }
  if (x.tail) m = std::max(m, tail_term(*x.tail, x.tail->n0));
  return m;
}

namespace {

// Exact x_n >= y_n over [lo, hi] where both values come from tails.
bool tails_dominate_window(const PowerLogTail& xt, const PowerLogTail& yt,
                           std::int64_t lo, std::int64_t hi) {
  for (std::int64_t n = lo; n <= hi; ++n) {
    if (tail_term(xt, n) < tail_term(yt, n)) return false;
  }
  return true;
}

}  // namespace

bool pointwise_dominates(const GrandSequence& x, const GrandSequence& y) {
  if (x.index_set != y.index_set)
    throw std::invalid_argument("pointwise_dominates: index sets differ");
  for (const auto& [n, v] : x.entries) {
    (void)n;
    if (v < 0.0) throw std::invalid_argument("pointwise_dominates: negative entry");
  }
  for (const auto& [n, v] : y.entries) {
    (void)n;
    if (v < 0.0) throw std::invalid_argument("pointwise_dominates: negative entry");
  }

  // All explicitly mentioned indices, compared exactly.
  for (const auto& [n, v] : y.entries) {
    (void)v;
    if (value_at(x, n) < value_at(y, n)) return false;
  }
  for (const auto& [n, v] : x.entries) {
    (void)v;
    if (value_at(x, n) < value_at(y, n)) return false;
  }

  if (!y.tail) return true;
  const PowerLogTail yt = *y.tail;

  if (!x.tail) return false;  // y has infinitely many positive terms, x does not
  const PowerLogTail xt = *x.tail;

  // Indices where y's tail is active but x's tail has not started must all be
  // explicit entries of x (already compared above); any gap index has x = 0.
  if (yt.n0 < xt.n0) {
    for (std::int64_t n = yt.n0; n < xt.n0; ++n) {
      auto it = std::lower_bound(
          x.entries.begin(), x.entries.end(), n,
          [](const auto& e, std::int64_t v) { return e.first < v; });
      if (it == x.entries.end() || it->first != n) return false;
    }
  }

  // Tail vs tail beyond both starts: explicit window plus a monotonicity
  // certificate for the log-ratio da*ln n + db*ln ln(n+1).
  const std::int64_t start = std::max(xt.n0, yt.n0);
  std::int64_t window_end = start + 2000;
  const double da = yt.a - xt.a;
  const double db = yt.b - xt.b;
  if (da < 0.0) return false;
  if (da == 0.0 && db < 0.0) return false;
  if (da > 0.0 && db < 0.0) {
    const double cross = std::exp(-db / da);
    if (cross > 1e7) return false;  // cannot certify at reasonable cost
    window_end = std::max<std::int64_t>(window_end, static_cast<std::int64_t>(cross) + 2);
  }
  return tails_dominate_window(xt, yt, start, window_end);
}

}  // namespace granda
