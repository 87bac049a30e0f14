// Sequence model: construction rules, pointwise values, certified power-sum
// brackets against independently computed zeta values, norm consistency, and
// the dominance certificate.

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include "granda/sequence.hpp"

using granda::GrandSequence;
using granda::IndexSet;
using granda::NormBracket;
using granda::PowerLogTail;
using granda::SumConfig;

static int failures = 0;

#define CHECK(cond)                                               \
  do {                                                            \
    if (!(cond)) {                                                \
      std::printf("FAIL %s:%d  %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void check_throws(const char* what, void (*fn)()) {
  bool threw = false;
  try {
    fn();
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  if (!threw) {
    std::printf("FAIL expected invalid_argument: %s\n", what);
    ++failures;
  }
}

static bool contains(const NormBracket& b, double v, double tol) {
  return b.lower - tol <= v && v <= b.upper + tol;
}

int main() {
  // Reference sums, 50-digit computation rounded to double.
  const double kZeta2 = 1.6449340668482264;
  const double kZeta15 = 2.6123753486854883;
  const double kZeta3 = 1.2020569031595943;
  const double kSqrtZeta15 = 1.6162844269142385;

  // --- construction rules ---
  check_throws("duplicate index", [] {
    granda::make_sequence(IndexSet::Z, {{3, 1.0}, {3, 2.0}});
  });
  check_throws("index outside N", [] {
    granda::make_sequence(IndexSet::N, {{0, 1.0}});
  });
  check_throws("tail on Z", [] {
    granda::make_sequence(IndexSet::Z, {}, PowerLogTail{1, 1.0, 0.0});
  });
  check_throws("tail overlapping entries", [] {
    granda::make_sequence(IndexSet::N, {{5, 1.0}}, PowerLogTail{4, 1.0, 0.0});
  });
  check_throws("negative power exponent", [] {
    granda::make_sequence(IndexSet::N, {}, PowerLogTail{1, -0.5, 0.0});
  });
  check_throws("growing log factor from n0 = 1", [] {
    granda::make_sequence(IndexSet::N, {}, PowerLogTail{1, 0.25, -2.0});
  });
  // Same growing log factor is fine once the start index is late enough.
  {
    const std::int64_t n0 =
        static_cast<std::int64_t>(std::ceil(std::exp(2.0 / 0.25))) + 1;
    GrandSequence x =
        granda::make_sequence(IndexSet::N, {}, PowerLogTail{n0, 0.25, -2.0});
    // Nonincreasing across the first few steps.
    double prev = granda::tail_term(*x.tail, n0);
    for (std::int64_t n = n0 + 1; n < n0 + 5; ++n) {
      const double v = granda::tail_term(*x.tail, n);
      CHECK(v <= prev);
      prev = v;
    }
  }

  // Entries come back sorted regardless of input order.
  {
    GrandSequence x =
        granda::make_sequence(IndexSet::Z, {{4, 1.0}, {-2, 3.0}, {0, 2.0}});
    CHECK(x.entries[0].first == -2 && x.entries[2].first == 4);
  }

  // --- pointwise values ---
  {
    GrandSequence x = granda::make_sequence(IndexSet::N, {{1, 5.0}, {2, 0.5}},
                                            PowerLogTail{10, 1.0, 0.0});
    CHECK(granda::value_at(x, 1) == 5.0);
    CHECK(granda::value_at(x, 2) == 0.5);
    CHECK(granda::value_at(x, 3) == 0.0);  // between entries and tail
    CHECK(std::fabs(granda::value_at(x, 10) - 0.1) < 1e-16);
    CHECK(std::fabs(granda::value_at(x, 100) - 0.01) < 1e-17);
    CHECK(granda::linf_norm(x) == 5.0);
  }
  {  // sup realized by the tail's first term when entries are small
    GrandSequence x = granda::make_sequence(IndexSet::N, {{1, 0.01}},
                                            PowerLogTail{3, 1.0, 0.0});
    CHECK(std::fabs(granda::linf_norm(x) - 1.0 / 3.0) < 1e-17);
  }

  // --- certified power sums against zeta references ---
  {
    GrandSequence x =
        granda::make_sequence(IndexSet::N, {}, PowerLogTail{1, 1.0, 0.0});
    NormBracket s2 = granda::lp_power_sum(x, 2.0);
    CHECK(contains(s2, kZeta2, 0.0));
    CHECK(s2.width() <= 1e-7 * kZeta2);

    NormBracket s3 = granda::lp_power_sum(x, 3.0);
    CHECK(contains(s3, kZeta3, 0.0));
    CHECK(s3.width() <= 1e-7 * kZeta3);

    // p = 1 is the harmonic series: divergent.
    NormBracket s1 = granda::lp_power_sum(x, 1.0);
    CHECK(std::isinf(s1.upper));
    CHECK(s1.lower > 10.0);  // horizon partial plus integral lower bound
  }
  {
    GrandSequence x =
        granda::make_sequence(IndexSet::N, {}, PowerLogTail{1, 1.5, 0.0});
    NormBracket s = granda::lp_power_sum(x, 1.0);
    CHECK(contains(s, kZeta15, 0.0));
    CHECK(s.width() <= 1e-7 * kZeta15);
    // The same sum through the norm: ||x||_1 = zeta(3/2).
    NormBracket n1 = granda::lp_norm(x, 1.0);
    CHECK(contains(n1, kZeta15, 1e-12));
  }
  {  // ||n^(-3/4)||_2 = sqrt(zeta(3/2))
    GrandSequence x =
        granda::make_sequence(IndexSet::N, {}, PowerLogTail{1, 0.75, 0.0});
    NormBracket n2 = granda::lp_norm(x, 2.0);
    CHECK(contains(n2, kSqrtZeta15, 1e-12));
    CHECK(n2.width() <= 1e-6);
  }

  // Critical line with a log factor: n^(-1) ln(n+1)^(-t) converges for t > 1
  // and diverges for t <= 1.
  {
    GrandSequence conv =
        granda::make_sequence(IndexSet::N, {}, PowerLogTail{2, 1.0, 1.5});
    NormBracket s = granda::lp_power_sum(conv, 1.0);
    CHECK(std::isfinite(s.upper));
    CHECK(s.lower > 0.0);

    GrandSequence div =
        granda::make_sequence(IndexSet::N, {}, PowerLogTail{2, 1.0, 1.0});
    CHECK(std::isinf(granda::lp_power_sum(div, 1.0).upper));
  }

  // Entries and tail combine additively in the power sum.
  {
    GrandSequence mix = granda::make_sequence(IndexSet::N, {{1, 2.0}},
                                              PowerLogTail{2, 1.0, 0.0});
    NormBracket s = granda::lp_power_sum(mix, 2.0);
    const double expect = 4.0 + (kZeta2 - 1.0);
    CHECK(contains(s, expect, 1e-12));
  }

  // Sum brackets stay consistent when the horizon shrinks: wider, but still
  // enclosing the same value.
  {
    GrandSequence x =
        granda::make_sequence(IndexSet::N, {}, PowerLogTail{1, 1.1, 0.0});
    SumConfig tight;
    SumConfig coarse;
    coarse.horizon = 2000;
    NormBracket a = granda::lp_power_sum(x, 2.0, tight);
    NormBracket b = granda::lp_power_sum(x, 2.0, coarse);
    CHECK(b.lower <= a.lower + 1e-12);
    CHECK(a.upper <= b.upper + 1e-12);
  }

  // Without the integral lower bound the bracket keeps only the partial sum.
  {
    GrandSequence x =
        granda::make_sequence(IndexSet::N, {}, PowerLogTail{1, 1.0, 0.0});
    SumConfig no_lower;
    no_lower.integral_lower = false;
    no_lower.horizon = 1000;
    NormBracket s = granda::lp_power_sum(x, 2.0, no_lower);
    CHECK(s.lower < kZeta2);
    CHECK(s.upper >= kZeta2);
  }

  // --- dominance certificate ---
  {
    GrandSequence strong =
        granda::make_sequence(IndexSet::N, {}, PowerLogTail{1, 1.0, 0.0});
    GrandSequence weak =
        granda::make_sequence(IndexSet::N, {}, PowerLogTail{1, 1.2, 0.0});
    CHECK(granda::pointwise_dominates(strong, weak));
    CHECK(!granda::pointwise_dominates(weak, strong));

    GrandSequence a = granda::make_sequence(IndexSet::Z, {{0, 1.0}, {3, 2.0}});
    GrandSequence b = granda::make_sequence(IndexSet::Z, {{0, 0.5}, {3, 2.0}});
    CHECK(granda::pointwise_dominates(a, b));
    CHECK(!granda::pointwise_dominates(b, a));

    GrandSequence c = granda::make_sequence(IndexSet::Z, {{7, 0.1}});
    CHECK(!granda::pointwise_dominates(a, c));  // support not covered
  }

  if (failures == 0) std::printf("test_sequence: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
