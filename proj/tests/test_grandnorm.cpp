// Grand sequence norm: certified brackets against independently computed
// reference values, exact scaling behavior, truncated/full equivalence,
// divergence detection, the power-log membership window, and the vanishing
// functional.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <initializer_list>
#include <vector>

#include "granda/grandnorm.hpp"
#include "granda/specfun.hpp"

using granda::GrandParams;
using granda::GrandSequence;
using granda::IndexSet;
using granda::NormBracket;
using granda::PowerLogTail;

static int failures = 0;

#define CHECK(cond)                                               \
  do {                                                            \
    if (!(cond)) {                                                \
      std::printf("FAIL %s:%d  %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

#define CHECK_NEAR(a, b, tol)                                           \
  do {                                                                  \
    const double va = (a), vb = (b);                                    \
    if (!(std::fabs(va - vb) <= (tol))) {                               \
      std::printf("FAIL %s:%d  %s = %.17g vs %s = %.17g (tol %g)\n",    \
                  __FILE__, __LINE__, #a, va, #b, vb, (double)(tol));   \
      ++failures;                                                       \
    }                                                                   \
  } while (0)

static bool contains(const NormBracket& b, double v, double tol) {
  return b.lower - tol <= v && v <= b.upper + tol;
}

int main() {
  // Reference values, 50-digit computation rounded to double.
  const double kPsiMax = 1.3210997620156175;
  const double kTwoOnes = 1.5889215463504398;   // entries (1,1), q=1, th=1
  const double kTwoOnesArg = 2.1595682831457236;
  const double kThreeOne = 3.4481887601104804;  // entries (3,1), q=2, th=1

  // --- single spike: norm is exactly psi_max^(theta/q) ---
  {
    GrandSequence spike = granda::make_sequence(IndexSet::Z, {{0, 1.0}});
    for (auto [q, th] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0},
                         {3.0, 0.5}}) {
      granda::GrandNormResult r = granda::grand_norm(spike, {q, th});
      const double expect = std::pow(granda::psi_max(), th / q);
      CHECK(contains(r.bracket, expect, 1e-12));
      CHECK(r.bracket.width() <= 1e-8 * expect);
      CHECK(!r.divergent);
    }
    granda::GrandNormResult r = granda::grand_norm(spike, {1.0, 1.0});
    CHECK(contains(r.bracket, kPsiMax, 1e-12));
    CHECK_NEAR(r.arg_best, granda::psi_argmax(), 1e-4);
  }

  // --- two-entry references ---
  {
    GrandSequence x = granda::make_sequence(IndexSet::N, {{1, 1.0}, {2, 1.0}});
    granda::GrandNormResult r = granda::grand_norm(x, {1.0, 1.0});
    CHECK(contains(r.bracket, kTwoOnes, 1e-12));
    // The certified lower end (best node evaluation) is very sharp; the
    // upper envelope converges linearly and stays a few 1e-5 away.
    CHECK_NEAR(r.bracket.lower, kTwoOnes, 1e-8 * kTwoOnes);
    CHECK(r.bracket.width() <= 2e-4 * kTwoOnes);
    CHECK_NEAR(r.arg_best, kTwoOnesArg, 1e-3);
  }
  {
    GrandSequence x = granda::make_sequence(IndexSet::N, {{1, 3.0}, {2, 1.0}});
    granda::GrandNormResult r = granda::grand_norm(x, {2.0, 1.0});
    CHECK(contains(r.bracket, kThreeOne, 1e-12));
    CHECK_NEAR(r.bracket.lower, kThreeOne, 1e-8 * kThreeOne);
    CHECK(r.bracket.width() <= 2e-4 * kThreeOne);
  }

  // --- norm properties on a fixed instance ---
  {
    GrandSequence x = granda::make_sequence(
        IndexSet::Z, {{-3, 0.25}, {0, -2.0}, {5, 1.5}});
    GrandParams prm{1.5, 0.75};
    granda::GrandNormResult base = granda::grand_norm(x, prm);

    // Power-of-two scaling commutes with the optimizer bit for bit: the
    // stopping rules are all relative.
    GrandSequence x8 = x;
    for (auto& [k, v] : x8.entries) v *= 8.0;
    granda::GrandNormResult scaled = granda::grand_norm(x8, prm);
    CHECK(std::memcmp(&scaled.bracket.lower, &(const double&)(8.0 * base.bracket.lower),
                      sizeof(double)) == 0);
    CHECK(scaled.bracket.upper == 8.0 * base.bracket.upper);

    // Signs never matter.
    GrandSequence xa = x;
    for (auto& [k, v] : xa.entries) v = std::fabs(v);
    granda::GrandNormResult abs = granda::grand_norm(xa, prm);
    CHECK(abs.bracket.lower == base.bracket.lower);
    CHECK(abs.bracket.upper == base.bracket.upper);

    // Zero sequence has norm zero.
    GrandSequence zero = granda::make_sequence(IndexSet::Z, {});
    granda::GrandNormResult z = granda::grand_norm(zero, prm);
    CHECK(z.bracket.lower == 0.0 && z.bracket.upper == 0.0);
  }

  // --- truncated range and the equivalence sandwich ---
  {
    GrandSequence x = granda::make_sequence(IndexSet::N, {{1, 1.0}, {2, 1.0}});
    GrandParams prm{1.0, 1.0};
    granda::GrandNormResult full = granda::grand_norm(x, prm);
    for (double eps0 : {0.05, 0.5, 2.0}) {
      granda::GrandNormResult tr = granda::grand_norm_truncated(x, prm, eps0);
      const double c = std::pow(granda::c_eps0(eps0), prm.theta / prm.q);
      CHECK(tr.bracket.lower <= full.bracket.upper + 1e-12);
      CHECK(full.bracket.lower <= c * tr.bracket.upper + 1e-9);

      granda::EquivalenceReport eq = granda::check_equivalence(x, prm, eps0);
      CHECK(eq.status == granda::CheckStatus::Pass);
    }
    // A cut past the maximizer loses nothing.
    granda::GrandNormResult tr = granda::grand_norm_truncated(x, prm, 100.0);
    CHECK(contains(tr.bracket, kTwoOnes, 1e-9));
  }
  {  // equivalence also holds with an analytic tail in play
    GrandSequence x = granda::make_sequence(IndexSet::N, {{1, 2.0}},
                                            PowerLogTail{2, 2.0, 0.0});
    granda::EquivalenceReport eq =
        granda::check_equivalence(x, {1.0, 1.0}, 0.25);
    CHECK(eq.status == granda::CheckStatus::Pass);
  }

  // --- divergence on the critical family ---
  {
    GrandSequence x =
        granda::make_sequence(IndexSet::N, {}, PowerLogTail{1, 1.0, 0.0});
    granda::GrandNormResult weak = granda::grand_norm(x, {1.0, 0.5});
    CHECK(weak.divergent);
    CHECK(std::isinf(weak.bracket.upper));
    CHECK(weak.bracket.lower > 1.0);  // certified growth before the cutoff

    granda::GrandNormResult strong = granda::grand_norm(x, {1.0, 2.0});
    CHECK(!strong.divergent);
    CHECK(std::isfinite(strong.bracket.upper));

    // Certified evaluations grow as eps shrinks in the divergent case.
    granda::SumConfig scfg;
    double prev = 0.0;
    for (double eps : {0.1, 0.01, 0.001}) {
      const double v =
          granda::objective_certified_lower(x, {1.0, 0.5}, eps, scfg);
      CHECK(v > prev);
      prev = v;
    }
    CHECK(prev > 5.0);
  }

  // --- power-log membership window [(1-theta)/q, 1/q] ---
  {
    GrandParams prm{2.0, 0.5};  // window [0.25, 0.5]
    auto verdict = [&](double a) {
      return granda::powerlog_membership(prm, a, false, 2.0);
    };
    granda::MembershipVerdict inside = verdict(0.375);
    CHECK(inside.member && inside.evidence_consistent);
    granda::MembershipVerdict lo = verdict(0.25);  // boundary included
    CHECK(lo.member && lo.evidence_consistent);
    granda::MembershipVerdict hi = verdict(0.5);  // boundary included
    CHECK(hi.member && hi.evidence_consistent);
    granda::MembershipVerdict below = verdict(0.05);
    CHECK(!below.member && below.evidence_consistent);
    CHECK(below.ladder.size() >= 3);  // rising certified ladder was recorded
    granda::MembershipVerdict above = verdict(0.8);
    CHECK(!above.member && above.evidence_consistent);
    CHECK(std::isfinite(above.evidence.upper));
  }
  {  // log-free family: member exactly when theta >= 1
    granda::MembershipVerdict in =
        granda::powerlog_membership({2.0, 1.0}, 0.0, true, 2.0);
    CHECK(in.member && in.evidence_consistent);
    granda::MembershipVerdict in2 =
        granda::powerlog_membership({1.0, 1.5}, 0.0, true, 2.0);
    CHECK(in2.member && in2.evidence_consistent);
    granda::MembershipVerdict out =
        granda::powerlog_membership({1.0, 0.5}, 0.0, true, 2.0);
    CHECK(!out.member && out.evidence_consistent);
  }

  // --- vanishing functional along a shrinking eps ladder ---
  {
    const std::vector<double> ladder = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12};
    // Geometric decay: eps^theta * sum s_n^{q(1+eps)} -> 0.
    GrandSequence fast = granda::make_sequence(
        IndexSet::N, {{1, 0.5}, {2, 0.25}, {3, 0.125}});
    granda::VanishingReport fr =
        granda::vanishing_limit(fast, {1.0, 1.0}, ladder, 1e-2);
    CHECK(fr.verdict == "vanishing");

    // Critical tail: the power sum grows like 1/eps, theta = 1/2 cannot
    // push the product to zero.
    GrandSequence crit =
        granda::make_sequence(IndexSet::N, {}, PowerLogTail{1, 1.0, 0.0});
    granda::VanishingReport cr =
        granda::vanishing_limit(crit, {1.0, 0.5}, ladder, 1e-2);
    CHECK(cr.verdict == "not-vanishing");

    // Larger theta dominates the same growth.
    granda::VanishingReport vr =
        granda::vanishing_limit(crit, {1.0, 2.0}, ladder, 1e-2);
    CHECK(vr.verdict == "vanishing");

    // A sequence whose power sum diverges at every eps.
    GrandSequence div =
        granda::make_sequence(IndexSet::N, {}, PowerLogTail{1, 0.25, 0.0});
    granda::VanishingReport dr =
        granda::vanishing_limit(div, {1.0, 1.0}, ladder, 1e-2);
    CHECK(dr.verdict == "divergent");
  }

  if (failures == 0) std::printf("test_grandnorm: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
