// Step functions on unit intervals and the amalgam norms built on them:
// construction rules, exact local norms, analytic-family continuations, the
// box bound for indicators, the pairing inequalities, the composed product
// bound, and the parameter-comparison embeddings.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <initializer_list>
#include <stdexcept>
#include <utility>

#include "granda/amalgam.hpp"
#include "granda/specfun.hpp"

using namespace granda;

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

template <typename Fn>
static void check_throws(const char* what, Fn fn) {
  bool threw = false;
  try {
    fn();
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  if (!threw) {
    std::printf("FAIL expected throw: %s\n", what);
    ++failures;
  }
}

static StepPiece piece(std::int64_t k,
                       std::initializer_list<StepCell> cells) {
  StepPiece p;
  p.k = k;
  p.cells = cells;
  return p;
}

int main() {
  const double kZeta32 = 2.6123753486854883;  // sum n^(-3/2)

  // --- construction rules ---
  {
    StepFunction sorted = make_step(
        IndexSet::Z, {piece(2, {{1.0, 1.0}}), piece(0, {{1.0, 1.0}})});
    CHECK(sorted.pieces.size() == 2 && sorted.pieces[0].k == 0 &&
          sorted.pieces[1].k == 2);
    check_throws("duplicate pieces", [] {
      make_step(IndexSet::Z, {piece(1, {{1.0, 1.0}}), piece(1, {{1.0, 2.0}})});
    });
    check_throws("widths must sum to one", [] {
      make_step(IndexSet::Z, {piece(0, {{0.5, 1.0}, {0.25, 2.0}})});
    });
    check_throws("nonpositive width", [] {
      make_step(IndexSet::Z, {piece(0, {{0.0, 1.0}, {1.0, 2.0}})});
    });
    check_throws("family needs a one-sided index set", [] {
      AnalyticFamily fam;
      fam.n0 = 1;
      fam.a = 2.0;
      make_step(IndexSet::Z, {}, fam);
    });
    check_throws("explicit pieces must stay below the family", [] {
      AnalyticFamily fam;
      fam.n0 = 3;
      fam.a = 2.0;
      make_step(IndexSet::N, {piece(3, {{1.0, 1.0}})}, fam);
    });
    check_throws("shrinking width exponent must be nonnegative", [] {
      AnalyticFamily fam;
      fam.kind = AnalyticFamily::Kind::Shrinking;
      fam.n0 = 1;
      fam.growth = -1.0;
      fam.gamma = -0.5;
      make_step(IndexSet::N, {}, fam);
    });
    StepFunction zero = make_step(IndexSet::Z, {});
    CHECK(zero.is_zero() && zero.finite_support());
  }

  // --- indicator of an interval, exact cell geometry ---
  {
    StepFunction chi = indicator_interval(-1.5, 2.25);
    CHECK(ess_sup(chi) == 1.0);
    CHECK_NEAR(integral_abs(chi), 3.75, 1e-15);
    GrandSequence loc = local_lp(chi, 2.0);
    CHECK_NEAR(value_at(loc, -2), std::sqrt(0.5), 1e-15);
    CHECK_NEAR(value_at(loc, -1), 1.0, 1e-15);
    CHECK_NEAR(value_at(loc, 0), 1.0, 1e-15);
    CHECK_NEAR(value_at(loc, 1), 1.0, 1e-15);
    CHECK_NEAR(value_at(loc, 2), 0.5, 1e-15);
    CHECK(value_at(loc, 3) == 0.0);
  }

  // --- local norms are exact cell sums ---
  {
    StepFunction g = make_step(
        IndexSet::Z, {piece(0, {{0.25, 2.0}, {0.75, 0.4}})});
    CHECK_NEAR(value_at(local_lp(g, 1.0), 0), 0.8, 1e-15);
    CHECK_NEAR(value_at(local_lp(g, 2.0), 0), std::sqrt(1.12), 1e-15);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(value_at(local_lp(g, inf), 0) == 2.0);
    check_throws("local exponent below one", [&] { local_lp(g, 0.5); });
  }

  // --- analytic families map to closed-form tails ---
  {
    AnalyticFamily plat;
    plat.kind = AnalyticFamily::Kind::Plateau;
    plat.n0 = 1;
    plat.a = 1.5;
    StepFunction g = make_step(IndexSet::N, {}, plat);
    GrandSequence loc = local_lp(g, 3.0);  // plateau: any p gives the value
    CHECK_NEAR(value_at(loc, 10), std::pow(10.0, -1.5), 1e-15);
    NormBracket s = lp_norm(loc, 1.0);
    CHECK(s.lower <= kZeta32 && kZeta32 <= s.upper);
    NormBracket ia = family_integral_abs(plat);
    CHECK(ia.lower <= kZeta32 && kZeta32 <= ia.upper);

    AnalyticFamily harm = plat;
    harm.a = 1.0;
    CHECK(std::isinf(family_integral_abs(harm).upper));

    AnalyticFamily shrink;
    shrink.kind = AnalyticFamily::Kind::Shrinking;
    shrink.n0 = 1;
    shrink.growth = -0.5;
    shrink.gamma = 1.0;
    StepFunction h = make_step(IndexSet::N, {}, shrink);
    // Local L^2 norm: (n^-1 over width n^-1)^(1/2) = n^(-1/2 - 1/2) = n^-1.
    CHECK_NEAR(value_at(local_lp(h, 2.0), 7), 1.0 / 7.0, 1e-15);
    // Local sup norm: the plateau value n^growth itself.
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_NEAR(value_at(local_lp(h, inf), 9), std::pow(9.0, -0.5), 1e-15);

    // Integral of a shrinking family: sum n^(growth - gamma).
    AnalyticFamily shrink2;
    shrink2.kind = AnalyticFamily::Kind::Shrinking;
    shrink2.n0 = 1;
    shrink2.growth = 0.5;
    shrink2.gamma = 2.0;
    NormBracket ib = family_integral_abs(shrink2);
    CHECK(ib.lower <= kZeta32 && kZeta32 <= ib.upper);
  }

  // --- the amalgam norm factors exactly through the local-norm sequence ---
  {
    StepFunction g = make_step(
        IndexSet::Z, {piece(-2, {{1.0, 0.7}}),
                      piece(0, {{0.5, 3.0}, {0.5, 1.0}}),
                      piece(4, {{0.25, 0.2}, {0.75, 2.5}})});
    AmalgamParams prm{2.0, 1.5, 0.75};
    GrandNormResult via_amalgam = amalgam_grand_norm(g, prm);
    GrandNormResult direct =
        grand_norm(local_lp(g, 2.0), GrandParams{1.5, 0.75});
    CHECK(std::memcmp(&via_amalgam.bracket.lower, &direct.bracket.lower,
                      sizeof(double)) == 0);
    CHECK(std::memcmp(&via_amalgam.bracket.upper, &direct.bracket.upper,
                      sizeof(double)) == 0);
    CHECK(via_amalgam.arg_best == direct.arg_best);
  }

  // --- box bound for indicators ---
  {
    AmalgamParams prm{7.0, 2.0, 1.0};
    double bound = char_fn_norm_bound(3, prm);
    CHECK_NEAR(bound, std::sqrt(6.0) * std::sqrt(psi_max()), 1e-15);
    // The full box [-3, 3) attains local norm 1 on each of its 6 intervals.
    StepFunction chi = indicator_interval(-3.0, 3.0);
    GrandNormResult r = amalgam_grand_norm(chi, prm);
    CHECK(r.bracket.upper <= bound + 1e-9 * bound);
    // Any sub-indicator sits below the box bound as well.
    StepFunction sub = indicator_interval(-1.25, 2.0);
    CHECK(amalgam_grand_norm(sub, prm).bracket.upper <= bound + 1e-9 * bound);
    check_throws("box radius must be positive", [&] {
      char_fn_norm_bound(0, prm);
    });
  }

  // --- pairing exponent ---
  {
    CHECK(std::isinf(pairing_exponent(1.0)));
    CHECK(pairing_exponent(2.0) == 2.0);
    CHECK_NEAR(pairing_exponent(4.0), 4.0 / 3.0, 1e-15);
    CHECK_NEAR(pairing_exponent(1.5), 3.0, 1e-15);
    check_throws("pairing exponent below one", [] { pairing_exponent(0.9); });
  }

  // --- pointwise product and scaling ---
  {
    StepFunction f = make_step(
        IndexSet::Z, {piece(0, {{0.5, 2.0}, {0.5, 1.0}}),
                      piece(1, {{1.0, 3.0}})});
    StepFunction g = indicator_interval(0.0, 1.0);
    StepFunction fg = product(f, g);
    CHECK_NEAR(integral_abs(fg), 1.5, 1e-15);  // only interval 0 survives
    CHECK_NEAR(integral_abs(scale(f, 2.5)), 2.5 * integral_abs(f), 1e-12);
  }

  // --- pairing inequalities on explicit functions ---
  {
    StepFunction g = scale(indicator_interval(0.0, 3.0), 2.0);
    StepFunction f = make_step(
        IndexSet::Z, {piece(0, {{0.5, 1.5}, {0.5, 0.25}}),
                      piece(2, {{1.0, 0.8}})});
    AmalgamParams prm{2.0, 2.0, 1.0};
    IneqReport rep = holder_integral_check(g, f, prm);
    CHECK(rep.status == CheckStatus::Pass);
    CHECK_NEAR(rep.lhs, integral_abs(product(g, f)), 1e-12);
    CHECK(rep.lhs <= rep.rhs + rep.slack_used);

    StepFunction chi = indicator_interval(0.0, 2.0);
    IneqReport rep2 = integral_over_set_bound(g, chi, prm);
    CHECK(rep2.status == CheckStatus::Pass);
    CHECK_NEAR(rep2.lhs, integral_abs(product(g, chi)), 1e-12);
  }

  // --- composed product bound ---
  {
    StepFunction f = make_step(
        IndexSet::Z, {piece(-1, {{1.0, 1.2}}),
                      piece(0, {{0.5, 2.0}, {0.5, 0.5}})});
    StepFunction g = make_step(
        IndexSet::Z, {piece(-1, {{0.25, 4.0}, {0.75, 1.0}}),
                      piece(0, {{1.0, 0.9}}),
                      piece(3, {{1.0, 5.0}})});
    ExponentTriple t;
    t.p1 = 2.0; t.q1 = 2.0;
    t.p2 = 2.0; t.q2 = 2.0;
    t.p3 = 1.0; t.q3 = 1.0;
    ProductCompositionReport rep =
        product_composition_check(f, g, t, 1.0, 1.0, 1.0);
    CHECK(rep.status == CheckStatus::Pass);
    CHECK(!rep.hypothesis_failed);
    CHECK(rep.local_residual <= 1e-12);
    CHECK(rep.sequence_residual <= 1e-12);
    CHECK(rep.lhs <= rep.rhs + rep.slack_used);
  }

  // --- parameter-comparison embeddings ---
  {
    StepFunction g = make_step(
        IndexSet::Z, {piece(-3, {{1.0, 0.4}}),
                      piece(0, {{0.5, 2.0}, {0.5, 1.0}}),
                      piece(2, {{0.2, 5.0}, {0.8, 0.1}})});

    EmbeddingReport r1 =
        embedding_check(EmbeddingKind::QScale, g, {2.0, 1.0, 1.0}, 2.0);
    CHECK(r1.status == CheckStatus::Pass);
    CHECK(r1.constant == 1.0);

    EmbeddingReport r2 =
        embedding_check(EmbeddingKind::ThetaScale, g, {2.0, 2.0, 0.5}, 1.5);
    CHECK(r2.status == CheckStatus::Pass);
    CHECK_NEAR(r2.constant, std::pow(psi_max(), (1.5 - 0.5) / 2.0), 1e-12);

    EmbeddingReport r3 =
        embedding_check(EmbeddingKind::LocalP, g, {2.0, 2.0, 1.0}, 1.0);
    CHECK(r3.status == CheckStatus::Pass);

    EmbeddingReport r4 =
        embedding_check(EmbeddingKind::PlainQ, g, {2.0, 2.0, 1.0}, 0.0);
    CHECK(r4.status == CheckStatus::Pass);

    EmbeddingReport r5 = embedding_check(EmbeddingKind::Sandwich, g,
                                         {2.0, 2.0, 1.0}, 0.5, 0.25);
    CHECK(r5.status == CheckStatus::Pass);
  }

  // --- small amalgam norm is the small norm of the local sequence ---
  {
    StepFunction f = make_step(
        IndexSet::Z, {piece(0, {{0.5, 2.0}, {0.5, 1.0}}),
                      piece(1, {{1.0, 3.0}})});
    AmalgamParams prm{2.0, 1.0, 1.0};
    SmallNormEstimate via = amalgam_small_norm(f, prm, 16, {}, 5);
    SmallNormEstimate direct =
        small_norm_upper(local_lp(f, 2.0), GrandParams{1.0, 1.0}, 16, {}, 5);
    CHECK(via.upper == direct.upper);
    CHECK(via.lower == direct.lower);
    check_throws("small norm needs finite support", [&] {
      AnalyticFamily fam;
      fam.n0 = 1;
      fam.a = 2.0;
      amalgam_small_norm(make_step(IndexSet::N, {}, fam), prm, 8);
    });
  }

  if (failures == 0) std::printf("test_amalgam: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
