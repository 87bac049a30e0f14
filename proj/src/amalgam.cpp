#include "granda/amalgam.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "granda/specfun.hpp"

namespace granda {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_params(AmalgamParams params) {
  if (!(params.p >= 1.0) && !std::isinf(params.p))
    throw std::invalid_argument("amalgam: local exponent must be >= 1");
  if (!(params.q >= 1.0) || !std::isfinite(params.q))
    throw std::invalid_argument("amalgam: global exponent must be >= 1");
  if (!(params.theta > 0.0) || !std::isfinite(params.theta))
    throw std::invalid_argument("amalgam: theta must be positive");
}

// Pass when the left enclosure sits below the scaled right one, Fail when it
// certifiably exceeds it; anything the brackets cannot separate stays
// Inconclusive so the caller can retry tighter.
CheckStatus order_status(const NormBracket& lhs, const NormBracket& rhs,
                         double slack) {
  if (lhs.upper <= rhs.lower + slack) return CheckStatus::Pass;
  if (lhs.lower > rhs.upper + slack) return CheckStatus::Fail;
  return CheckStatus::Inconclusive;
}

double rel_slack(double tolerance, double scale) {
  if (!std::isfinite(scale)) scale = 1.0;
  return tolerance * std::max(1.0, std::abs(scale));
}

// Shared core of the two pairing inequalities: exact integral on the left,
// product of certified upper bounds on the right.
IneqReport pairing_check(const StepFunction& g, const StepFunction& f,
                         AmalgamParams params, double tolerance, int budget,
                         const OptimizerConfig& cfg, std::uint64_t seed,
                         const char* label) {
  require_params(params);
  if (!g.finite_support() || !f.finite_support())
    throw std::invalid_argument("pairing check: requires finite support");

  IneqReport rep;
  rep.lhs = integral_abs(product(g, f));

  GrandNormResult gn = amalgam_grand_norm(g, params, cfg);
  AmalgamParams dual{pairing_exponent(params.p), params.q, params.theta};
  SmallNormEstimate sn = amalgam_small_norm(f, dual, budget, cfg, seed);
  rep.rhs = gn.bracket.upper * sn.upper;
  if (gn.divergent) rep.rhs = kInf;

  rep.slack_used = rel_slack(tolerance, rep.rhs);
  // The left side is exact and the right side only over-estimates, so a
  // violation here is a genuine one: no inconclusive band is needed.
  rep.status = (rep.lhs <= rep.rhs + rep.slack_used) ? CheckStatus::Pass
                                                     : CheckStatus::Fail;
  std::ostringstream os;
  os << label << ": integral " << rep.lhs << " vs " << rep.rhs;
  rep.detail = os.str();
  return rep;
}

}  // namespace

GrandNormResult amalgam_grand_norm(const StepFunction& g, AmalgamParams params,
                                   const OptimizerConfig& cfg) {
  require_params(params);
  return grand_norm(local_lp(g, params.p), GrandParams{params.q, params.theta},
                    cfg);
}

double char_fn_norm_bound(std::int64_t M, AmalgamParams params) {
  require_params(params);
  if (M < 1) throw std::invalid_argument("char_fn_norm_bound: M must be >= 1");
  return std::pow(2.0 * static_cast<double>(M), 1.0 / params.q) *
         std::pow(psi_max(), params.theta / params.q);
}

SmallNormEstimate amalgam_small_norm(const StepFunction& f,
                                     AmalgamParams params, int budget,
                                     const OptimizerConfig& cfg,
                                     std::uint64_t seed) {
  require_params(params);
  if (!f.finite_support())
    throw std::invalid_argument("amalgam_small_norm: requires finite support");
  return small_norm_upper(local_lp(f, params.p),
                          GrandParams{params.q, params.theta}, budget, cfg,
                          seed);
}

double pairing_exponent(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("pairing_exponent: p must be >= 1");
  if (p == 1.0) return kInf;
  return conjugate_exponent(p);
}

IneqReport holder_integral_check(const StepFunction& g, const StepFunction& f,
                                 AmalgamParams params, double tolerance,
                                 int budget, const OptimizerConfig& cfg,
                                 std::uint64_t seed) {
  return pairing_check(g, f, params, tolerance, budget, cfg, seed,
                       "holder-integral");
}

IneqReport integral_over_set_bound(const StepFunction& g,
                                   const StepFunction& chi_E,
                                   AmalgamParams params, double tolerance,
                                   int budget, const OptimizerConfig& cfg,
                                   std::uint64_t seed) {
  for (const StepPiece& piece : chi_E.pieces)
    for (const StepCell& c : piece.cells)
      if (c.value != 0.0 && c.value != 1.0)
        throw std::invalid_argument(
            "integral_over_set_bound: E must be passed as a 0/1 indicator");
  return pairing_check(g, chi_E, params, tolerance, budget, cfg, seed,
                       "integral-over-set");
}

ProductCompositionReport product_composition_check(
    const StepFunction& f, const StepFunction& g, const ExponentTriple& t,
    double theta, double c, double C, double tolerance,
    const OptimizerConfig& cfg) {
  for (double e : {t.p1, t.q1, t.p2, t.q2, t.p3, t.q3})
    if (!(e >= 1.0) || !std::isfinite(e))
      throw std::invalid_argument("product_composition_check: exponents >= 1");
  if (!(theta > 0.0) || !(c > 0.0) || !(C > 0.0))
    throw std::invalid_argument("product_composition_check: bad constants");
  if (!f.finite_support() || !g.finite_support())
    throw std::invalid_argument(
        "product_composition_check: requires finite support");

  ProductCompositionReport rep;
  std::ostringstream os;

  GrandSequence u = local_lp(f, t.p1);
  GrandSequence v = local_lp(g, t.p2);
  GrandSequence w = local_lp(product(f, g), t.p3);

  // Local leg: on every interval the product norm must sit below C times the
  // product of the factor norms.  All three numbers are exact cell sums.
  for (const auto& [k, wk] : w.entries) {
    double uk = value_at(u, k);
    double vk = value_at(v, k);
    double excess = wk - C * uk * vk;
    if (excess > rep.local_residual) rep.local_residual = excess;
    if (excess > rel_slack(tolerance, C * uk * vk)) {
      rep.hypothesis_failed = true;
      os << "local leg fails at interval " << k << " (excess " << excess
         << "); ";
    }
  }

  GrandParams pw{t.q3, theta}, pu{t.q1, theta}, pv{t.q2, theta};
  GrandNormResult gw = grand_norm(w, pw, cfg);
  GrandNormResult gu = grand_norm(u, pu, cfg);
  GrandNormResult gv = grand_norm(v, pv, cfg);

  // Sequence leg: certified excess of ||w|| over c ||u|| ||v||.
  double seq_rhs_hi = c * gu.bracket.upper * gv.bracket.upper;
  rep.sequence_residual = std::max(0.0, gw.bracket.lower - seq_rhs_hi);
  if (rep.sequence_residual > rel_slack(tolerance, seq_rhs_hi)) {
    rep.hypothesis_failed = true;
    os << "sequence leg fails (excess " << rep.sequence_residual << "); ";
  }

  rep.lhs = gw.bracket.upper;
  rep.rhs = c * C * gu.bracket.lower * gv.bracket.lower;
  rep.slack_used = rel_slack(tolerance, rep.rhs);
  if (rep.hypothesis_failed) {
    rep.status = CheckStatus::Fail;
  } else {
    NormBracket rhs_scaled{c * C * gu.bracket.lower * gv.bracket.lower,
                           c * C * gu.bracket.upper * gv.bracket.upper};
    rep.status = order_status(gw.bracket, rhs_scaled, rep.slack_used);
  }
  os << "||fg|| " << gw.bracket.lower << ".." << gw.bracket.upper
     << " vs c*C*||f||*||g|| >= " << rep.rhs;
  rep.detail = os.str();
  return rep;
}

EmbeddingReport embedding_check(EmbeddingKind kind, const StepFunction& g,
                                AmalgamParams params, double aux, double aux2,
                                double tolerance, const OptimizerConfig& cfg) {
  require_params(params);
  EmbeddingReport rep;
  rep.kind = kind;
  rep.aux = aux;
  rep.aux2 = aux2;
  std::ostringstream os;

  switch (kind) {
    case EmbeddingKind::QScale: {
      // Larger global exponent, rescaled theta, constant one.
      double q2 = aux;
      if (!(q2 >= params.q))
        throw std::invalid_argument("embedding_check: needs q2 >= q");
      GrandNormResult l =
          amalgam_grand_norm(g, {params.p, q2, params.theta}, cfg);
      GrandNormResult r = amalgam_grand_norm(
          g, {params.p, params.q, params.theta * params.q / q2}, cfg);
      rep.lhs = l.bracket.upper;
      rep.rhs = r.bracket.lower;
      rep.slack_used = rel_slack(tolerance, r.bracket.lower);
      rep.status = order_status(l.bracket, r.bracket, rep.slack_used);
      os << "q " << q2 << " vs q " << params.q << " at theta "
         << params.theta * params.q / q2;
      break;
    }
    case EmbeddingKind::ThetaScale: {
      // Larger theta costs a power of psi_max.
      double theta2 = aux;
      if (!(theta2 >= params.theta))
        throw std::invalid_argument("embedding_check: needs theta2 >= theta");
      rep.constant = std::pow(psi_max(), (theta2 - params.theta) / params.q);
      GrandNormResult l =
          amalgam_grand_norm(g, {params.p, params.q, theta2}, cfg);
      GrandNormResult r = amalgam_grand_norm(g, params, cfg);
      NormBracket rs = r.bracket.scaled(rep.constant);
      rep.lhs = l.bracket.upper;
      rep.rhs = rs.lower;
      rep.slack_used = rel_slack(tolerance, rs.lower);
      rep.status = order_status(l.bracket, rs, rep.slack_used);
      os << "theta " << theta2 << " vs theta " << params.theta << " constant "
         << rep.constant;
      break;
    }
    case EmbeddingKind::LocalP: {
      // Smaller local exponent on unit intervals: exact on both sides, so the
      // verdict is binary.
      double p2 = aux;
      if (!(p2 >= 1.0) || !(p2 <= params.p))
        throw std::invalid_argument("embedding_check: needs 1 <= p2 <= p");
      GrandSequence s2 = local_lp(g, p2);
      GrandSequence s1 = local_lp(g, params.p);
      double worst = -kInf;
      std::int64_t worst_k = 0;
      for (const auto& [k, v2] : s2.entries) {
        double v1 = value_at(s1, k);
        if (v2 - v1 > worst) {
          worst = v2 - v1;
          rep.lhs = v2;
          rep.rhs = v1;
          worst_k = k;
        }
      }
      if (s2.tail && s1.tail) {
        // Tail exponents compare analytically: the smaller-p tail must decay
        // at least as fast.
        if (!(s2.tail->a >= s1.tail->a - 1e-15) || s2.tail->b != s1.tail->b)
          worst = kInf;
      }
      if (worst == -kInf) worst = 0.0;  // zero function
      rep.slack_used = rel_slack(tolerance, rep.rhs);
      rep.status = (worst <= rep.slack_used) ? CheckStatus::Pass
                                             : CheckStatus::Fail;
      os << "worst interval " << worst_k << " excess " << std::max(worst, 0.0);
      break;
    }
    case EmbeddingKind::PlainQ: {
      // Grand norm against the plain amalgam norm with the maximal psi power.
      rep.constant = std::pow(psi_max(), params.theta / params.q);
      GrandNormResult l = amalgam_grand_norm(g, params, cfg);
      NormBracket r =
          lp_norm(local_lp(g, params.p), params.q, cfg.sum).scaled(rep.constant);
      rep.lhs = l.bracket.upper;
      rep.rhs = r.lower;
      rep.slack_used = rel_slack(tolerance, r.lower);
      rep.status = order_status(l.bracket, r, rep.slack_used);
      os << "plain q norm constant " << rep.constant;
      break;
    }
    case EmbeddingKind::Sandwich: {
      // Two-sided comparison with the neighbouring plain exponents.
      double delta = aux, sigma = aux2;
      if (!(delta > 0.0))
        throw std::invalid_argument("embedding_check: needs delta > 0");
      GrandSequence s = local_lp(g, params.p);
      GrandNormResult mid = amalgam_grand_norm(g, params, cfg);

      double c1 =
          std::pow(delta, -params.theta / (params.q * (1.0 + delta)));
      NormBracket l1 = lp_norm(s, params.q * (1.0 + delta), cfg.sum);
      NormBracket r1 = mid.bracket.scaled(c1);
      double slack1 = rel_slack(tolerance, r1.lower);
      CheckStatus st1 = order_status(l1, r1, slack1);

      CheckStatus st2 = CheckStatus::Pass;
      double slack2 = 0.0;
      if (params.q > 1.0) {
        double limit = 1.0 - 1.0 / params.q;  // 1/q' for the paired exponent
        if (!(sigma > 0.0) || !(sigma < limit))
          throw std::invalid_argument(
              "embedding_check: needs 0 < sigma < 1 - 1/q");
        double c2 = std::pow(psi_max(), params.theta / params.q);
        NormBracket r2 =
            lp_norm(s, params.q * (1.0 - sigma), cfg.sum).scaled(c2);
        slack2 = rel_slack(tolerance, r2.lower);
        st2 = order_status(mid.bracket, r2, slack2);
        os << "delta " << delta << " sigma " << sigma;
      } else {
        if (sigma != 0.0)
          throw std::invalid_argument(
              "embedding_check: the sigma leg is empty at q = 1");
        os << "delta " << delta << " (no sigma leg at q = 1)";
      }

      rep.constant = c1;
      rep.lhs = l1.upper;
      rep.rhs = r1.lower;
      rep.slack_used = std::max(slack1, slack2);
      if (st1 == CheckStatus::Fail || st2 == CheckStatus::Fail)
        rep.status = CheckStatus::Fail;
      else if (st1 == CheckStatus::Pass && st2 == CheckStatus::Pass)
        rep.status = CheckStatus::Pass;
      else
        rep.status = CheckStatus::Inconclusive;
      break;
    }
  }
  rep.detail = os.str();
  return rep;
}

}  // namespace granda
