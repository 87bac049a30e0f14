#include "granda/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "granda/rng.hpp"

namespace granda {

namespace {

// Indicator of the cells of `g` whose |value| reaches `threshold`; empty
// when nothing qualifies.
StepFunction super_level_indicator(const StepFunction& g, double threshold) {
  std::vector<StepPiece> pieces;
  for (const StepPiece& piece : g.pieces) {
    bool any = false;
    StepPiece out;
    out.k = piece.k;
    for (const StepCell& c : piece.cells) {
      double v = (std::abs(c.value) >= threshold) ? 1.0 : 0.0;
      any = any || (v > 0.0);
      out.cells.push_back({c.width, v});
    }
    if (any) pieces.push_back(std::move(out));
  }
  StepFunction f;
  f.index_set = g.index_set;
  f.pieces = std::move(pieces);
  return f;
}

// Indicator of one cell of one piece.
StepFunction cell_indicator(const StepFunction& g, std::size_t piece_idx,
                            std::size_t cell_idx) {
  const StepPiece& piece = g.pieces[piece_idx];
  StepPiece out;
  out.k = piece.k;
  double pre = 0.0;
  for (std::size_t i = 0; i < cell_idx; ++i) pre += piece.cells[i].width;
  double w = piece.cells[cell_idx].width;
  if (pre > 0.0) out.cells.push_back({pre, 0.0});
  out.cells.push_back({w, 1.0});
  double post = 1.0 - pre - w;
  if (post > 0.0) out.cells.push_back({post, 0.0});
  StepFunction f;
  f.index_set = g.index_set;
  f.pieces = {std::move(out)};
  return f;
}

}  // namespace

StepFunction multiplier_apply(const StepFunction& g, const StepFunction& f) {
  if (!g.finite_support())
    throw std::invalid_argument("multiplier_apply: symbol must have finite support");
  return product(g, f);
}

OpNormReport op_norm_estimate(const StepFunction& g, AmalgamParams params,
                              const OptimizerConfig& cfg) {
  if (!g.finite_support())
    throw std::invalid_argument("op_norm_estimate: symbol must have finite support");
  OpNormReport rep;
  rep.upper = ess_sup(g);
  if (rep.upper == 0.0) {
    rep.detail = "zero symbol";
    return rep;
  }

  std::size_t peak_piece = 0, peak_cell = 0;
  for (std::size_t i = 0; i < g.pieces.size(); ++i)
    for (std::size_t j = 0; j < g.pieces[i].cells.size(); ++j)
      if (std::abs(g.pieces[i].cells[j].value) == rep.upper) {
        peak_piece = i;
        peak_cell = j;
        goto found;
      }
found:

  // Peak cell first (delta = 0), then widening super-level sets.  The peak
  // trial alone already attains the norm up to bracket rounding, since gf is
  // an exact scalar multiple of f there.
  struct Trial { double delta; StepFunction f; };
  std::vector<Trial> trials;
  trials.push_back({0.0, cell_indicator(g, peak_piece, peak_cell)});
  for (double delta : {0.5, 0.1, 0.01, 0.001})
    trials.push_back({delta, super_level_indicator(g, (1.0 - delta) * rep.upper)});

  for (const Trial& tr : trials) {
    if (tr.f.pieces.empty()) continue;
    ++rep.trials;
    GrandNormResult num = amalgam_grand_norm(product(g, tr.f), params, cfg);
    GrandNormResult den = amalgam_grand_norm(tr.f, params, cfg);
    if (!(den.bracket.upper > 0.0) || !std::isfinite(den.bracket.upper)) continue;
    double ratio = num.bracket.lower / den.bracket.upper;
    if (ratio > rep.lower) {
      rep.lower = ratio;
      rep.best_delta = tr.delta;
      rep.witness = tr.f;
    }
  }
  std::ostringstream os;
  os << "sup " << rep.upper << ", best trial ratio " << rep.lower
     << " at delta " << rep.best_delta;
  rep.detail = os.str();
  return rep;
}

IsometryReport isometry_check(const StepFunction& g, AmalgamParams params,
                              int trials, std::uint64_t seed, double tolerance,
                              const OptimizerConfig& cfg) {
  if (!g.finite_support())
    throw std::invalid_argument("isometry_check: symbol must have finite support");
  if (g.pieces.empty())
    throw std::invalid_argument("isometry_check: empty symbol");

  IsometryReport rep;
  rep.structural = true;
  std::size_t bad_piece = 0, bad_cell = 0;
  for (std::size_t i = 0; i < g.pieces.size() && rep.structural; ++i)
    for (std::size_t j = 0; j < g.pieces[i].cells.size(); ++j)
      if (std::abs(std::abs(g.pieces[i].cells[j].value) - 1.0) > 1e-12) {
        rep.structural = false;
        bad_piece = i;
        bad_cell = j;
        rep.witness_k = g.pieces[i].k;
        rep.witness_value = g.pieces[i].cells[j].value;
        break;
      }

  // Arguments live on the cells of g, so |gf| = |f| holds cell by cell
  // exactly when the symbol is unimodular there.
  std::vector<StepFunction> args;
  if (!rep.structural) args.push_back(cell_indicator(g, bad_piece, bad_cell));
  Rng rng(mix_seed(seed, fnv1a("isometry-trials"), 0));
  for (int i = 0; i < trials; ++i) {
    StepFunction f;
    f.index_set = g.index_set;
    for (const StepPiece& piece : g.pieces) {
      StepPiece out;
      out.k = piece.k;
      for (const StepCell& c : piece.cells)
        out.cells.push_back({c.width, 4.0 * rng.next_unit() - 2.0});
      f.pieces.push_back(std::move(out));
    }
    args.push_back(std::move(f));
  }

  for (const StepFunction& f : args) {
    ++rep.trials_run;
    GrandNormResult nf = amalgam_grand_norm(f, params, cfg);
    GrandNormResult ng = amalgam_grand_norm(product(g, f), params, cfg);
    double slack = tolerance * std::max(1.0, nf.bracket.upper);
    double gap = std::max(ng.bracket.lower - nf.bracket.upper,
                          nf.bracket.lower - ng.bracket.upper);
    if (gap > rep.worst_gap) rep.worst_gap = gap;
    if (gap > slack) rep.trials = CheckStatus::Fail;
  }

  std::ostringstream os;
  if (rep.structural)
    os << "|g| = 1 on every cell";
  else
    os << "|g(" << rep.witness_k << ")| cell value " << rep.witness_value;
  os << "; worst certified gap " << rep.worst_gap;
  rep.detail = os.str();
  return rep;
}

IneqReport l1_bound_check(const StepFunction& g, const StepFunction& f,
                          AmalgamParams params, double tolerance, int budget,
                          const OptimizerConfig& cfg, std::uint64_t seed) {
  // Same pairing inequality with the roles fixed: the argument carries the
  // grand norm, the symbol the small norm at the pairing exponent.
  return holder_integral_check(f, g, params, tolerance, budget, cfg, seed);
}

TruncationDemo truncation_demo(double growth,
                               const std::vector<std::int64_t>& Ms,
                               AmalgamParams params,
                               const OptimizerConfig& cfg) {
  if (!(growth > 0.0))
    throw std::invalid_argument("truncation_demo: growth must be positive");
  TruncationDemo demo;
  for (std::int64_t M : Ms) {
    if (M < 1) throw std::invalid_argument("truncation_demo: M must be >= 1");
    std::vector<StepPiece> pieces;
    for (std::int64_t k = -M; k < M; ++k) {
      StepPiece piece;
      piece.k = k;
      piece.cells = {{1.0, std::pow(1.0 + static_cast<double>(std::llabs(k)),
                                    growth)}};
      pieces.push_back(std::move(piece));
    }
    StepFunction gM = make_step(IndexSet::Z, std::move(pieces));
    OpNormReport op = op_norm_estimate(gM, params, cfg);
    demo.rows.push_back({M, op.upper, op.lower});
  }
  demo.unbounded = demo.rows.size() >= 2 &&
                   demo.rows.back().op_upper > 10.0 * demo.rows.front().op_upper;
  return demo;
}

}  // namespace granda
