#include "granda/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace granda {

namespace {

bool index_ok(IndexSet set, std::int64_t k) {
  switch (set) {
    case IndexSet::N: return k >= 1;
    case IndexSet::N0: return k >= 0;
    case IndexSet::Z: return true;
  }
  return false;
}

// Exact local L^p norm of one explicit piece.  Scales by the largest |value|
// so huge exponents cannot overflow pow.
double piece_lp(const StepPiece& piece, double p) {
  double m = 0.0;
  for (const StepCell& c : piece.cells)
    if (c.width > 0.0) m = std::max(m, std::abs(c.value));
  if (m == 0.0) return 0.0;
  if (std::isinf(p)) return m;
  double s = 0.0;
  for (const StepCell& c : piece.cells)
    if (c.width > 0.0 && c.value != 0.0)
      s += c.width * std::pow(std::abs(c.value) / m, p);
  return m * std::pow(s, 1.0 / p);
}

}  // namespace

StepFunction make_step(IndexSet set, std::vector<StepPiece> pieces,
                       std::optional<AnalyticFamily> family) {
  std::sort(pieces.begin(), pieces.end(),
            [](const StepPiece& a, const StepPiece& b) { return a.k < b.k; });
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const StepPiece& piece = pieces[i];
    if (!index_ok(set, piece.k))
      throw std::invalid_argument("make_step: piece index outside index set");
    if (i > 0 && piece.k == pieces[i - 1].k)
      throw std::invalid_argument("make_step: duplicate piece index");
    if (piece.cells.empty())
      throw std::invalid_argument("make_step: piece with no cells");
    double total = 0.0;
    for (const StepCell& c : piece.cells) {
      if (!(c.width > 0.0) || !std::isfinite(c.width))
        throw std::invalid_argument("make_step: cell width must be positive");
      if (!std::isfinite(c.value))
        throw std::invalid_argument("make_step: nonfinite cell value");
      total += c.width;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("make_step: cell widths must sum to 1");
  }
  if (family) {
    if (set == IndexSet::Z)
      throw std::invalid_argument("make_step: families need a one-sided index set");
    if (family->n0 < 1)
      throw std::invalid_argument("make_step: family must start at n0 >= 1");
    if (!pieces.empty() && pieces.back().k >= family->n0)
      throw std::invalid_argument("make_step: family overlaps explicit pieces");
    if (family->kind == AnalyticFamily::Kind::Shrinking && !(family->gamma >= 0.0))
      throw std::invalid_argument("make_step: shrinking support needs gamma >= 0");
  }
  StepFunction g;
  g.index_set = set;
  g.pieces = std::move(pieces);
  g.family = family;
  return g;
}

StepFunction indicator_interval(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("indicator_interval: need finite a < b");
  std::vector<StepPiece> pieces;
  std::int64_t k0 = static_cast<std::int64_t>(std::floor(a));
  std::int64_t k1 = static_cast<std::int64_t>(std::ceil(b));
  for (std::int64_t k = k0; k < k1; ++k) {
    double lo = std::max(a - static_cast<double>(k), 0.0);
    double hi = std::min(b - static_cast<double>(k), 1.0);
    if (!(hi > lo)) continue;
    StepPiece piece;
    piece.k = k;
    if (lo > 0.0) piece.cells.push_back({lo, 0.0});
    piece.cells.push_back({hi - lo, 1.0});
    if (hi < 1.0) piece.cells.push_back({1.0 - hi, 0.0});
    pieces.push_back(std::move(piece));
  }
  return make_step(IndexSet::Z, std::move(pieces));
}

GrandSequence local_lp(const StepFunction& g, double p) {
  if (!(p >= 1.0) && !std::isinf(p))
    throw std::invalid_argument("local_lp: exponent must be >= 1 or infinity");
  std::vector<std::pair<std::int64_t, double>> entries;
  entries.reserve(g.pieces.size());
  for (const StepPiece& piece : g.pieces) {
    double v = piece_lp(piece, p);
    if (v > 0.0) entries.emplace_back(piece.k, v);
  }
  std::optional<PowerLogTail> tail;
  if (g.family) {
    const AnalyticFamily& fam = *g.family;
    if (fam.kind == AnalyticFamily::Kind::Plateau) {
      // Constant on a unit interval: the local norm is the value itself.
      tail = PowerLogTail{fam.n0, fam.a, fam.b};
    } else {
      // (n^growth)^p over width n^-gamma integrates to n^(growth p - gamma),
      // so the local norm is n^(growth - gamma/p); at p = infinity it is the
      // plateau value n^growth.
      double a = std::isinf(p) ? -fam.growth : fam.gamma / p - fam.growth;
      tail = PowerLogTail{fam.n0, a, 0.0};
    }
  }
  return make_sequence(g.index_set, std::move(entries), tail);
}

double ess_sup(const StepFunction& g) {
  if (!g.finite_support())
    throw std::invalid_argument("ess_sup: requires finite support");
  double m = 0.0;
  for (const StepPiece& piece : g.pieces)
    for (const StepCell& c : piece.cells)
      if (c.width > 0.0) m = std::max(m, std::abs(c.value));
  return m;
}

double integral_abs(const StepFunction& g) {
  if (!g.finite_support())
    throw std::invalid_argument("integral_abs: requires finite support");
  double total = 0.0;
  for (const StepPiece& piece : g.pieces)
    for (const StepCell& c : piece.cells) total += c.width * std::abs(c.value);
  return total;
}

NormBracket family_integral_abs(const AnalyticFamily& fam,
                                const SumConfig& cfg) {
  // Per-interval integrals of |value|:
  //   plateau:   n^-a ln(n+1)^-b over width 1
  //   shrinking: n^growth over width n^-gamma, i.e. n^(growth - gamma)
  if (fam.kind == AnalyticFamily::Kind::Plateau)
    return tail_sum(fam.n0, fam.a, fam.b, cfg);
  return tail_sum(fam.n0, fam.gamma - fam.growth, 0.0, cfg);
}

StepFunction product(const StepFunction& f, const StepFunction& g) {
  if (!f.finite_support() || !g.finite_support())
    throw std::invalid_argument("product: requires finite support");
  std::vector<StepPiece> pieces;
  std::size_t i = 0, j = 0;
  while (i < f.pieces.size() && j < g.pieces.size()) {
    if (f.pieces[i].k < g.pieces[j].k) {
      ++i;  // other factor vanishes on this interval
    } else if (g.pieces[j].k < f.pieces[i].k) {
      ++j;
    } else {
      const StepPiece& a = f.pieces[i];
      const StepPiece& b = g.pieces[j];
      StepPiece out;
      out.k = a.k;
      // Walk both partitions left to right, emitting the overlap cells.
      std::size_t ia = 0, ib = 0;
      double ra = a.cells[0].width, rb = b.cells[0].width;
      bool nonzero = false;
      while (ia < a.cells.size() && ib < b.cells.size()) {
        double w = std::min(ra, rb);
        double v = a.cells[ia].value * b.cells[ib].value;
        if (w > 0.0) {
          out.cells.push_back({w, v});
          if (v != 0.0) nonzero = true;
        }
        ra -= w;
        rb -= w;
        if (ra <= 0.0 && ++ia < a.cells.size()) ra = a.cells[ia].width;
        if (rb <= 0.0 && ++ib < b.cells.size()) rb = b.cells[ib].width;
      }
      // Rounding in the width walk can leave the partition a hair short of
      // measure 1; absorb the residual into the last cell.
      double total = 0.0;
      for (const StepCell& c : out.cells) total += c.width;
      if (!out.cells.empty()) out.cells.back().width += 1.0 - total;
      if (nonzero) pieces.push_back(std::move(out));
      ++i;
      ++j;
    }
  }
  StepFunction h;
  h.index_set =
      (f.index_set == g.index_set) ? f.index_set : IndexSet::Z;
  h.pieces = std::move(pieces);
  return h;
}

StepFunction scale(const StepFunction& g, double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("scale: nonfinite factor");
  if (g.family && c != 1.0)
    throw std::invalid_argument("scale: families carry fixed closed forms");
  StepFunction out = g;
  for (StepPiece& piece : out.pieces)
    for (StepCell& cell : piece.cells) cell.value *= c;
  return out;
}

}  // namespace granda
