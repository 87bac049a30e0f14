#include "granda/smallnorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "granda/rng.hpp"
#include "granda/specfun.hpp"

namespace granda {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_params(const GrandParams& p) {
  if (!(p.q >= 1.0) || !std::isfinite(p.q) || !(p.theta > 0.0) ||
      !std::isfinite(p.theta))
    throw std::invalid_argument("small norm: require q >= 1 and theta > 0");
}

void require_plain(const GrandSequence& s, const char* what) {
  if (s.tail)
    throw std::invalid_argument(std::string(what) +
                                ": analytic tails are not supported here");
}

// Conjugate exponent of q(1+eps), written to avoid cancellation at small eps.
double conj_of(double q, double eps) { return 1.0 + 1.0 / (q - 1.0 + q * eps); }

// ||w||_rp on magnitudes scaled by their maximum, so the huge conjugate
// exponents near eps = 0 (q = 1) only underflow harmlessly.
double pnorm(const std::vector<double>& w, double m, double rp) {
  if (!(m > 0.0)) return 0.0;
  double s = 0.0;
  for (double v : w)
    if (v > 0.0) s += std::pow(v / m, rp);
  return m * std::pow(s, 1.0 / rp);
}

struct MinNode {
  double eps = 0.0;
  double pn = 0.0;     // ||w||_{(q(1+eps))'}
  double value = 0.0;  // psi(eps)^(-theta/q) * pn
};

MinNode eval_min_node(const std::vector<double>& w, double m,
                      const GrandParams& prm, double eps) {
  MinNode nd;
  nd.eps = eps;
  nd.pn = pnorm(w, m, conj_of(prm.q, eps));
  nd.value = std::pow(psi(eps), -prm.theta / prm.q) * nd.pn;
  return nd;
}

struct MinCell {
  double lo = 0.0, hi = 0.0;
  double pn_lo = 0.0;  // the nondecreasing norm factor at the left node
  double lower = 0.0;  // psi_pow_min_on(lo, hi) * pn_lo
  std::uint64_t seq = 0;
};

struct MinCellOrder {
  bool operator()(const MinCell& a, const MinCell& b) const {
    if (a.lower != b.lower) return a.lower > b.lower;  // pop the smallest
    return a.seq > b.seq;                              // ties: oldest first
  }
};

InnerInfResult run_min(const std::vector<double>& w, const GrandParams& prm,
                       const OptimizerConfig& cfg) {
  if (!(cfg.eps_min > 0.0) || !(cfg.eps_max > cfg.eps_min) || cfg.grid_points < 3)
    throw std::invalid_argument("inner_inf: degenerate optimizer grid");
  InnerInfResult res;
  const double expo = prm.theta / prm.q;

  double m = 0.0, s1 = 0.0;
  int positive = 0;
  for (double v : w)
    if (v > 0.0) {
      m = std::max(m, v);
      s1 += v;
      ++positive;
    }
  if (positive == 0) {
    res.bracket = NormBracket::point(0.0);
    return res;
  }
  if (positive == 1) {
    // Constant norm factor: the infimum sits exactly at the psi maximizer.
    const double v = std::pow(psi_max(), -expo) * m;
    res.bracket = NormBracket::point(v);
    res.arg_best = psi_argmax();
    res.grid_upper = v;
    return res;
  }

  double lo0 = cfg.eps_min, top = cfg.eps_max;
  const int n = std::max(3, cfg.grid_points);
  std::vector<double> grid(n);
  const double llo = std::log(lo0), lhi = std::log(top);
  for (int i = 0; i < n; ++i)
    grid[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                 static_cast<double>(n - 1));
  grid.front() = lo0;
  grid.back() = top;
  const double star = psi_argmax();
  if (star > lo0 && star < top) {
    int nearest = 1;
    double dist = kInf;
    for (int i = 1; i + 1 < n; ++i) {
      const double d = std::fabs(std::log(grid[i]) - std::log(star));
      if (d < dist) { dist = d; nearest = i; }
    }
    grid[nearest] = star;
    std::sort(grid.begin(), grid.end());
  }

  std::vector<MinNode> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i] = eval_min_node(w, m, prm, grid[i]);
  res.evaluations = n;

  double best_upper = kInf, arg_best = grid.front();
  for (const auto& nd : nodes)
    if (nd.value < best_upper) { best_upper = nd.value; arg_best = nd.eps; }
  // eps -> infinity limit: the factor tends to 1 and the conjugate exponent
  // to 1, so ||w||_1 caps the infimum.
  if (s1 < best_upper) { best_upper = s1; arg_best = kInf; }
  // Fixed-grid upper, recorded before any adaptive work: comparable across
  // entrywise-dominated parts because the node set never depends on w.
  res.grid_upper = best_upper;

  // Cover of (0, lo0]: the norm factor is nondecreasing with limit
  // ||w||_{q'} (q > 1) or ||w||_inf (q = 1), and psi is increasing below its
  // maximizer, so one product bounds the whole segment.
  const double m0 = (prm.q > 1.0) ? pnorm(w, m, conjugate_exponent(prm.q)) : m;
  auto left_cover = [&](double lo) {
    return std::pow(psi(std::min(lo, star)), -expo) * m0;
  };
  double left_lower = left_cover(lo0);

  // Cover of [top, inf): psi's largest value there times the factor at top.
  auto right_cover = [&](const MinNode& nd) {
    return psi_pow_min_on(nd.eps, kInf, expo) * nd.pn;
  };
  MinNode top_node = nodes.back();
  double right_lower = right_cover(top_node);

  std::priority_queue<MinCell, std::vector<MinCell>, MinCellOrder> heap;
  std::uint64_t seq = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    MinCell c{grid[i], grid[i + 1], nodes[i].pn, 0.0, seq++};
    c.lower = psi_pow_min_on(c.lo, c.hi, expo) * c.pn_lo;
    heap.push(c);
  }

  double frozen_min = kInf;
  double lowest = lo0;
  int iters = 0, shrinks = 0, widens = 0;
  while (iters < cfg.refine_max_iter) {
    const double bottom = heap.empty() ? kInf : heap.top().lower;
    const double global_lo = std::min({left_lower, right_lower, frozen_min, bottom});
    if (best_upper <= global_lo * (1.0 + cfg.refine_tol) + 1e-300) break;
    if (left_lower <= global_lo * (1.0 + 1e-12) && shrinks < 60) {
      const double new_lo = lowest / 16.0;
      MinNode nd = eval_min_node(w, m, prm, new_lo);
      ++res.evaluations; ++iters; ++shrinks;
      if (nd.value < best_upper) { best_upper = nd.value; arg_best = nd.eps; }
      MinCell c{new_lo, lowest, nd.pn, 0.0, seq++};
      c.lower = psi_pow_min_on(c.lo, c.hi, expo) * c.pn_lo;
      heap.push(c);
      lowest = new_lo;
      left_lower = left_cover(new_lo);
      continue;
    }
    if (right_lower <= global_lo * (1.0 + 1e-12) && widens < 8 && top < 1e12) {
      top *= 10.0;
      MinNode nd = eval_min_node(w, m, prm, top);
      ++res.evaluations; ++iters; ++widens;
      if (nd.value < best_upper) { best_upper = nd.value; arg_best = nd.eps; }
      MinCell c{top_node.eps, top, top_node.pn, 0.0, seq++};
      c.lower = psi_pow_min_on(c.lo, c.hi, expo) * c.pn_lo;
      heap.push(c);
      top_node = nd;
      right_lower = right_cover(nd);
      continue;
    }
    if (heap.empty() || bottom > global_lo * (1.0 + 1e-12)) break;  // floor frozen
    MinCell c = heap.top();
    heap.pop();
    const double mid = std::sqrt(c.lo * c.hi);
    if (!(mid > c.lo && mid < c.hi)) {
      frozen_min = std::min(frozen_min, c.lower);
      continue;
    }
    MinNode nd = eval_min_node(w, m, prm, mid);
    ++res.evaluations; ++iters;
    if (nd.value < best_upper) { best_upper = nd.value; arg_best = nd.eps; }
    MinCell l{c.lo, mid, c.pn_lo, 0.0, seq++};
    l.lower = psi_pow_min_on(l.lo, l.hi, expo) * l.pn_lo;
    MinCell r{mid, c.hi, nd.pn, 0.0, seq++};
    r.lower = psi_pow_min_on(r.lo, r.hi, expo) * r.pn_lo;
    heap.push(l);
    heap.push(r);
  }

  double cells_min = frozen_min;
  while (!heap.empty()) {
    cells_min = std::min(cells_min, heap.top().lower);
    heap.pop();
  }
  const double lower = std::min({left_lower, right_lower, cells_min});
  res.bracket = NormBracket{std::min(lower, best_upper), best_upper};
  res.arg_best = arg_best;
  return res;
}

bool same_base(const GrandSequence& a, const GrandSequence& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].first != b.entries[i].first) return false;
    if (std::fabs(std::fabs(a.entries[i].second) -
                  std::fabs(b.entries[i].second)) > 1e-12)
      return false;
  }
  return true;
}

struct DualPick {
  double value = 0.0;
  std::size_t index = 0;
  bool found = false;
};

DualPick best_dual(const GrandSequence& y,
                   const std::vector<GrandSequence>& candidates,
                   GrandParams params, const OptimizerConfig& cfg, int* evals) {
  DualPick pick;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const GrandSequence& x = candidates[c];
    if (x.is_zero()) continue;
    double pairing = 0.0;
    for (const auto& [k, v] : y.entries)
      pairing += std::fabs(v) * std::fabs(value_at(x, k));
    GrandNormResult g = grand_norm(x, params, cfg);
    if (evals) *evals += g.evaluations;
    if (!(g.bracket.upper > 0.0) || !std::isfinite(g.bracket.upper)) continue;
    const double ratio = pairing / g.bracket.upper;
    if (ratio > pick.value) { pick.value = ratio; pick.index = c; pick.found = true; }
  }
  return pick;
}

}  // namespace

void validate_decomposition(const Decomposition& d, double tol) {
  require_plain(d.base, "decomposition base");
  const std::size_t n = d.base.entries.size();
  for (const auto& part : d.parts) {
    if (part.size() != n)
      throw std::invalid_argument("decomposition: part row length mismatch");
    for (double v : part)
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument(
            "decomposition: shares must be finite and nonnegative");
  }
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (const auto& part : d.parts) sum += part[i];
    if (std::fabs(sum - std::fabs(d.base.entries[i].second)) > tol)
      throw std::invalid_argument(
          "decomposition: row sums must match the base magnitudes");
  }
}

Decomposition trivial_decomposition(const GrandSequence& y) {
  require_plain(y, "trivial_decomposition");
  Decomposition d;
  d.base = y;
  if (!y.entries.empty()) {
    std::vector<double> row(y.entries.size());
    for (std::size_t i = 0; i < y.entries.size(); ++i)
      row[i] = std::fabs(y.entries[i].second);
    d.parts.push_back(std::move(row));
  }
  return d;
}

GrandSequence part_sequence(const Decomposition& d, std::size_t j) {
  if (j >= d.parts.size()) throw std::out_of_range("part_sequence: no such part");
  std::vector<std::pair<std::int64_t, double>> entries;
  for (std::size_t i = 0; i < d.base.entries.size(); ++i)
    if (d.parts[j][i] > 0.0)
      entries.push_back({d.base.entries[i].first, d.parts[j][i]});
  return make_sequence(d.base.index_set, std::move(entries));
}

InnerInfResult inner_inf(const std::vector<double>& part, GrandParams params,
                         const OptimizerConfig& cfg) {
  validate_params(params);
  for (double v : part)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("inner_inf: parts must be finite and nonnegative");
  return run_min(part, params, cfg);
}

NormBracket decomposition_value(const Decomposition& d, GrandParams params,
                                const OptimizerConfig& cfg) {
  validate_decomposition(d);
  NormBracket total = NormBracket::point(0.0);
  for (const auto& part : d.parts) total += inner_inf(part, params, cfg).bracket;
  return total;
}

SmallNormEstimate small_norm_upper(const GrandSequence& y, GrandParams params,
                                   int budget, const OptimizerConfig& cfg,
                                   std::uint64_t seed,
                                   const std::vector<Decomposition>* seeds) {
  validate_params(params);
  require_plain(y, "small_norm_upper");
  SmallNormEstimate est;

  const std::size_t ne = y.entries.size();
  std::vector<double> w(ne, 0.0);
  std::vector<int> ord;
  for (std::size_t i = 0; i < ne; ++i) {
    const double v = y.entries[i].second;
    if (!std::isfinite(v))
      throw std::invalid_argument("small_norm_upper: entries must be finite");
    w[i] = std::fabs(v);
    if (w[i] > 0.0) ord.push_back(static_cast<int>(i));
  }
  // Magnitude order, largest first: groups of comparable size are contiguous
  // here, which is where grouping beats the per-index splitting.
  std::sort(ord.begin(), ord.end(), [&](int a, int b) {
    if (w[static_cast<std::size_t>(a)] != w[static_cast<std::size_t>(b)])
      return w[static_cast<std::size_t>(a)] > w[static_cast<std::size_t>(b)];
    return a < b;
  });
  const int K = static_cast<int>(ord.size());

  std::map<std::uint64_t, InnerInfResult> memo;
  int budget_left = std::max(budget, 0);

  auto key_of = [](int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  };
  auto cost_of = [&](int a, int b) {
    return (b - a >= 2 && memo.find(key_of(a, b)) == memo.end()) ? 1 : 0;
  };
  // Single-index ranges have a closed-form weight, so only true
  // branch-and-bound runs are charged against the budget.
  auto eval_range = [&](int a, int b, bool charge) -> const InnerInfResult& {
    const std::uint64_t key = key_of(a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<double> part;
    part.reserve(static_cast<std::size_t>(b - a));
    for (int i = a; i < b; ++i) part.push_back(w[static_cast<std::size_t>(ord[static_cast<std::size_t>(i)])]);
    InnerInfResult r = run_min(part, params, cfg);
    est.evaluations += r.evaluations + 1;
    if (charge && b - a >= 2) --budget_left;
    return memo.emplace(key, std::move(r)).first->second;
  };

  auto runs_of = [&](const std::vector<int>& bps) {
    std::vector<std::pair<int, int>> rs;
    int prev = 0;
    for (int b : bps) {
      rs.push_back({prev, b});
      prev = b;
    }
    rs.push_back({prev, K});
    return rs;
  };
  auto partition_cost = [&](const std::vector<int>& bps) {
    int c = 0;
    for (auto [a, b] : runs_of(bps)) c += cost_of(a, b);
    return c;
  };
  struct Val {
    double upper = 0.0, grid = 0.0;
  };
  auto partition_value = [&](const std::vector<int>& bps, bool charge) {
    Val v;
    for (auto [a, b] : runs_of(bps)) {
      const InnerInfResult& r = eval_range(a, b, charge);
      v.upper += r.bracket.upper;
      v.grid += r.grid_upper;
    }
    return v;
  };
  auto materialize = [&](const std::vector<int>& bps) {
    Decomposition d;
    d.base = y;
    auto rs = runs_of(bps);
    d.parts.assign(rs.size(), std::vector<double>(ne, 0.0));
    for (std::size_t t = 0; t < rs.size(); ++t)
      for (int i = rs[t].first; i < rs[t].second; ++i) {
        const std::size_t pos = static_cast<std::size_t>(ord[static_cast<std::size_t>(i)]);
        d.parts[t][pos] = w[pos];
      }
    return d;
  };

  double best_upper = kInf, best_grid = kInf;
  std::vector<int> best_bps;
  auto consider = [&](const std::vector<int>& bps, bool charge) {
    const Val v = partition_value(bps, charge);
    if (v.upper < best_upper) {
      best_upper = v.upper;
      best_grid = v.grid;
      best_bps = bps;
      est.explored.push_back(materialize(bps));
      if (est.explored.size() > 24) est.explored.erase(est.explored.begin());
    }
    return v.upper;
  };

  const double val_triv = consider({}, false);

  if (budget > 0 && K >= 2) {
    // One part per support index: every term carries the closed-form weight
    // psi_max^(-theta/q) * w_k.
    std::vector<int> per_index;
    per_index.reserve(static_cast<std::size_t>(K - 1));
    for (int i = 1; i < K; ++i) per_index.push_back(i);
    consider(per_index, true);

    for (int size = 2; size < K; size *= 2) {
      std::vector<int> bps;
      for (int b = size; b < K; b += size) bps.push_back(b);
      if (partition_cost(bps) > budget_left) break;
      consider(bps, true);
    }

    // Randomized merge/split/move walk over breakpoint sets with
    // simulated-annealing acceptance; fully deterministic given the seed.
    Rng rng(mix_seed(seed, fnv1a("small-norm-search"), static_cast<std::uint64_t>(K)));
    std::vector<int> cur = best_bps;
    double cur_val = best_upper;
    double temp = 0.1 * std::max(val_triv, 1e-300);
    const int step_cap = 50 * K + 200;
    for (int step = 0; step < step_cap && budget_left > 0; ++step, temp *= 0.995) {
      std::vector<int> prop = cur;
      const std::uint64_t r = rng.next_u64();
      const int kind = static_cast<int>(r % 3);
      bool usable = true;
      if (kind == 0) {
        const int pos = 1 + static_cast<int>((r >> 8) % static_cast<std::uint64_t>(K - 1));
        auto it = std::lower_bound(prop.begin(), prop.end(), pos);
        if (it != prop.end() && *it == pos)
          usable = false;
        else
          prop.insert(it, pos);
      } else if (kind == 1) {
        if (prop.empty())
          usable = false;
        else
          prop.erase(prop.begin() +
                     static_cast<std::ptrdiff_t>((r >> 8) % prop.size()));
      } else {
        if (prop.empty()) {
          usable = false;
        } else {
          const std::size_t at = static_cast<std::size_t>((r >> 8) % prop.size());
          const int dir = ((r >> 40) & 1u) ? 1 : -1;
          const int np = prop[at] + dir;
          const bool collide = np < 1 || np > K - 1 ||
                               (at > 0 && prop[at - 1] >= np) ||
                               (at + 1 < prop.size() && prop[at + 1] <= np);
          if (collide)
            usable = false;
          else
            prop[at] = np;
        }
      }
      if (!usable) continue;
      if (partition_cost(prop) > budget_left) continue;
      const Val v = partition_value(prop, true);
      if (v.upper < best_upper) {
        best_upper = v.upper;
        best_grid = v.grid;
        best_bps = prop;
        est.explored.push_back(materialize(prop));
        if (est.explored.size() > 24) est.explored.erase(est.explored.begin());
      }
      const double delta = v.upper - cur_val;
      bool accept = delta <= 0.0;
      if (!accept) {
        const double u01 =
            static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53;
        accept = u01 < std::exp(-delta / std::max(temp, 1e-300));
      }
      if (accept) {
        cur = std::move(prop);
        cur_val = v.upper;
      }
    }
  }

  Decomposition best_d = materialize(best_bps);
  // Externally supplied splittings compete on equal terms.
  if (seeds) {
    for (const auto& sd : *seeds) {
      validate_decomposition(sd);
      if (!same_base(sd.base, y))
        throw std::invalid_argument("small_norm_upper: seed base mismatch");
      double u = 0.0, g = 0.0;
      for (const auto& part : sd.parts) {
        InnerInfResult r = run_min(part, params, cfg);
        est.evaluations += r.evaluations + 1;
        u += r.bracket.upper;
        g += r.grid_upper;
      }
      if (u < best_upper) {
        best_upper = u;
        best_grid = g;
        best_d = sd;
        est.explored.push_back(sd);
        if (est.explored.size() > 24) est.explored.erase(est.explored.begin());
      }
    }
  }

  est.upper = best_upper;
  est.grid_upper = best_grid;
  est.witness_decomposition = std::move(best_d);

  // Pairing lower bound: spikes, the support indicator, y itself, a power
  // profile, and indicators of the blocks the search settled on.
  std::vector<GrandSequence> cands;
  const int spike_cap = std::min(K, 64);
  for (int t = 0; t < spike_cap; ++t) {
    const std::int64_t k = y.entries[static_cast<std::size_t>(ord[static_cast<std::size_t>(t)])].first;
    cands.push_back(make_sequence(y.index_set, {{k, 1.0}}));
  }
  if (K > 0) {
    std::vector<std::pair<std::int64_t, double>> ind, mag, prof;
    for (std::size_t i = 0; i < ne; ++i) {
      if (!(w[i] > 0.0)) continue;
      const std::int64_t k = y.entries[i].first;
      ind.push_back({k, 1.0});
      mag.push_back({k, w[i]});
      const double base = static_cast<double>(std::max<std::int64_t>(std::llabs(k), 1));
      prof.push_back({k, std::pow(base, -1.0 / params.q)});
    }
    cands.push_back(make_sequence(y.index_set, std::move(ind)));
    cands.push_back(make_sequence(y.index_set, std::move(mag)));
    cands.push_back(make_sequence(y.index_set, std::move(prof)));
    int blocks = 0;
    for (auto [a, b] : runs_of(best_bps)) {
      if (b - a < 2 || blocks >= 16) continue;  // singletons are the spikes
      std::vector<int> pos(ord.begin() + a, ord.begin() + b);
      std::sort(pos.begin(), pos.end());
      std::vector<std::pair<std::int64_t, double>> bi;
      bi.reserve(pos.size());
      for (int p : pos) bi.push_back({y.entries[static_cast<std::size_t>(p)].first, 1.0});
      cands.push_back(make_sequence(y.index_set, std::move(bi)));
      ++blocks;
    }
  }
  const DualPick pick = best_dual(y, cands, params, cfg, &est.evaluations);
  est.lower = pick.found ? pick.value : 0.0;
  if (pick.found) est.witness_dual = cands[pick.index];
  return est;
}

double dual_lower_bound(const GrandSequence& y, GrandParams params,
                        const std::vector<GrandSequence>& candidates,
                        const OptimizerConfig& cfg) {
  validate_params(params);
  require_plain(y, "dual_lower_bound");
  return best_dual(y, candidates, params, cfg, nullptr).value;
}

Decomposition dominated_transfer(const Decomposition& x_decomp, const GrandSequence& y) {
  validate_decomposition(x_decomp);
  require_plain(y, "dominated_transfer");
  for (const auto& [k, v] : x_decomp.base.entries) {
    (void)k;
    if (v < 0.0)
      throw std::invalid_argument(
          "dominated_transfer: base must be entrywise nonnegative");
  }
  for (const auto& [k, v] : y.entries) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument(
          "dominated_transfer: y must be entrywise nonnegative");
    if (v > value_at(x_decomp.base, k))
      throw std::invalid_argument(
          "dominated_transfer: y must be dominated by the base");
  }

  const std::size_t J = x_decomp.parts.size();
  Decomposition out;
  out.base = y;
  out.parts.assign(J, std::vector<double>(y.entries.size(), 0.0));
  const auto& be = x_decomp.base.entries;
  for (std::size_t i = 0; i < y.entries.size(); ++i) {
    const std::int64_t k = y.entries[i].first;
    const double yv = y.entries[i].second;
    if (!(yv > 0.0)) continue;
    auto it = std::lower_bound(
        be.begin(), be.end(), k,
        [](const std::pair<std::int64_t, double>& e, std::int64_t kk) {
          return e.first < kk;
        });
    if (it == be.end() || it->first != k) continue;  // dominated => yv was 0
    const std::size_t bi = static_cast<std::size_t>(it - be.begin());
    // Walk the parts in order, keeping full shares until the running sum
    // first exceeds y_k; that part keeps only the remainder and everything
    // later is cut entirely. Clamps keep 0 <= share <= original exactly.
    double prefix = 0.0;
    bool past = false;
    for (std::size_t j = 0; j < J; ++j) {
      const double xs = x_decomp.parts[j][bi];
      const double next = prefix + xs;
      double t;
      if (past) {
        t = 0.0;
      } else if (next > yv) {
        t = std::min(std::max(yv - prefix, 0.0), xs);
        past = true;
      } else {
        t = xs;
      }
      out.parts[j][i] = t;
      prefix = next;
    }
  }
  return out;
}

LatticeReport lattice_compare(const GrandSequence& x, const GrandSequence& y,
                              GrandParams params, int budget, double tolerance,
                              const OptimizerConfig& cfg, std::uint64_t seed) {
  validate_params(params);
  require_plain(x, "lattice_compare");
  require_plain(y, "lattice_compare");
  for (const auto& [k, v] : x.entries) {
    (void)k;
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("lattice_compare: x must be entrywise nonnegative");
  }
  for (const auto& [k, v] : y.entries) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("lattice_compare: y must be entrywise nonnegative");
    if (v > value_at(x, k))
      throw std::invalid_argument("lattice_compare: require 0 <= y <= x entrywise");
  }

  LatticeReport rep;
  SmallNormEstimate sx = small_norm_upper(x, params, budget, cfg,
                                          mix_seed(seed, fnv1a("lattice-x"), 0));
  auto grid_value = [&](const Decomposition& d) {
    double g = 0.0;
    for (const auto& part : d.parts) g += run_min(part, params, cfg).grid_upper;
    return g;
  };

  double x_grid = kInf, y_grid = kInf, worst = -kInf;
  std::vector<Decomposition> transfers;
  transfers.reserve(sx.explored.size());
  for (const auto& d : sx.explored) {
    const double gx = grid_value(d);
    Decomposition t = dominated_transfer(d, y);
    const double gt = grid_value(t);
    x_grid = std::min(x_grid, gx);
    y_grid = std::min(y_grid, gt);
    worst = std::max(worst, gt - gx);
    transfers.push_back(std::move(t));
  }
  rep.decompositions_checked = static_cast<int>(transfers.size());
  if (transfers.empty()) {
    x_grid = sx.upper;
    y_grid = 0.0;
    worst = 0.0;
  }

  SmallNormEstimate sy =
      small_norm_upper(y, params, budget, cfg,
                       mix_seed(seed, fnv1a("lattice-y"), 0), &transfers);

  const double scale = std::isfinite(x_grid) ? std::max(1.0, x_grid) : 1.0;
  const double slack = tolerance * scale;
  rep.x_upper = sx.upper;
  rep.y_upper = sy.upper;
  rep.x_grid = x_grid;
  rep.y_grid = y_grid;
  rep.worst_residual = worst;

  const bool per_ok = worst <= slack;
  const bool overall_ok = y_grid <= x_grid + slack && sy.upper <= x_grid + slack;
  std::ostringstream os;
  os << "checked " << rep.decompositions_checked << " splittings; grid "
     << y_grid << " <= " << x_grid << "; refined " << sy.upper << " vs "
     << sx.upper;
  if (per_ok && overall_ok) {
    rep.status = CheckStatus::Pass;
  } else if (sy.lower > sx.upper + slack) {
    rep.status = CheckStatus::Fail;
    os << "; certified violation: the dominated side's lower bound exceeds the"
          " dominating side's upper bound";
  } else {
    rep.status = CheckStatus::Inconclusive;
    os << "; brackets too loose to order the two sides";
  }
  rep.detail = os.str();
  return rep;
}

}  // namespace granda
