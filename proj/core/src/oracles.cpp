#include "bfmd/oracles.hpp"

#include <stdexcept>

namespace bfmd {

namespace {

// Ascending enumeration of the subsets of `region` (including 0).
template <typename F>
void for_each_subset(int n, Subset region, F&& fn) {
  const Subset top = full_mask(n);
  for (Subset s = 0; s <= top; ++s) {
    if ((s & ~region) == 0) fn(s);
    if (s == top) break;
  }
}

}  // namespace

DemandResult demand(const Instance& inst, const ValueTable& g,
                    const CostProfile& q, const Rational& kappa,
                    Subset region) {
  DemandResult best;  // S = empty has objective 0
  best.objective = 0;
  for_each_subset(inst.n(), region, [&](Subset s) {
    const Rational obj = g[s] - kappa * inst.total_cost(q, s);
    if (obj > best.objective) {
      best.set = s;
      best.objective = obj;
    }
  });
  return best;
}

DemandResult constrained_demand(const Instance& inst, const ValueTable& g,
                                const CostProfile& q, const Rational& kappa,
                                const Rational& cap, Subset region) {
  DemandResult best;
  best.objective = 0;
  bool have = false;
  for_each_subset(inst.n(), region, [&](Subset s) {
    if (g[s] > cap) return;
    const Rational obj = g[s] - kappa * inst.total_cost(q, s);
    if (!have || obj > best.objective) {
      best.set = s;
      best.objective = obj;
      have = true;
    }
  });
  // The empty set always qualifies (g(0) = 0 <= cap for cap >= 0), so `best`
  // is meaningful even for degenerate caps.
  return best;
}

std::optional<CoverResult> knapsack_cover(const Instance& inst,
                                          const ValueTable& g,
                                          const CostProfile& q,
                                          const Rational& val, Subset region) {
  std::optional<CoverResult> best;
  for_each_subset(inst.n(), region, [&](Subset s) {
    if (g[s] < val) return;
    const Rational cost = inst.total_cost(q, s);
    if (!best || cost < best->cost) best = CoverResult{s, cost};
  });
  return best;
}

DemandResult incremental_demand(const Instance& inst, const ValueTable& g,
                                const CostProfile& q, Subset base, int player,
                                const Rational& kappa) {
  DemandResult best;
  best.objective = 0;
  const Subset group = inst.group_mask(player);
  for_each_subset(inst.n(), group, [&](Subset s) {
    const Rational marginal = g[s | base] - g[base];
    const Rational obj = marginal - kappa * inst.player_cost(q, player, s);
    if (obj > best.objective) {
      best.set = s;
      best.objective = obj;
    }
  });
  return best;
}

namespace {

FractionalSolution config_lp(const Instance& inst, const ValueTable& g,
                             const CostProfile& q, Subset region,
                             const Rational* kappa, const Rational* cap) {
  std::vector<Subset> cols;
  for_each_subset(inst.n(), region, [&](Subset s) { cols.push_back(s); });
  const int nc = static_cast<int>(cols.size());
  LinearProgram lp;
  lp.sense = Sense::Max;
  lp.objective.resize(nc);
  std::vector<Rational> row_a(nc), row_b(nc, Rational(1));
  for (int j = 0; j < nc; ++j) {
    const Rational cost = inst.total_cost(q, cols[j]);
    if (kappa) {
      lp.objective[j] = g[cols[j]] - *kappa * cost;
      row_a[j] = g[cols[j]];
    } else {
      lp.objective[j] = g[cols[j]];
      row_a[j] = cost;
    }
  }
  lp.rows.push_back(std::move(row_a));
  lp.rels.push_back(Rel::Le);
  lp.rhs.push_back(cap ? *cap : inst.budget());
  lp.rows.push_back(std::move(row_b));
  lp.rels.push_back(Rel::Le);
  lp.rhs.push_back(Rational(1));
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::logic_error("config LP must be feasible and bounded");
  FractionalSolution out;
  out.objective = sol.objective;
  out.mass = 0;
  for (const auto& [j, w] : sol.support) {
    out.support.emplace_back(cols[j], w);
    out.mass += w;
  }
  return out;
}

}  // namespace

FractionalSolution solve_bflp(const Instance& inst, const ValueTable& g,
                              const CostProfile& q, Subset region) {
  return config_lp(inst, g, q, region, nullptr, nullptr);
}

FractionalSolution solve_cdlp(const Instance& inst, const ValueTable& g,
                              const CostProfile& q, Subset region,
                              const Rational& kappa, const Rational& cap) {
  return config_lp(inst, g, q, region, &kappa, &cap);
}

KnapsackResult scaled_knapsack_max(const ScaledKnapsack& in) {
  const int m = static_cast<int>(in.items.size());
  Int wsum = 0;
  for (const Int& w : in.weights) {
    if (w < 0) throw std::invalid_argument("knapsack: negative weight");
    wsum += w;
  }
  if (in.capacity < 0) return {};  // only the empty set (weight 0 > capacity
                                   // is impossible; capacity < 0 admits none,
                                   // return empty with profit 0 as the
                                   // no-trade outcome)
  const Int capI = in.capacity < wsum ? in.capacity : wsum;
  const std::size_t cap = static_cast<std::size_t>(capI);

  struct Cell {
    bool reach = false;
    Rational profit;
    Subset mask = 0;
  };
  std::vector<Cell> dp(cap + 1);
  dp[0].reach = true;
  for (int j = 0; j < m; ++j) {
    const Int& wj = in.weights[j];
    const Rational& pj = in.profits[j];
    const Subset bit = Subset(1) << in.items[j];
    if (wj == 0) {
      // Zero-weight item: take exactly when it strictly helps (keeps the
      // smallest-mask maximizer, since skipping preserves the smaller mask).
      if (pj > 0) {
        for (auto& cell : dp) {
          if (cell.reach) {
            cell.profit += pj;
            cell.mask |= bit;
          }
        }
      }
      continue;
    }
    if (wj > capI) continue;
    const std::size_t w = static_cast<std::size_t>(wj);
    for (std::size_t t = cap; t + 1 > w; --t) {
      const Cell& src = dp[t - w];
      if (!src.reach) continue;
      Cell cand{true, src.profit + pj, src.mask | bit};
      Cell& dst = dp[t];
      if (!dst.reach || cand.profit > dst.profit ||
          (cand.profit == dst.profit && cand.mask < dst.mask))
        dst = cand;
    }
  }
  KnapsackResult best;
  best.profit = 0;
  bool have = false;
  for (std::size_t t = 0; t <= cap; ++t) {
    if (!dp[t].reach) continue;
    if (!have || dp[t].profit > best.profit ||
        (dp[t].profit == best.profit && dp[t].mask < best.set)) {
      best.set = dp[t].mask;
      best.profit = dp[t].profit;
      best.weight = Int(t);
      have = true;
    }
  }
  return best;
}

std::optional<KnapsackResult> scaled_knapsack_cover(const ScaledKnapsack& in) {
  const int m = static_cast<int>(in.items.size());
  if (in.target < 0) throw std::invalid_argument("knapsack: negative target");
  const std::size_t tgt = static_cast<std::size_t>(in.target);

  struct Cell {
    bool reach = false;
    Rational cost;
    Subset mask = 0;
  };
  // dp[t] = cheapest set whose saturated weight sum is exactly t (weights
  // clipped at the target so the table stays small even for huge weights).
  std::vector<Cell> dp(tgt + 1);
  dp[0].reach = true;
  for (int j = 0; j < m; ++j) {
    Int wj = in.weights[j];
    if (wj < 0) throw std::invalid_argument("knapsack: negative weight");
    if (wj > in.target) wj = in.target;
    const std::size_t w = static_cast<std::size_t>(wj);
    const Rational& cj = in.profits[j];
    const Subset bit = Subset(1) << in.items[j];
    std::vector<Cell> next = dp;
    for (std::size_t t = 0; t <= tgt; ++t) {
      if (!dp[t].reach) continue;
      const std::size_t t2 = std::min(t + w, tgt);
      Cell cand{true, dp[t].cost + cj, dp[t].mask | bit};
      Cell& dst = next[t2];
      if (!dst.reach || cand.cost < dst.cost ||
          (cand.cost == dst.cost && cand.mask < dst.mask))
        dst = cand;
    }
    dp = std::move(next);
  }
  if (!dp[tgt].reach) return std::nullopt;
  return KnapsackResult{dp[tgt].mask, dp[tgt].cost, in.target};
}

}  // namespace bfmd
