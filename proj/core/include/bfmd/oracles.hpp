// Buyer-side optimization oracles. All subset scans walk bitmasks in
// ascending numeric order and update only on strict improvement, so the
// smallest-bitmask optimum is returned everywhere; region arguments restrict
// the search to subsets of the given item mask. Set functions are passed as
// dense tables indexed by global bitmask so the same oracles serve both the
// instance valuation and derived functions (e.g. the group-respecting
// cover under-approximation).
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bfmd/instance.hpp"
#include "bfmd/lp.hpp"

namespace bfmd {

/// Dense set-function table: values[mask] = g(mask), size 2^n.
using ValueTable = std::vector<Rational>;

struct DemandResult {
  Subset set = 0;
  Rational objective;  // g(set) - kappa * cost(set)
};

/// argmax_{S in region} g(S) - kappa * cost_q(S).
DemandResult demand(const Instance& inst, const ValueTable& g,
                    const CostProfile& q, const Rational& kappa,
                    Subset region);

/// Same, restricted to g(S) <= cap.
DemandResult constrained_demand(const Instance& inst, const ValueTable& g,
                                const CostProfile& q, const Rational& kappa,
                                const Rational& cap, Subset region);

struct CoverResult {
  Subset set = 0;
  Rational cost;
};

/// min-cost S in region with g(S) >= val; nullopt when no subset qualifies.
std::optional<CoverResult> knapsack_cover(const Instance& inst,
                                          const ValueTable& g,
                                          const CostProfile& q,
                                          const Rational& val, Subset region);

/// argmax_{S subseteq G_player} g(S u base) - g(base) - kappa * q_player(S).
DemandResult incremental_demand(const Instance& inst, const ValueTable& g,
                                const CostProfile& q, Subset base, int player,
                                const Rational& kappa);

/// A fractional distribution over subsets (mass may be < 1; the residue is
/// the empty outcome).
struct FractionalSolution {
  std::vector<std::pair<Subset, Rational>> support;  // ascending mask, w > 0
  Rational objective;
  Rational mass;
};

/// Budget-feasible configuration LP over subsets of `region`:
///   max sum g(S) x_S   s.t.  sum cost(S) x_S <= budget, sum x_S <= 1, x >= 0.
/// Basic optimum: support size <= 2.
FractionalSolution solve_bflp(const Instance& inst, const ValueTable& g,
                              const CostProfile& q, Subset region);

/// Capped-demand configuration LP over subsets of `region`:
///   max sum (g(S) - kappa cost(S)) x_S
///   s.t. sum g(S) x_S <= cap, sum x_S <= 1, x >= 0.
/// Basic optimum: support size <= 2.
FractionalSolution solve_cdlp(const Instance& inst, const ValueTable& g,
                              const CostProfile& q, Subset region,
                              const Rational& kappa, const Rational& cap);

/// Integer-scaled knapsack input shared by the max and cover variants.
struct ScaledKnapsack {
  std::vector<int> items;        // global item ids, ascending
  std::vector<Int> weights;      // nonnegative integers, one per item
  std::vector<Rational> profits; // per item; costs for the cover variant
  Int capacity = 0;              // max variant: sum of weights <= capacity
  Int target = 0;                // cover variant: sum of weights >= target
};

struct KnapsackResult {
  Subset set = 0;
  Rational profit;  // total profit (max) or total cost (cover)
  Int weight = 0;
};

/// Exact DP over weight values; smallest-bitmask tie-break.
KnapsackResult scaled_knapsack_max(const ScaledKnapsack& in);

/// min total profit-field subject to weight >= target; weights saturate at
/// the target internally. nullopt when the target is unreachable.
std::optional<KnapsackResult> scaled_knapsack_cover(const ScaledKnapsack& in);

}  // namespace bfmd
