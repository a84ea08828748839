// A procurement market: items partitioned into per-player groups, a buyer
// valuation, a budget, true seller costs, and the finite public cost classes
// sellers may report from. Instances are immutable after construction and
// validated eagerly (partition structure, class membership, declared
// valuation class, no-overbidding flag).
#pragma once

#include <map>
#include <string>
#include <vector>

#include "bfmd/cost.hpp"
#include "bfmd/rational.hpp"
#include "bfmd/subset.hpp"
#include "bfmd/valuation.hpp"

namespace bfmd {

class Instance {
 public:
  /// Validates everything; throws std::invalid_argument with a diagnostic on
  /// the first violated invariant (including a failed declared-class check).
  Instance(int n, std::vector<std::vector<int>> groups, Rational budget,
           Valuation valuation, CostProfile true_costs,
           std::vector<CostClass> cost_classes, bool no_overbidding,
           std::map<std::string, std::string> meta = {});

  int n() const { return n_; }
  int k() const { return static_cast<int>(group_masks_.size()); }
  const std::vector<std::vector<int>>& groups() const { return groups_; }
  Subset group_mask(int player) const { return group_masks_[player]; }
  int owner_of(int item) const { return owner_[item]; }
  /// Largest group size (the zeta statistic).
  int zeta() const { return zeta_; }

  const Rational& budget() const { return budget_; }
  const Valuation& valuation() const { return valuation_; }
  const CostProfile& true_costs() const { return true_costs_; }
  const std::vector<CostClass>& cost_classes() const { return cost_classes_; }
  bool no_overbidding() const { return no_overbidding_; }
  const std::map<std::string, std::string>& meta() const { return meta_; }

  const Rational& value(Subset s) const { return valuation_.value(s); }

  /// Player i's cost of the global set S (only S n G_i matters).
  Rational player_cost(const CostProfile& q, int player, Subset s) const;
  /// Aggregate cost sum_i q_i(S n G_i).
  Rational total_cost(const CostProfile& q, Subset s) const;
  /// Same under the true costs.
  Rational true_total_cost(Subset s) const {
    return total_cost(true_costs_, s);
  }

  /// Union of groups of the players in `side` (bit i = player i included).
  Subset side_mask(Subset player_set) const;

  /// True iff every cost function in every class prices every singleton at
  /// most the budget (the meaning of the no-overbidding flag).
  bool all_singletons_affordable() const;

 private:
  int n_;
  std::vector<std::vector<int>> groups_;
  std::vector<Subset> group_masks_;
  std::vector<int> owner_;
  int zeta_;
  Rational budget_;
  Valuation valuation_;
  CostProfile true_costs_;
  std::vector<CostClass> cost_classes_;
  bool no_overbidding_;
  std::map<std::string, std::string> meta_;
};

}  // namespace bfmd
