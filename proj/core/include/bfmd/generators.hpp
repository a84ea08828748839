// Instance generators: the named single-player families used by the
// lower-bound consistency checks, one inverse-CDF sampled market family, and
// a seeded random generator over the supported valuation and cost families.
// All generators are deterministic in their arguments and record their
// provenance in the instance meta map.
#pragma once

#include "bfmd/instance.hpp"

namespace bfmd {

/// One player, two items of value (alpha, 1), budget 1, and a two-member
/// class {(1,0), (2,1)}: the cheap report hides an overbidding trap that
/// caps deterministic truthful guarantees at a 1/alpha fraction.
Instance gen_det_overbid(const Rational& alpha);

/// One player, n items with geometrically escalating values (ratio
/// 1 + n/eps), budget 1, and an n-member class whose l-th member prices
/// items before l prohibitively, item l at 1, and later items free.
Instance gen_rand_overbid(int n, const Rational& eps);

/// One player, n unit-value items (n a power of two), budget n, and
/// uniform-cost class members at every power-of-two price; all singletons
/// stay affordable.
Instance gen_los_nob(int n);

/// One player, two items, budget 2, two-member class {(1,2), (3/2,1/2)}:
/// the minimal weak-monotonicity probe (values use a rational golden-ratio
/// surrogate).
Instance gen_phi();

/// n singleton-group players with unit values; each player's cost is drawn
/// by inverting a heavy-at-zero CDF on a uniform rational grid of the given
/// resolution, the class offering the drawn cost and one alternative draw.
/// The budget is n times the exact mean of the discretized distribution.
Instance gen_anari(int n, unsigned long long seed, int grid);

enum class CostFamily { Additive, Superadditive, Monotone };

struct RandomSpec {
  int n = 4;
  int k = 2;
  ValClass valuation = ValClass::Additive;
  CostFamily costs = CostFamily::Additive;
  int class_size = 2;
  unsigned long long seed = 1;
  /// Budget = ceil(budget_fraction * total true cost), at least 1.
  Rational budget_fraction = Rational(1, 2);
  /// When set, every class member's singleton costs are capped at the
  /// budget after generation so the no-overbidding flag holds.
  bool no_overbidding = false;
};

Instance gen_random(const RandomSpec& spec);

}  // namespace bfmd
