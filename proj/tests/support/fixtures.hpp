// Shared instances for the test suites: the worked four-item market with
// frozen oracle values, hand-built controls, and the generated corpora the
// acceptance gate sweeps.
#pragma once

#include <vector>

#include "bfmd/generators.hpp"
#include "bfmd/instance.hpp"

namespace bfmd::testing {

/// Additive cost function from per-item weights over the owner's group.
CostFunction additive_cost(int owner, const std::vector<Rational>& weights);

/// The worked four-item market: two players owning {a,b} and {c,d}, budget 3,
/// a submodular table valuation, additive true costs (2,1) per player, and a
/// two-member class per player; no-overbidding holds.
Instance make_i0();

/// Replay market for the manipulable top-affordable-singleton control: one
/// player, two items valued (2,1), budget 4, class {(4,1), (5,4)} — the
/// second member overbids, and reporting it steals budget-minus-one utility.
Instance make_replay_control();

/// Three singleton-group players, value 1 on every nonempty set except 2 on
/// the full set: the group-respecting cover optimum at the full set is 3/2,
/// so the observed cover gap is 4/3 > 1.
Instance make_cover_gap();

/// 50 additive-valuation / additive-cost / no-overbidding markets. Additive
/// valuations are submodular, XOS, and subadditive, and additive costs are
/// superadditive, so every catalog mechanism's preconditions hold at once.
const std::vector<Instance>& core_corpus();

/// Family extras: submodular and XOS valuations, strictly superadditive and
/// general monotone costs (some with overbidding), small subadditive tables,
/// the cover-gap control, and the named single-player families.
const std::vector<Instance>& extra_corpus();

/// core_corpus followed by extra_corpus.
const std::vector<Instance>& full_corpus();

}  // namespace bfmd::testing
