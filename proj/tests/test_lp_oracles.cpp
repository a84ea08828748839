// The exact simplex engine and the oracle layer: frozen worked-market values
// plus brute-force cross-checks on generated corpora.
#include <algorithm>
#include <optional>

#include "doctest.h"

#include "bfmd/lp.hpp"
#include "bfmd/oracles.hpp"
#include "fixtures.hpp"

using namespace bfmd;
using bfmd::testing::core_corpus;
using bfmd::testing::make_i0;

namespace {

/// Reference demand scan: first maximum of g(S) - kappa c(S) in ascending
/// bitmask order over subsets of region, optionally capped at g(S) <= val.
DemandResult brute_demand(const Instance& inst, const ValueTable& g,
                          const CostProfile& q, const Rational& kappa,
                          Subset region,
                          const std::optional<Rational>& cap) {
  DemandResult best;
  bool have = false;
  for (Subset s = 0; s <= region; ++s) {
    if ((s & ~region) != 0) continue;
    if (cap && g[s] > *cap) continue;
    const Rational obj = g[s] - kappa * inst.total_cost(q, s);
    if (!have || obj > best.objective) {
      best.set = s;
      best.objective = obj;
      have = true;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("simplex solves small programs exactly") {
  // max 3x + 2y s.t. x + y <= 4, x <= 3 -> optimum 11 at (3, 1)
  LinearProgram lp;
  lp.sense = Sense::Max;
  lp.objective = {Rational(3), Rational(2)};
  lp.rows = {{Rational(1), Rational(1)}, {Rational(1), Rational(0)}};
  lp.rels = {Rel::Le, Rel::Le};
  lp.rhs = {Rational(4), Rational(3)};
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == 11);
  CHECK(sol.x == std::vector<Rational>{Rational(3), Rational(1)});
  CHECK(sol.support.size() <= lp.rows.size());

  // fractional optimum stays exact: max x s.t. 3x <= 1 -> 1/3
  LinearProgram frac;
  frac.objective = {Rational(1)};
  frac.rows = {{Rational(3)}};
  frac.rels = {Rel::Le};
  frac.rhs = {Rational(1)};
  CHECK(solve_lp(frac).objective == Rational(1, 3));

  // infeasible: x >= 2 and x <= 1
  LinearProgram inf;
  inf.objective = {Rational(1)};
  inf.rows = {{Rational(1)}, {Rational(1)}};
  inf.rels = {Rel::Ge, Rel::Le};
  inf.rhs = {Rational(2), Rational(1)};
  CHECK(solve_lp(inf).status == LpStatus::Infeasible);

  // unbounded: max x with no constraint binding it
  LinearProgram unb;
  unb.objective = {Rational(1)};
  unb.rows = {{Rational(0)}};
  unb.rels = {Rel::Le};
  unb.rhs = {Rational(1)};
  CHECK(solve_lp(unb).status == LpStatus::Unbounded);

  // minimization with equality and Ge rows
  LinearProgram mn;
  mn.sense = Sense::Min;
  mn.objective = {Rational(2), Rational(3)};
  mn.rows = {{Rational(1), Rational(1)}, {Rational(1), Rational(0)}};
  mn.rels = {Rel::Eq, Rel::Ge};
  mn.rhs = {Rational(4), Rational(1)};
  LpSolution msol = solve_lp(mn);
  REQUIRE(msol.status == LpStatus::Optimal);
  CHECK(msol.objective == 8);  // x=4, y=0
}

TEST_CASE("worked-market oracle values") {
  const Instance i0 = make_i0();
  const ValueTable& g = i0.valuation().dense_table();
  const CostProfile& q = i0.true_costs();
  const Subset all = full_mask(i0.n());

  // demand at rate 1: {a,b} ties {a,b,c} at 3; smaller bitmask wins
  DemandResult d = demand(i0, g, q, Rational(1), all);
  CHECK(d.set == 0b0011u);
  CHECK(d.objective == 3);

  // constrained demand at rate 1/3 capped at value 1 -> {d}, 1 - 1/3
  DemandResult cd = constrained_demand(i0, g, q, Rational(1, 3), Rational(1),
                                       all);
  CHECK(cd.set == 0b1000u);
  CHECK(cd.objective == Rational(2, 3));

  // knapsack cover over G_1 with floor 5 -> {a,b} at cost 3
  std::optional<CoverResult> kc =
      knapsack_cover(i0, g, q, Rational(5), 0b0011u);
  REQUIRE(kc.has_value());
  CHECK(kc->set == 0b0011u);
  CHECK(kc->cost == 3);
  CHECK(!knapsack_cover(i0, g, q, Rational(100), 0b0011u).has_value());

  // incremental demand from T={a} for player 2 at rate 1/3 -> {c,d}
  DemandResult inc =
      incremental_demand(i0, g, q, 0b0001u, 1, Rational(1, 3));
  CHECK(inc.set == 0b1100u);
  CHECK(inc.objective == 3);

  // budget-feasible configuration LP: objective 6, support {({a,b}, 1)}
  FractionalSolution bflp = solve_bflp(i0, g, q, all);
  CHECK(bflp.objective == 6);
  REQUIRE(bflp.support.size() == 1);
  CHECK(bflp.support[0].first == 0b0011u);
  CHECK(bflp.support[0].second == 1);

  // capped demand LP with cap 0 only uses zero-value columns
  FractionalSolution cdlp =
      solve_cdlp(i0, g, q, all, Rational(1), Rational(0));
  CHECK(cdlp.objective == 0);
}

TEST_CASE("demand oracles agree with brute force on the corpus") {
  const std::vector<Rational> kappas = {Rational(0), Rational(1, 3),
                                        Rational(1), Rational(2)};
  int checked = 0;
  for (std::size_t idx = 0; idx < core_corpus().size(); idx += 7) {
    const Instance& inst = core_corpus()[idx];
    const ValueTable& g = inst.valuation().dense_table();
    const CostProfile& q = inst.true_costs();
    const Subset all = full_mask(inst.n());
    for (const Rational& kappa : kappas) {
      DemandResult got = demand(inst, g, q, kappa, all);
      DemandResult want = brute_demand(inst, g, q, kappa, all, std::nullopt);
      CHECK(got.set == want.set);
      CHECK(got.objective == want.objective);

      const Rational cap = inst.value(all) / 2;
      DemandResult gotc = constrained_demand(inst, g, q, kappa, cap, all);
      DemandResult wantc = brute_demand(inst, g, q, kappa, all, cap);
      CHECK(gotc.set == wantc.set);
      CHECK(gotc.objective == wantc.objective);
      ++checked;
    }
    // knapsack cover vs direct scan, over one group
    const Subset region = inst.group_mask(0);
    const Rational target = inst.value(region) / 2;
    std::optional<CoverResult> kc = knapsack_cover(inst, g, q, target, region);
    Subset best = 0;
    bool have = false;
    for (Subset s = 0; s <= region; ++s) {
      if ((s & ~region) != 0 || g[s] < target) continue;
      if (!have || inst.total_cost(q, s) < inst.total_cost(q, best)) {
        best = s;
        have = true;
      }
    }
    REQUIRE(kc.has_value() == have);
    if (have) {
      CHECK(g[kc->set] >= target);
      CHECK(kc->cost == inst.total_cost(q, best));
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("configuration LPs dominate integral solutions with tiny support") {
  for (std::size_t idx = 0; idx < core_corpus().size(); idx += 9) {
    const Instance& inst = core_corpus()[idx];
    const ValueTable& g = inst.valuation().dense_table();
    const CostProfile& q = inst.true_costs();
    const Subset all = full_mask(inst.n());

    FractionalSolution lp = solve_bflp(inst, g, q, all);
    CHECK(lp.support.size() <= 2);
    CHECK(lp.mass <= 1);
    Rational best(0);
    for (Subset s = 0; s <= all; ++s)
      if (inst.total_cost(q, s) <= inst.budget())
        best = std::max(best, g[s]);
    CHECK(lp.objective >= best);

    // feasibility of the reported support
    Rational mass(0), spend(0);
    for (const auto& [s, w] : lp.support) {
      CHECK(w > 0);
      mass += w;
      spend += w * inst.total_cost(q, s);
    }
    CHECK(mass == lp.mass);
    CHECK(spend <= inst.budget());
  }
}

TEST_CASE("scaled knapsack matches exhaustive search") {
  ScaledKnapsack in;
  in.items = {0, 1, 2, 3};
  in.weights = {Int(3), Int(2), Int(2), Int(1)};
  in.profits = {Rational(4), Rational(2), Rational(3), Rational(1)};
  in.capacity = 4;
  in.target = 5;

  auto stats = [&](Subset s) {
    Int w(0);
    Rational p(0);
    for (int j = 0; j < 4; ++j)
      if (contains(s, j)) {
        w += in.weights[j];
        p += in.profits[j];
      }
    return std::pair<Int, Rational>(w, p);
  };

  const KnapsackResult got = scaled_knapsack_max(in);
  Rational best(-1);
  Subset want = 0;
  for (Subset s = 0; s < 16u; ++s) {
    const auto [w, p] = stats(s);
    if (w > in.capacity) continue;
    if (p > best) {
      best = p;
      want = s;
    }
  }
  CHECK(got.profit == best);
  CHECK(got.set == want);

  const auto cover = scaled_knapsack_cover(in);
  REQUIRE(cover.has_value());
  Rational cheapest(-1);
  Subset cwant = 0;
  for (Subset s = 0; s < 16u; ++s) {
    const auto [w, p] = stats(s);
    if (w < in.target) continue;
    if (cheapest < 0 || p < cheapest) {
      cheapest = p;
      cwant = s;
    }
  }
  CHECK(cover->profit == cheapest);
  CHECK(cover->set == cwant);

  ScaledKnapsack hopeless = in;
  hopeless.target = 100;
  CHECK(!scaled_knapsack_cover(hopeless).has_value());
}
