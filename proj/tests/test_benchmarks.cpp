// Benchmark oracles on the worked market, brute-force agreement on the
// corpus, pruning and partitioning postconditions, and the group-respecting
// cover surrogate.
#include <algorithm>

#include "doctest.h"

#include "bfmd/benchmarks.hpp"
#include "fixtures.hpp"

using namespace bfmd;
using bfmd::testing::additive_cost;
using bfmd::testing::core_corpus;
using bfmd::testing::make_cover_gap;
using bfmd::testing::make_i0;

TEST_CASE("worked-market benchmark values") {
  const Instance i0 = make_i0();
  const Subset all = full_mask(i0.n());

  BenchmarkResult optalg = exact_benchmark(i0, BenchmarkKind::OptAlg, all);
  CHECK(optalg.value == 6);
  CHECK(optalg.witness == 0b0011u);

  BenchmarkResult optbench =
      exact_benchmark(i0, BenchmarkKind::OptBench, all);
  CHECK(optbench.value == 2);
  CHECK(optbench.witness == 0b0110u);  // {b, c}

  CHECK(exact_benchmark(i0, BenchmarkKind::OptI, all,
                        BenchParam{Rational(1), Rational(1), 0})
            .value == 6);
  CHECK(exact_benchmark(i0, BenchmarkKind::OptI, all,
                        BenchParam{Rational(1), Rational(1), 1})
            .value == 4);
  CHECK(exact_benchmark(i0, BenchmarkKind::OptSecond, all).value == 4);
  CHECK(exact_benchmark(i0, BenchmarkKind::LpStar, all).value == 6);
  CHECK(exact_benchmark(i0, BenchmarkKind::VMax, all).value == 4);

  // single-item-per-player optimum: one of {a}x{c} etc. within budget 3
  BenchmarkResult sd = exact_benchmark(i0, BenchmarkKind::SDOpt, all);
  Rational best(0);
  for (Subset s = 0; s <= all; ++s) {
    bool ok = i0.true_total_cost(s) <= i0.budget();
    for (int i = 0; i < i0.k() && ok; ++i)
      ok = popcount(s & i0.group_mask(i)) <= 1;
    if (ok) best = std::max(best, i0.value(s));
  }
  CHECK(sd.value == best);
}

TEST_CASE("vbench subtracts the dominant group") {
  const Instance i0 = make_i0();
  const ValueTable& g = i0.valuation().dense_table();
  // S = {a,b,c}: v=8, best group share max(v{a,b}, v{c}) = max(6,3)
  CHECK(vbench(i0, g, 0b0111u) == 2);
  CHECK(vbench(i0, g, 0) == 0);
  // additive valuations make the subtraction exact per group
  for (std::size_t idx = 0; idx < core_corpus().size(); idx += 11) {
    const Instance& inst = core_corpus()[idx];
    const ValueTable& wg = inst.valuation().dense_table();
    for (Subset s = 0; s <= full_mask(inst.n()); ++s) {
      Rational top(0);
      for (int i = 0; i < inst.k(); ++i)
        top = std::max(top, wg[s & inst.group_mask(i)]);
      CHECK(vbench(inst, wg, s) == wg[s] - top);
    }
  }
}

TEST_CASE("benchmark scans agree with direct enumeration on the corpus") {
  for (std::size_t idx = 0; idx < core_corpus().size(); idx += 13) {
    const Instance& inst = core_corpus()[idx];
    const ValueTable& g = inst.valuation().dense_table();
    const Subset all = full_mask(inst.n());

    Rational opt(0), ob(0);
    std::vector<Rational> opti(inst.k(), Rational(0));
    for (Subset s = 0; s <= all; ++s) {
      if (inst.true_total_cost(s) > inst.budget()) continue;
      opt = std::max(opt, g[s]);
      ob = std::max(ob, vbench(inst, g, s));
      for (int i = 0; i < inst.k(); ++i)
        if ((s & ~inst.group_mask(i)) == 0)
          opti[i] = std::max(opti[i], g[s]);
    }
    CHECK(exact_benchmark(inst, BenchmarkKind::OptAlg, all).value == opt);
    CHECK(exact_benchmark(inst, BenchmarkKind::OptBench, all).value == ob);
    Rational top(0), second(0);
    for (const Rational& v : opti) {
      if (v > top) {
        second = top;
        top = v;
      } else {
        second = std::max(second, v);
      }
    }
    CHECK(exact_benchmark(inst, BenchmarkKind::OptSecond, all).value ==
          second);
    CHECK(exact_benchmark(inst, BenchmarkKind::LpStar, all).value >= opt);

    // the ell-smoothed benchmark subtracts ell times the largest group
    // share, so it shrinks as ell grows; the empty set keeps it at >= 0
    const Rational ob1 =
        exact_benchmark(inst, BenchmarkKind::OptBenchEll, all,
                        BenchParam{Rational(1), Rational(1), 0})
            .value;
    const Rational ob5 =
        exact_benchmark(inst, BenchmarkKind::OptBenchEll, all,
                        BenchParam{Rational(5), Rational(1), 0})
            .value;
    CHECK(ob1 == ob);
    CHECK(ob5 <= ob1);
    CHECK(ob5 >= 0);
    CHECK(ob5 <= opt);
  }
}

TEST_CASE("pruning postconditions on the worked market") {
  const Instance i0 = make_i0();
  const ValueTable& g = i0.valuation().dense_table();
  const CostProfile& q = i0.true_costs();

  // S={a,b} sits inside one group, so the only group slice is all of S and
  // the cost trigger (3 > 3/2) leaves an empty complement.  The lower bound
  // min{vbench(S)-Val, Val-max_e g(e)} = min{-2, -2} is vacuous here, so
  // the empty set is a legitimate answer.
  Subset t = prune(i0, g, q, 0b0011u, Rational(2), PruneMode::GroupPrefix);
  CHECK(t == 0u);

  // S={b,c} spans both groups: the first slice {b} already reaches Val=2,
  // the value trigger keeps it, and the prefix survives whole.
  Subset tb = prune(i0, g, q, 0b0110u, Rational(2), PruneMode::GroupPrefix);
  CHECK(tb == 0b0010u);
  CHECK(g[tb] == 2);
  CHECK(i0.true_total_cost(tb) <= i0.budget() / 2);

  // superadditive mode (additive costs qualify), S={a,b}, Val=3: the item
  // prefix {a} blows the half budget (2 > 3/2), so the complement {b} wins.
  Subset te = prune(i0, g, q, 0b0011u, Rational(3), PruneMode::ElementPrefix);
  CHECK(te == 0b0010u);
}

TEST_CASE("partition maps player bits to sides") {
  const Instance i0 = make_i0();
  Partition p = random_partition(i0, {true, false});
  CHECK(p.players1 == 0b01u);
  CHECK(p.players2 == 0b10u);
  CHECK(p.items1 == 0b0011u);  // {a, b}
  CHECK(p.items2 == 0b1100u);
  Partition q = random_partition(i0, {false, false});
  CHECK(q.items1 == 0);
  CHECK(q.items2 == full_mask(4));
}

TEST_CASE("group-respecting cover surrogate") {
  // flat table: whole-set cover weight 1 is optimal, so vxos == g
  {
    std::vector<Rational> table(8, Rational(1));
    table[0] = Rational(0);
    Valuation v =
        Valuation::from_table(3, table, ValClass::Subadditive, true);
    CostProfile truth;
    std::vector<CostClass> classes;
    for (int i = 0; i < 3; ++i) {
      truth.push_back(additive_cost(i, {Rational(0)}));
      classes.push_back(CostClass{i, {truth[i]}});
    }
    Instance flat(3, {{0}, {1}, {2}}, Rational(3), std::move(v),
                  std::move(truth), std::move(classes), true, {});
    CHECK(frcover_value(flat, flat.valuation().dense_table(), 0b111u) == 1);
    ValueTable vx =
        player_respecting_xos(flat, flat.valuation().dense_table());
    CHECK(frcover_gap(flat, flat.valuation().dense_table(), vx) == 1);
  }

  // bumped top set: optimum 3/2 via half-weights on the three pair covers
  const Instance gap = make_cover_gap();
  const ValueTable& g = gap.valuation().dense_table();
  CHECK(frcover_value(gap, g, 0b111u) == Rational(3, 2));
  ValueTable vx = player_respecting_xos(gap, g);
  CHECK(vx[0b111u] == Rational(3, 2));
  CHECK(frcover_gap(gap, g, vx) == Rational(4, 3));

  // sandwich everywhere
  for (Subset s = 0; s <= 0b111u; ++s) {
    CHECK(vx[s] <= g[s]);
    int hit = popcount(s);  // singleton groups
    Rational h(0);
    for (int i = 1; i <= hit; ++i) h += Rational(1, i);
    if (s != 0) CHECK(h * vx[s] >= g[s]);
  }
}

TEST_CASE("non-strategic subadditive approximation") {
  const Instance i0 = make_i0();
  ApproxResult res = subadd_algo_approx(i0, Rational(1, 4));
  CHECK(res.lp_star == 6);
  CHECK(res.value >= Rational(3) * res.lp_star / 8);  // (1 - eps) LP*/2
  CHECK(res.value >= Rational(9, 4));
  CHECK(i0.true_total_cost(res.set) <= i0.budget());

  // preconditions enforced: eps must be positive ...
  CHECK_THROWS_AS(subadd_algo_approx(i0, Rational(0)),
                  std::invalid_argument);

  // ... the true aggregate cost must be superadditive ...
  {
    std::vector<Rational> ctab = {Rational(0), Rational(1), Rational(1),
                                  Rational(1)};
    CostProfile truth = {CostFunction(0, 2, ctab)};
    std::vector<CostClass> classes = {CostClass{0, {truth[0]}}};
    Instance subadd_cost(
        2, {{0, 1}}, Rational(2),
        Valuation::from_additive({Rational(1), Rational(1)}),
        std::move(truth), std::move(classes), false, {});
    CHECK_THROWS_AS(subadd_algo_approx(subadd_cost, Rational(1, 4)),
                    std::invalid_argument);
  }

  // ... and every singleton must fit the budget on its own.
  {
    CostProfile truth = {additive_cost(0, {Rational(5), Rational(1)})};
    std::vector<CostClass> classes = {CostClass{0, {truth[0]}}};
    Instance pricey(2, {{0, 1}}, Rational(4),
                    Valuation::from_additive({Rational(2), Rational(1)}),
                    std::move(truth), std::move(classes), false, {});
    CHECK_THROWS_AS(subadd_algo_approx(pricey, Rational(1, 4)),
                    std::invalid_argument);
  }
}
