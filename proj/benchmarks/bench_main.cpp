// Microbenchmarks for the hot paths of the laboratory: the demand oracle,
// the configuration LPs, one mechanism run, a full four-property audit, and
// the structural lemma battery — all at desk scale on a fixed market.
#include <benchmark/benchmark.h>

#include "bfmd/generators.hpp"
#include "bfmd/oracles.hpp"
#include "bfmd/verify.hpp"

namespace {

using namespace bfmd;

const Instance& market() {
  static const Instance inst = [] {
    RandomSpec spec;
    spec.n = 5;
    spec.k = 2;
    spec.valuation = ValClass::Additive;
    spec.costs = CostFamily::Additive;
    spec.class_size = 2;
    spec.seed = 7;
    spec.no_overbidding = true;
    return gen_random(spec);
  }();
  return inst;
}

void BM_Demand(benchmark::State& state) {
  const Instance& inst = market();
  const ValueTable& g = inst.valuation().dense_table();
  for (auto _ : state) {
    DemandResult r = demand(inst, g, inst.true_costs(), Rational(1, 2),
                            full_mask(inst.n()));
    benchmark::DoNotOptimize(r.objective);
  }
}
BENCHMARK(BM_Demand);

void BM_BudgetLp(benchmark::State& state) {
  const Instance& inst = market();
  const ValueTable& g = inst.valuation().dense_table();
  for (auto _ : state) {
    FractionalSolution s =
        solve_bflp(inst, g, inst.true_costs(), full_mask(inst.n()));
    benchmark::DoNotOptimize(s.objective);
  }
}
BENCHMARK(BM_BudgetLp);

void BM_MechanismRun(benchmark::State& state) {
  const Instance& inst = market();
  RandomTape tape;
  tape.partition_bits = std::vector<bool>(inst.k(), true);
  tape.branch_coin = Rational(0);
  for (auto _ : state) {
    Outcome out = run_mechanism(MechId::UnibfXosNob, inst, inst.true_costs(),
                                tape);
    benchmark::DoNotOptimize(out.chosen);
  }
}
BENCHMARK(BM_MechanismRun);

void BM_FullAudit(benchmark::State& state) {
  const Instance& inst = market();
  for (auto _ : state) {
    AuditReport r =
        check_mechanism(MechId::UnibfXosNob, inst, AuditMode::Universal);
    benchmark::DoNotOptimize(r.pass);
  }
}
BENCHMARK(BM_FullAudit);

void BM_LemmaSuite(benchmark::State& state) {
  const Instance& inst = market();
  for (auto _ : state) {
    AuditReport r = lemma_suite(inst);
    benchmark::DoNotOptimize(r.pass);
  }
}
BENCHMARK(BM_LemmaSuite);

}  // namespace

BENCHMARK_MAIN();
