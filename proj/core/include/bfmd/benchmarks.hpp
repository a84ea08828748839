// Exact benchmark quantities computed by enumeration or LP, the pruning
// procedures behind the half-budget decompositions, random player
// partitions, the group-respecting cover under-approximation for subadditive
// valuations, and the non-strategic (2+eps)-approximation algorithm.
#pragma once

#include <optional>

#include "bfmd/oracles.hpp"

namespace bfmd {

/// g(S) - max_i g(S n G_i).
Rational vbench(const Instance& inst, const ValueTable& g, Subset s);
/// g(S) - ell * max_i g(S n G_i).
Rational vbench_ell(const Instance& inst, const ValueTable& g, Subset s,
                    const Rational& ell);

enum class BenchmarkKind {
  OptAlg,       // max v(S), c(S) <= B
  OptBench,     // max vbench(S), c(S) <= B
  OptBenchEll,  // max vbench_ell(S), c(S) <= B     (param: ell)
  OptParam,     // max v(S), c(S) <= B, every group's share <= eps * v(S)
  LpStar,       // budget-feasible configuration LP optimum
  LpStarBench,  // LP relaxation of OptBench (group-share rows)
  OptI,         // max v(S), S inside G_player, c(S) <= B   (param: player)
  OptSecond,    // second largest OptI over players (0 when k = 1)
  VMax,         // max v(e) over affordable singletons (c(e) <= B)
  SDOpt         // max v(S), c(S) <= B, at most one item per player
};

struct BenchParam {
  Rational ell = Rational(1);
  Rational eps = Rational(1);
  int player = 0;
};

struct BenchmarkResult {
  BenchmarkKind kind = BenchmarkKind::OptAlg;
  Rational value;
  Subset witness = 0;        // integral witness where applicable
  FractionalSolution frac;   // LP kinds
  Subset region = 0;
};

/// All benchmarks are evaluated on true costs over subsets of `region`.
BenchmarkResult exact_benchmark(const Instance& inst, BenchmarkKind kind,
                                Subset region, const BenchParam& param = {});

/// Report-profile variants used inside mechanisms (same computations, costs
/// taken from `q`).
Rational opt_alg_value(const Instance& inst, const ValueTable& g,
                       const CostProfile& q, Subset region,
                       Subset* witness = nullptr);
Rational opt_bench_value(const Instance& inst, const ValueTable& g,
                         const CostProfile& q, Subset region,
                         Subset* witness = nullptr);
Rational opt_i_value(const Instance& inst, const CostProfile& q, int player,
                     Subset* witness = nullptr);
Rational sd_opt_value(const Instance& inst, const CostProfile& q,
                      Subset region, Subset* witness = nullptr);
/// Highest-value affordable singleton (nullopt when nothing is affordable).
std::optional<std::pair<int, Rational>> affordable_vmax(
    const Instance& inst, const CostProfile& q, Subset region);
/// Highest-value singleton ignoring affordability (no-overbidding settings).
std::pair<int, Rational> global_vmax(const Instance& inst, Subset region);

enum class PruneMode { GroupPrefix, ElementPrefix };

/// Half-budget pruning. Given c_q(S) <= B, returns T inside S with
/// c_q(T) <= B/2, g(T) <= val, and the lemma's strict value floor
/// (GroupPrefix for subadditive g with arbitrary costs, ElementPrefix for
/// superadditive aggregate costs).
Subset prune(const Instance& inst, const ValueTable& g, const CostProfile& q,
             Subset s, const Rational& val, PruneMode mode);

/// Players with bit true go to side 1, bit false to side 2.
struct Partition {
  Subset players1 = 0;  // player-index masks
  Subset players2 = 0;
  Subset items1 = 0;    // item masks (U_1, U_2)
  Subset items2 = 0;
};
Partition random_partition(const Instance& inst,
                           const std::vector<bool>& bits);

/// Optimum of the fractional group-respecting cover LP at S: the largest
/// group-respecting XOS function under g (its value at S).
Rational frcover_value(const Instance& inst, const ValueTable& g, Subset s);

/// Dense table of frcover_value over all subsets.
ValueTable player_respecting_xos(const Instance& inst, const ValueTable& g);

/// max over nonempty S of g(S)/v_xos(S) (1 when the ratio never exceeds 1);
/// the observed integrality gap used by the subadditive wrappers.
Rational frcover_gap(const Instance& inst, const ValueTable& g,
                     const ValueTable& vxos);

struct ApproxResult {
  Subset set = 0;
  Rational value;
  Rational lp_star;
};

/// Non-strategic (2+eps)-approximation of OptAlg for subadditive valuations
/// and superadditive aggregate costs with every singleton affordable.
/// Throws std::invalid_argument when preconditions fail.
ApproxResult subadd_algo_approx(const Instance& inst, const Rational& eps);

}  // namespace bfmd
