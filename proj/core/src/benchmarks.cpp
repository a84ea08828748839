#include "bfmd/benchmarks.hpp"

#include <stdexcept>

#include "bfmd/classes.hpp"

namespace bfmd {

namespace {

template <typename F>
void for_each_subset(int n, Subset region, F&& fn) {
  const Subset top = full_mask(n);
  for (Subset s = 0; s <= top; ++s) {
    if ((s & ~region) == 0) fn(s);
    if (s == top) break;
  }
}

Rational max_group_share(const Instance& inst, const ValueTable& g, Subset s) {
  Rational best(0);
  for (int i = 0; i < inst.k(); ++i) {
    const Rational& x = g[s & inst.group_mask(i)];
    if (x > best) best = x;
  }
  return best;
}

}  // namespace

Rational vbench(const Instance& inst, const ValueTable& g, Subset s) {
  return g[s] - max_group_share(inst, g, s);
}

Rational vbench_ell(const Instance& inst, const ValueTable& g, Subset s,
                    const Rational& ell) {
  return g[s] - ell * max_group_share(inst, g, s);
}

Rational opt_alg_value(const Instance& inst, const ValueTable& g,
                       const CostProfile& q, Subset region, Subset* witness) {
  Rational best(0);
  Subset arg = 0;
  for_each_subset(inst.n(), region, [&](Subset s) {
    if (inst.total_cost(q, s) > inst.budget()) return;
    if (g[s] > best) {
      best = g[s];
      arg = s;
    }
  });
  if (witness) *witness = arg;
  return best;
}

Rational opt_bench_value(const Instance& inst, const ValueTable& g,
                         const CostProfile& q, Subset region,
                         Subset* witness) {
  Rational best(0);
  Subset arg = 0;
  for_each_subset(inst.n(), region, [&](Subset s) {
    if (inst.total_cost(q, s) > inst.budget()) return;
    const Rational val = vbench(inst, g, s);
    if (val > best) {
      best = val;
      arg = s;
    }
  });
  if (witness) *witness = arg;
  return best;
}

Rational opt_i_value(const Instance& inst, const CostProfile& q, int player,
                     Subset* witness) {
  // For S inside G_i the aggregate cost is just c_i(S), so the whole-budget
  // constraint and the per-player constraint coincide.
  return opt_alg_value(inst, inst.valuation().dense_table(), q,
                       inst.group_mask(player), witness);
}

Rational sd_opt_value(const Instance& inst, const CostProfile& q,
                      Subset region, Subset* witness) {
  Rational best(0);
  Subset arg = 0;
  for_each_subset(inst.n(), region, [&](Subset s) {
    for (int i = 0; i < inst.k(); ++i)
      if (popcount(s & inst.group_mask(i)) > 1) return;
    if (inst.total_cost(q, s) > inst.budget()) return;
    if (inst.value(s) > best) {
      best = inst.value(s);
      arg = s;
    }
  });
  if (witness) *witness = arg;
  return best;
}

std::optional<std::pair<int, Rational>> affordable_vmax(
    const Instance& inst, const CostProfile& q, Subset region) {
  std::optional<std::pair<int, Rational>> best;
  for (int e = 0; e < inst.n(); ++e) {
    if (!contains(region, e)) continue;
    const Subset s = Subset(1) << e;
    if (inst.total_cost(q, s) > inst.budget()) continue;
    if (!best || inst.value(s) > best->second)
      best = std::make_pair(e, inst.value(s));
  }
  return best;
}

std::pair<int, Rational> global_vmax(const Instance& inst, Subset region) {
  int arg = -1;
  Rational best(0);
  for (int e = 0; e < inst.n(); ++e) {
    if (!contains(region, e)) continue;
    if (arg < 0 || inst.value(Subset(1) << e) > best) {
      arg = e;
      best = inst.value(Subset(1) << e);
    }
  }
  return {arg, best};
}

BenchmarkResult exact_benchmark(const Instance& inst, BenchmarkKind kind,
                                Subset region, const BenchParam& param) {
  const CostProfile& q = inst.true_costs();
  const ValueTable& v = inst.valuation().dense_table();
  BenchmarkResult out;
  out.kind = kind;
  out.region = region;
  switch (kind) {
    case BenchmarkKind::OptAlg:
      out.value = opt_alg_value(inst, v, q, region, &out.witness);
      break;
    case BenchmarkKind::OptBench:
      out.value = opt_bench_value(inst, v, q, region, &out.witness);
      break;
    case BenchmarkKind::OptBenchEll: {
      Rational best(0);
      Subset arg = 0;
      for_each_subset(inst.n(), region, [&](Subset s) {
        if (inst.total_cost(q, s) > inst.budget()) return;
        const Rational val = vbench_ell(inst, v, s, param.ell);
        if (val > best) {
          best = val;
          arg = s;
        }
      });
      out.value = best;
      out.witness = arg;
      break;
    }
    case BenchmarkKind::OptParam: {
      Rational best(0);
      Subset arg = 0;
      for_each_subset(inst.n(), region, [&](Subset s) {
        if (inst.total_cost(q, s) > inst.budget()) return;
        const Rational total = v[s];
        for (int i = 0; i < inst.k(); ++i)
          if (v[s & inst.group_mask(i)] > param.eps * total) return;
        if (total > best) {
          best = total;
          arg = s;
        }
      });
      out.value = best;
      out.witness = arg;
      break;
    }
    case BenchmarkKind::LpStar: {
      out.frac = solve_bflp(inst, v, q, region);
      out.value = out.frac.objective;
      break;
    }
    case BenchmarkKind::LpStarBench: {
      // Columns: subsets of region, then the auxiliary share bound V.
      std::vector<Subset> cols;
      for_each_subset(inst.n(), region, [&](Subset s) { cols.push_back(s); });
      const int nc = static_cast<int>(cols.size());
      LinearProgram lp;
      lp.sense = Sense::Max;
      lp.objective.assign(nc + 1, Rational(0));
      for (int j = 0; j < nc; ++j) lp.objective[j] = v[cols[j]];
      lp.objective[nc] = -1;
      std::vector<Rational> cost_row(nc + 1, Rational(0));
      std::vector<Rational> mass_row(nc + 1, Rational(0));
      for (int j = 0; j < nc; ++j) {
        cost_row[j] = inst.total_cost(q, cols[j]);
        mass_row[j] = 1;
      }
      lp.rows.push_back(std::move(cost_row));
      lp.rels.push_back(Rel::Le);
      lp.rhs.push_back(inst.budget());
      lp.rows.push_back(std::move(mass_row));
      lp.rels.push_back(Rel::Le);
      lp.rhs.push_back(Rational(1));
      for (int i = 0; i < inst.k(); ++i) {
        std::vector<Rational> row(nc + 1, Rational(0));
        for (int j = 0; j < nc; ++j)
          row[j] = v[cols[j] & inst.group_mask(i)];
        row[nc] = -1;
        lp.rows.push_back(std::move(row));
        lp.rels.push_back(Rel::Le);
        lp.rhs.push_back(Rational(0));
      }
      const LpSolution sol = solve_lp(lp);
      if (sol.status != LpStatus::Optimal)
        throw std::logic_error("share-bound LP must be solvable");
      out.value = sol.objective;
      for (const auto& [j, w] : sol.support) {
        if (j < nc) {
          out.frac.support.emplace_back(cols[j], w);
          out.frac.mass += w;
        }
      }
      out.frac.objective = sol.objective;
      break;
    }
    case BenchmarkKind::OptI:
      out.value = opt_i_value(inst, q, param.player, &out.witness);
      out.region = inst.group_mask(param.player);
      break;
    case BenchmarkKind::OptSecond: {
      Rational top(0), second(0);
      for (int i = 0; i < inst.k(); ++i) {
        const Rational vi = opt_i_value(inst, q, i, nullptr);
        if (vi > top) {
          second = top;
          top = vi;
        } else if (vi > second) {
          second = vi;
        }
      }
      out.value = inst.k() >= 2 ? second : Rational(0);
      break;
    }
    case BenchmarkKind::VMax: {
      const auto best = affordable_vmax(inst, q, region);
      if (best) {
        out.value = best->second;
        out.witness = Subset(1) << best->first;
      } else {
        out.value = 0;
        out.witness = 0;
      }
      break;
    }
    case BenchmarkKind::SDOpt:
      out.value = sd_opt_value(inst, q, region, &out.witness);
      break;
  }
  return out;
}

Subset prune(const Instance& inst, const ValueTable& g, const CostProfile& q,
             Subset s, const Rational& val, PruneMode mode) {
  const Rational half = inst.budget() / 2;
  if (inst.total_cost(q, s) > inst.budget())
    throw std::invalid_argument("prune: c(S) must be <= B");

  // Build the scan order: whole group slices (ascending player index) or
  // single elements (ascending item id).
  std::vector<Subset> units;
  if (mode == PruneMode::GroupPrefix) {
    for (int i = 0; i < inst.k(); ++i)
      if (s & inst.group_mask(i)) units.push_back(s & inst.group_mask(i));
  } else {
    for (int e : items_of(s)) units.push_back(Subset(1) << e);
  }

  // Minimal prefix S1 with c(S1) > B/2 or g(S1) >= val.
  Subset s1 = 0;
  bool stopped_cost = false;
  for (Subset u : units) {
    s1 |= u;
    const bool cost_hit = inst.total_cost(q, s1) > half;
    const bool val_hit = g[s1] >= val;
    if (cost_hit || val_hit) {
      stopped_cost = cost_hit;
      break;
    }
  }
  // No trigger: the whole set is cheap and under the cap.
  const Subset base = stopped_cost ? (s & ~s1) : s1;
  // stopped on value (or never stopped): keep s1; stopped on cost: switch to
  // the complement S2 = S - S1, which costs < B/2.

  // Maximal element prefix of `base` with g <= val.
  Subset t = 0;
  for (int e : items_of(base)) {
    const Subset cand = t | (Subset(1) << e);
    if (g[cand] <= val) t = cand;
    else break;
  }
  return t;
}

Partition random_partition(const Instance& inst,
                           const std::vector<bool>& bits) {
  if (static_cast<int>(bits.size()) != inst.k())
    throw std::invalid_argument("random_partition: need one bit per player");
  Partition p;
  for (int i = 0; i < inst.k(); ++i) {
    if (bits[i]) p.players1 |= Subset(1) << i;
    else p.players2 |= Subset(1) << i;
  }
  p.items1 = inst.side_mask(p.players1);
  p.items2 = inst.side_mask(p.players2);
  return p;
}

Rational frcover_value(const Instance& inst, const ValueTable& g, Subset s) {
  if (s == 0) return Rational(0);
  std::vector<int> groups;
  for (int i = 0; i < inst.k(); ++i)
    if (s & inst.group_mask(i)) groups.push_back(i);
  const int kp = static_cast<int>(groups.size());
  // Columns: nonempty group-respecting subsets of S (choose which slices).
  std::vector<Subset> cols;
  for (Subset sel = 1; sel < (Subset(1) << kp); ++sel) {
    Subset t = 0;
    for (int j = 0; j < kp; ++j)
      if ((sel >> j) & 1u) t |= s & inst.group_mask(groups[j]);
    cols.push_back(t);
  }
  LinearProgram lp;
  lp.sense = Sense::Min;
  lp.objective.resize(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) lp.objective[j] = g[cols[j]];
  const Rel rel = inst.valuation().monotone() ? Rel::Ge : Rel::Eq;
  for (int j = 0; j < kp; ++j) {
    const Subset slice = s & inst.group_mask(groups[j]);
    std::vector<Rational> row(cols.size(), Rational(0));
    for (std::size_t c = 0; c < cols.size(); ++c)
      if ((cols[c] & slice) == slice) row[c] = 1;
    lp.rows.push_back(std::move(row));
    lp.rels.push_back(rel);
    lp.rhs.push_back(Rational(1));
  }
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::logic_error("cover LP must be solvable");
  return sol.objective;
}

ValueTable player_respecting_xos(const Instance& inst, const ValueTable& g) {
  ValueTable out(std::size_t(1) << inst.n(), Rational(0));
  for (Subset s = 1; s < out.size(); ++s) out[s] = frcover_value(inst, g, s);
  return out;
}

Rational frcover_gap(const Instance& inst, const ValueTable& g,
                     const ValueTable& vxos) {
  Rational gap(1);
  for (Subset s = 1; s < g.size(); ++s) {
    if (vxos[s] == 0) {
      if (g[s] != 0)
        throw std::logic_error("cover gap undefined: v_xos=0 < g");
      continue;
    }
    const Rational r = g[s] / vxos[s];
    if (r > gap) gap = r;
  }
  return gap;
}

ApproxResult subadd_algo_approx(const Instance& inst, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("approx: eps must be positive");
  for (const CostFunction& f : inst.true_costs())
    if (!f.superadditive())
      throw std::invalid_argument("approx: costs must be superadditive");
  const CostProfile& q = inst.true_costs();
  const ValueTable& v = inst.valuation().dense_table();
  const Subset all = full_mask(inst.n());
  for (int e = 0; e < inst.n(); ++e)
    if (inst.total_cost(q, Subset(1) << e) > inst.budget())
      throw std::invalid_argument("approx: every singleton must be affordable");

  ApproxResult out;
  out.lp_star = solve_bflp(inst, v, q, all).objective;

  const auto [emax, vmax] = global_vmax(inst, all);
  if (Rational(2) * vmax >= out.lp_star) {
    out.set = Subset(1) << emax;
    out.value = vmax;
    return out;
  }

  // Heavy items (cost >= eps*B) are guessed exactly, light items go through
  // the demand step; the returned set is the best pruned candidate over all
  // guesses.
  Subset heavy = 0;
  for (int e = 0; e < inst.n(); ++e)
    if (inst.total_cost(q, Subset(1) << e) >= eps * inst.budget())
      heavy |= Subset(1) << e;
  const Subset light = all & ~heavy;
  const Int max_guess = floor_rat(Rational(1) / eps);
  const Rational kappa = out.lp_star / (2 * inst.budget());

  bool have = false;
  for (Subset a = 0; a <= heavy; ++a) {
    if ((a & ~heavy) != 0) continue;
    if (Int(popcount(a)) > max_guess) {
      if (a == heavy) break;
      continue;
    }
    if (inst.total_cost(q, a) > inst.budget()) {
      if (a == heavy) break;
      continue;
    }
    const DemandResult star = demand(inst, v, q, kappa, a | light);
    // Maximal affordable subset of the demanded set, guessed items first.
    Subset t = 0;
    for (int pass = 0; pass < 2; ++pass) {
      const Subset pool = pass == 0 ? (star.set & a) : (star.set & ~a);
      for (int e : items_of(pool)) {
        const Subset cand = t | (Subset(1) << e);
        if (inst.total_cost(q, cand) <= inst.budget()) t = cand;
      }
    }
    if (!have || v[t] > out.value) {
      out.set = t;
      out.value = v[t];
      have = true;
    }
    if (a == heavy) break;
  }
  return out;
}

}  // namespace bfmd
