// Mechanisms built on a random player split plus a demand-style main branch:
// the fractional-lottery family, the constrained-demand family with a
// top-singleton fallback, and the random power-of-two scale variants.
#include <bit>

#include "mech_internal.hpp"

namespace bfmd::detail {

namespace {

Rational pow2(int ell) { return Rational(Int(1) << ell); }

/// Fractional-relaxation optimum of the budget problem over one side.
Rational side_lp_star(const Ctx& ctx, Subset region) {
  return solve_bflp(ctx.inst, ctx.inst.valuation().dense_table(),
                    ctx.reported, region)
      .objective;
}

void require_additive_reports(const Ctx& ctx, const char* mech) {
  for (const auto& c : ctx.reported)
    if (!c.additive())
      throw std::invalid_argument(std::string(mech) +
                                  ": needs additive reported costs");
}

/// Dense table of an additive integer weight function (zero outside the
/// weighted items).
ValueTable dense_weight_table(int n, const std::vector<Int>& witem) {
  ValueTable wt(std::size_t(1) << n, Rational(0));
  for (Subset s = 1; s < (Subset(1) << n); ++s) {
    int low = std::countr_zero(s);
    wt[s] = wt[s & (s - 1)] + Rational(witem[low]);
  }
  return wt;
}

}  // namespace

Outcome mech_bf_in_exp(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  Split sp = split_by_bits(ctx, need_partition_bits(ctx), out);
  Rational v1 = side_lp_star(ctx, sp.items1);
  Rational lam_v1 = *ctx.params.lambda * v1;
  out.trace.push_back("scale V1=" + fmt_rat(v1));
  return lottery_branch(ctx, ctx.inst.valuation().dense_table(),
                        lam_v1 / ctx.inst.budget(), lam_v1, sp.items2,
                        std::move(out));
}

Outcome mech_subadd_bf_in_exp(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  Split sp = split_by_bits(ctx, need_partition_bits(ctx), out);
  Rational v1 = side_lp_star(ctx, sp.items1);
  const Rational& gamma = *ctx.params.gamma;
  Rational cap = *ctx.params.lambda * v1 / gamma;
  out.trace.push_back("scale V1=" + fmt_rat(v1) + " surrogate gap " +
                      fmt_rat(gamma));
  ValueTable vx =
      player_respecting_xos(ctx.inst, ctx.inst.valuation().dense_table());
  return lottery_branch(ctx, vx, cap / ctx.inst.budget(), cap, sp.items2,
                        std::move(out));
}

Outcome mech_unibf_xos_nob(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  Split sp = split_by_bits(ctx, need_partition_bits(ctx), out);
  Rational v1 = opt_bench_value(ctx.inst, ctx.inst.valuation().dense_table(),
                                ctx.reported, sp.items1);
  Rational lam_v1 = *ctx.params.lambda * v1;
  out.trace.push_back("scale V1=" + fmt_rat(v1) +
                      " (non-dominant benchmark over items1)");
  if (need_branch_coin(ctx) < *ctx.params.p) {
    out.flags["branch"] = 1;
    return demand_branch(ctx, ctx.inst.valuation().dense_table(),
                         lam_v1 / ctx.inst.budget(), lam_v1, sp.items2,
                         std::move(out));
  }
  out.flags["branch"] = 0;
  return top_singleton_outcome(ctx, std::move(out));
}

Outcome mech_unibf_supadd_nob(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  Split sp = split_by_bits(ctx, need_partition_bits(ctx), out);
  Rational v1 = side_lp_star(ctx, sp.items1);
  Rational vmax(0);
  if (ctx.universe != 0) vmax = global_vmax(ctx.inst, ctx.universe).second;
  Rational cap = *ctx.params.lambda * v1 + vmax;
  out.trace.push_back("scale V1=" + fmt_rat(v1) + " vmax=" + fmt_rat(vmax));
  if (need_branch_coin(ctx) < *ctx.params.p) {
    out.flags["branch"] = 1;
    return demand_branch(ctx, ctx.inst.valuation().dense_table(),
                         cap / ctx.inst.budget(), cap, sp.items2,
                         std::move(out));
  }
  out.flags["branch"] = 0;
  return top_singleton_outcome(ctx, std::move(out));
}

Outcome mech_unibf_add_nob(const Ctx& ctx) {
  require_additive_reports(ctx, "unibf_add_nob");
  Outcome out = blank_outcome(ctx);
  Split sp = split_by_bits(ctx, need_partition_bits(ctx), out);
  Rational v1 = side_lp_star(ctx, sp.items1);
  Rational lam_v1 = *ctx.params.lambda * v1;
  out.trace.push_back("scale V1=" + fmt_rat(v1));
  if (need_branch_coin(ctx) >= *ctx.params.p) {
    out.flags["branch"] = 0;
    return top_singleton_outcome(ctx, std::move(out));
  }
  out.flags["branch"] = 1;
  if (ctx.universe == 0) return out;
  Rational vmax = global_vmax(ctx.inst, ctx.universe).second;
  if (vmax == 0) {
    out.trace.push_back("all item values are zero: empty outcome");
    return out;
  }
  int n_eff = popcount(ctx.universe);
  Rational cap_exact = Rational(n_eff) * lam_v1 / vmax + 2 * n_eff;
  Rational kw = cap_exact / ctx.inst.budget();
  ScaledKnapsack in;
  std::vector<Int> witem(ctx.inst.n(), Int(0));
  for (int e : items_of(sp.items2)) {
    Int w = ceil_rat(Rational(n_eff) * ctx.inst.value(bit(e)) / vmax);
    in.items.push_back(e);
    in.weights.push_back(w);
    in.profits.push_back(Rational(w) - kw * item_cost(ctx, e));
    witem[e] = w;
  }
  in.capacity = floor_rat(cap_exact);
  KnapsackResult best = scaled_knapsack_max(in);
  ValueTable wt = dense_weight_table(ctx.inst.n(), witem);
  out.chosen = best.set;
  out.payments = vcg_payments(ctx.inst, wt, ctx.reported, best.set, kw,
                              Rational(in.capacity), sp.items2);
  out.trace.push_back("scaled knapsack winner " + fmt_set(best.set) +
                      " weight " + fmt_rat(Rational(best.weight)) +
                      " of capacity " + fmt_rat(Rational(in.capacity)));
  return out;
}

Outcome mech_optalg_logn(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  int n_eff = popcount(ctx.universe);
  if (n_eff == 0) return out;
  int ell = need_exponent_coin(ctx, ceil_log2(n_eff));
  Rational vmax = global_vmax(ctx.inst, ctx.universe).second;
  Rational v1 = vmax * pow2(ell);
  Rational lam_v1 = *ctx.params.lambda * v1;
  out.flags["ell"] = Rational(ell);
  out.trace.push_back("scale V1=" + fmt_rat(v1) + " (vmax * 2^" +
                      std::to_string(ell) + ")");
  if (need_branch_coin(ctx) < *ctx.params.p) {
    out.flags["branch"] = 1;
    return demand_branch(ctx, ctx.inst.valuation().dense_table(),
                         lam_v1 / ctx.inst.budget(), lam_v1, ctx.universe,
                         std::move(out));
  }
  out.flags["branch"] = 0;
  return top_singleton_outcome(ctx, std::move(out));
}

Outcome mech_optalg_logn_exp(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  int n_eff = popcount(ctx.universe);
  if (n_eff == 0) return out;
  int ell = need_exponent_coin(ctx, ceil_log2(n_eff));
  Rational vmax = global_vmax(ctx.inst, ctx.universe).second;
  Rational lam_v1 = *ctx.params.lambda * vmax * pow2(ell);
  out.flags["ell"] = Rational(ell);
  out.trace.push_back("scale 2^" + std::to_string(ell));
  return lottery_branch(ctx, ctx.inst.valuation().dense_table(),
                        lam_v1 / ctx.inst.budget(), lam_v1, ctx.universe,
                        std::move(out));
}

Outcome mech_optalg_logz(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  Split sp = split_by_bits(ctx, need_partition_bits(ctx), out);
  int ell = need_exponent_coin(ctx, ceil_log2(std::max(1, ctx.inst.zeta())));
  Rational sd1 = sd_opt_value(ctx.inst, ctx.reported, sp.items1);
  Rational vmax(0);
  if (ctx.universe != 0) vmax = global_vmax(ctx.inst, ctx.universe).second;
  Rational v1 = std::max(sd1, vmax) * pow2(ell);
  Rational lam_v1 = *ctx.params.lambda * v1;
  out.flags["ell"] = Rational(ell);
  out.trace.push_back("scale V1=" + fmt_rat(v1) + " (max(single-demand " +
                      fmt_rat(sd1) + ", vmax " + fmt_rat(vmax) + ") * 2^" +
                      std::to_string(ell) + ")");
  if (need_branch_coin(ctx) < *ctx.params.p) {
    out.flags["branch"] = 1;
    return demand_branch(ctx, ctx.inst.valuation().dense_table(),
                         lam_v1 / ctx.inst.budget(), lam_v1, sp.items2,
                         std::move(out));
  }
  out.flags["branch"] = 0;
  return top_singleton_outcome(ctx, std::move(out));
}

}  // namespace bfmd::detail
