// The greedy incremental-demand mechanism, the singleton lotteries, the
// per-group column wrapper, and the two deliberately manipulable controls.
#include "mech_internal.hpp"

namespace bfmd::detail {

Outcome mech_submod_greedy(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  Split sp = split_by_bits(ctx, need_partition_bits(ctx), out);
  const ValueTable& v = ctx.inst.valuation().dense_table();
  Rational v1 = solve_bflp(ctx.inst, v, ctx.reported, sp.items1).objective;
  Rational lam_v1 = *ctx.params.lambda * v1;
  out.trace.push_back("scale V1=" + fmt_rat(v1));
  if (lam_v1 == 0) {
    out.trace.push_back("scale is zero: empty outcome");
    return out;
  }
  Rational kappa = lam_v1 / ctx.inst.budget();
  Subset t = 0;
  for (int i = 0; i < ctx.inst.k(); ++i) {
    if (!contains(sp.players2, i)) continue;
    if (ctx.inst.value(t | ctx.inst.group_mask(i)) > lam_v1) {
      out.trace.push_back("value gate reached at player " +
                          std::to_string(i) + ": stop");
      break;
    }
    DemandResult dr =
        incremental_demand(ctx.inst, v, ctx.reported, t, i, kappa);
    Rational marginal = ctx.inst.value(t | dr.set) - ctx.inst.value(t);
    out.payments[i] = marginal / kappa;
    out.trace.push_back("player " + std::to_string(i) + " adds " +
                        fmt_set(dr.set) + " marginal " + fmt_rat(marginal));
    t |= dr.set;
  }
  out.chosen = t;
  return out;
}

Outcome mech_optalg_uniform(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  std::vector<int> items = items_of(ctx.universe);
  if (items.empty()) return out;
  int idx = need_index_coin(ctx, static_cast<int>(items.size()));
  int e = items[idx];
  out.flags["item"] = Rational(e);
  Rational c = item_cost(ctx, e);
  if (c <= ctx.inst.budget()) {
    out.chosen = bit(e);
    out.payments[ctx.inst.owner_of(e)] = ctx.inst.budget();
    out.trace.push_back("drawn item " + fmt_set(out.chosen) +
                        " affordable at " + fmt_rat(c) +
                        ", owner paid the budget");
  } else {
    out.trace.push_back("drawn item {" + std::to_string(e) +
                        "} unaffordable: empty outcome");
  }
  return out;
}

Outcome mech_optalg_emax(const Ctx& ctx) {
  return top_singleton_outcome(ctx, blank_outcome(ctx));
}

Outcome mech_optalg_zeta(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  int column = need_index_coin(ctx, ctx.inst.zeta());
  Subset psi = 0;
  for (const auto& g : ctx.inst.groups())
    if (column < static_cast<int>(g.size())) psi |= bit(g[column]);
  psi &= ctx.universe;
  out.trace.push_back("column " + std::to_string(column) + " items " +
                      fmt_set(psi));
  MechId sub_id = *ctx.params.zeta_sub;
  MechParams sub_params = resolve_params(sub_id, ctx.inst, ctx.params);
  Ctx sub_ctx{ctx.inst, ctx.reported, ctx.tape, sub_params, psi};
  Outcome sub = dispatch(sub_id, sub_ctx);
  sub.trace.insert(sub.trace.begin(), out.trace.begin(), out.trace.end());
  sub.flags["column"] = Rational(column);
  return sub;
}

Outcome mech_neg_emax_overbid(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  auto am = affordable_vmax(ctx.inst, ctx.reported, ctx.universe);
  if (!am) {
    out.trace.push_back("nothing affordable by reports: empty outcome");
    return out;
  }
  out.chosen = bit(am->first);
  out.payments[ctx.inst.owner_of(am->first)] = ctx.inst.budget();
  out.trace.push_back("top reported-affordable item " + fmt_set(out.chosen) +
                      " value " + fmt_rat(am->second) +
                      ", owner paid the budget");
  return out;
}

Outcome mech_neg_optstar(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  Subset w = 0;
  Rational best = opt_alg_value(ctx.inst, ctx.inst.valuation().dense_table(),
                                ctx.reported, ctx.universe, &w);
  out.chosen = w;
  for (int i = 0; i < ctx.inst.k(); ++i)
    if ((w & ctx.inst.group_mask(i)) != 0)
      out.payments[i] = ctx.inst.budget();
  out.trace.push_back("reported-optimal set " + fmt_set(w) + " value " +
                      fmt_rat(best) +
                      ", every touched player paid the budget");
  return out;
}

}  // namespace bfmd::detail
