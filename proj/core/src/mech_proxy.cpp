// Deterministic proxy mechanisms that hand the whole budget to a single
// winner chosen from report-independent candidate families, the
// single-player building blocks with success bits, and the branch
// mechanisms that fall back to a proxy.
#include <algorithm>

#include "mech_internal.hpp"

namespace bfmd::detail {

namespace {

void require_additive_reports(const Ctx& ctx, const char* mech) {
  for (const auto& c : ctx.reported)
    if (!c.additive())
      throw std::invalid_argument(std::string(mech) +
                                  ": needs additive reported costs");
}

/// Max of own_group_opt over the players of `side` divided by gamma: the
/// (under-estimated) target value used by the proxy mechanisms.
Rational proxy_target(const Ctx& ctx, Subset side, const Rational& gamma,
                      Outcome& out) {
  Rational val(0);
  for (int i = 0; i < ctx.inst.k(); ++i)
    if (contains(side, i)) val = std::max(val, own_group_opt(ctx, i));
  val /= gamma;
  out.trace.push_back("target value " + fmt_rat(val) + " from players " +
                      fmt_set(side));
  return val;
}

/// Prepends the branch preamble trace of `pre` to a fallback outcome.
Outcome merge_fallback(Outcome pre, Outcome sub) {
  sub.trace.insert(sub.trace.begin(), pre.trace.begin(), pre.trace.end());
  sub.flags["branch"] = Rational(0);
  return sub;
}

}  // namespace

Outcome mech_second_opt(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  int k = ctx.inst.k();
  std::vector<Rational> opt(k);
  {
    std::string line = "group optima:";
    for (int i = 0; i < k; ++i) {
      opt[i] = own_group_opt(ctx, i);
      line += ' ' + fmt_rat(opt[i]);
    }
    out.trace.push_back(line);
  }
  std::vector<Rational> prefix(k, Rational(0)), suffix(k, Rational(0));
  for (int i = 1; i < k; ++i) prefix[i] = std::max(prefix[i - 1], opt[i - 1]);
  for (int i = k - 2; i >= 0; --i)
    suffix[i] = std::max(suffix[i + 1], opt[i + 1]);
  // Candidate family of player i: local sets beating every earlier group
  // optimum weakly and every later one strictly (the last player's strict
  // side is vacuous). The cheapest candidate overall wins the whole budget.
  bool found = false;
  Rational best_cost(0);
  Subset best_set = 0;
  int best_owner = -1;
  for (int i = 0; i < k; ++i) {
    Subset mask = ctx.inst.group_mask(i) & ctx.universe;
    for (Subset s = mask;; s = (s - 1) & mask) {
      const Rational& vs = ctx.inst.value(s);
      if (vs >= prefix[i] && (i == k - 1 || vs > suffix[i])) {
        Rational cost = ctx.inst.player_cost(ctx.reported, i, s);
        if (!found || cost < best_cost ||
            (cost == best_cost && s < best_set)) {
          found = true;
          best_cost = cost;
          best_set = s;
          best_owner = i;
        }
      }
      if (s == 0) break;
    }
  }
  if (!found) {
    out.trace.push_back("no candidate set: empty outcome");
    return out;
  }
  out.chosen = best_set;
  out.trace.push_back("cheapest candidate " + fmt_set(best_set) + " cost " +
                      fmt_rat(best_cost) + " of player " +
                      std::to_string(best_owner));
  if (best_set != 0) {
    out.payments[best_owner] = ctx.inst.budget();
    out.flags["winner"] = Rational(best_owner);
  }
  return out;
}

Outcome mech_second_opt_poly(const Ctx& ctx) {
  require_additive_reports(ctx, "second_opt_poly");
  Outcome out = blank_outcome(ctx);
  Partition part = random_partition(ctx.inst, need_proxy_bits(ctx));
  Rational val = proxy_target(ctx, part.players1, *ctx.params.gamma, out);
  int n_eff = popcount(ctx.universe);
  for (int i = 0; i < ctx.inst.k(); ++i) {
    if (!contains(part.players2, i)) continue;
    ScaledKnapsack in;
    for (int e : items_of(ctx.inst.group_mask(i) & ctx.universe)) {
      const Rational& ve = ctx.inst.value(bit(e));
      Int w = val == 0 ? (ve > 0 ? Int(n_eff) : Int(0))
                       : floor_rat(Rational(2 * n_eff) * ve / val);
      in.items.push_back(e);
      in.weights.push_back(w);
      in.profits.push_back(item_cost(ctx, e));
    }
    in.target = n_eff;
    auto cover = scaled_knapsack_cover(in);
    if (cover && cover->profit <= ctx.inst.budget()) {
      out.chosen = cover->set;
      out.payments[i] = ctx.inst.budget();
      out.flags["winner"] = Rational(i);
      out.trace.push_back("player " + std::to_string(i) +
                          " covers the weight target with " +
                          fmt_set(cover->set) + " at cost " +
                          fmt_rat(cover->profit));
      return out;
    }
  }
  out.trace.push_back("no covering player within budget: empty outcome");
  return out;
}

Outcome one_player_demand(const Ctx& ctx, int player, const Rational& val) {
  Outcome out = blank_outcome(ctx);
  out.flags["flag"] = Rational(0);
  if (val == 0) {
    out.trace.push_back("target value zero: empty outcome");
    return out;
  }
  const Rational& b = ctx.inst.budget();
  Rational kappa = val / (2 * b);
  Rational cap = val / 2;
  DemandResult dr = constrained_demand(
      ctx.inst, ctx.inst.valuation().dense_table(), ctx.reported, kappa, cap,
      ctx.inst.group_mask(player) & ctx.universe);
  out.trace.push_back("player " + std::to_string(player) +
                      " capped demand " + fmt_set(dr.set) + " objective " +
                      fmt_rat(dr.objective));
  if (dr.objective >= val / 8) {
    out.chosen = dr.set;
    out.payments[player] = (2 * b / val) * ctx.inst.value(dr.set) - b / 4;
    out.flags["flag"] = Rational(1);
  }
  return out;
}

Outcome one_player_item(const Ctx& ctx, int player, const Rational& val) {
  Outcome out = blank_outcome(ctx);
  out.flags["flag"] = Rational(0);
  std::optional<std::pair<Rational, int>> best;
  for (int e : items_of(ctx.inst.group_mask(player) & ctx.universe)) {
    if (ctx.inst.value(bit(e)) < val / 8) continue;
    Rational c = item_cost(ctx, e);
    if (!best || c < best->first) best = {c, e};
  }
  if (best && best->first <= ctx.inst.budget()) {
    out.chosen = bit(best->second);
    out.payments[player] = ctx.inst.budget();
    out.flags["flag"] = Rational(1);
    out.trace.push_back("player " + std::to_string(player) +
                        " cheapest high-value item " + fmt_set(out.chosen) +
                        " cost " + fmt_rat(best->first));
  } else {
    out.trace.push_back("player " + std::to_string(player) +
                        " has no affordable high-value item");
  }
  return out;
}

Outcome mech_m1(const Ctx& ctx) {
  return one_player_demand(ctx, *ctx.params.player, *ctx.params.val);
}

Outcome mech_m2(const Ctx& ctx) {
  return one_player_item(ctx, *ctx.params.player, *ctx.params.val);
}

Outcome mech_second_opt_cdemd(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  Partition part = random_partition(ctx.inst, need_proxy_bits(ctx));
  Rational val = proxy_target(ctx, part.players1, *ctx.params.gamma, out);
  bool second = need_j_coin(ctx);
  out.flags["j"] = Rational(second ? 2 : 1);
  out.flags["flag"] = Rational(0);
  for (int i = 0; i < ctx.inst.k(); ++i) {
    if (!contains(part.players2, i)) continue;
    Outcome sub = second ? one_player_item(ctx, i, val)
                         : one_player_demand(ctx, i, val);
    out.trace.insert(out.trace.end(), sub.trace.begin(), sub.trace.end());
    if (sub.flags.at("flag") == 1) {
      out.chosen = sub.chosen;
      out.payments[i] = sub.payments[i];
      out.flags["winner"] = Rational(i);
      out.flags["flag"] = Rational(1);
      return out;
    }
  }
  out.trace.push_back("no player succeeded: empty outcome");
  return out;
}

Outcome mech_xos_gen_overbid(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  Split sp = split_by_bits(ctx, need_partition_bits(ctx), out);
  Rational v1 = opt_alg_value(ctx.inst, ctx.inst.valuation().dense_table(),
                              ctx.reported, sp.items1);
  Rational lam_v1 = *ctx.params.lambda * v1;
  out.trace.push_back("scale V1=" + fmt_rat(v1));
  if (need_branch_coin(ctx) < *ctx.params.p) {
    out.flags["branch"] = Rational(1);
    return demand_branch(ctx, ctx.inst.valuation().dense_table(),
                         lam_v1 / ctx.inst.budget(), lam_v1, sp.items2,
                         std::move(out));
  }
  return merge_fallback(std::move(out), mech_second_opt(ctx));
}

Outcome mech_additive_overbid(const Ctx& ctx) {
  require_additive_reports(ctx, "additive_overbid");
  Outcome out = blank_outcome(ctx);
  Split sp = split_by_bits(ctx, need_partition_bits(ctx), out);
  Rational vstar = opt_alg_value(ctx.inst, ctx.inst.valuation().dense_table(),
                                 ctx.reported, sp.items1);
  Rational lam_v1 = *ctx.params.lambda * (vstar / *ctx.params.beta);
  out.trace.push_back("scale V1=" + fmt_rat(vstar / *ctx.params.beta));
  if (need_branch_coin(ctx) >= *ctx.params.p)
    return merge_fallback(std::move(out), mech_second_opt_poly(ctx));
  out.flags["branch"] = Rational(1);
  if (lam_v1 == 0) {
    out.trace.push_back("scale is zero: empty outcome");
    return out;
  }
  int n_eff = popcount(ctx.universe);
  Rational kw = Rational(4 * n_eff) / ctx.inst.budget();
  ScaledKnapsack in;
  std::vector<Int> witem(ctx.inst.n(), Int(0));
  for (int e : items_of(sp.items2)) {
    Int w = ceil_rat(Rational(n_eff) * ctx.inst.value(bit(e)) / lam_v1);
    in.items.push_back(e);
    in.weights.push_back(w);
    in.profits.push_back(Rational(w) - kw * item_cost(ctx, e));
    witem[e] = w;
  }
  in.capacity = Int(4 * n_eff);
  KnapsackResult best = scaled_knapsack_max(in);
  ValueTable wt(std::size_t(1) << ctx.inst.n(), Rational(0));
  for (Subset s = 1; s < (Subset(1) << ctx.inst.n()); ++s)
    wt[s] = wt[s & (s - 1)] + Rational(witem[std::countr_zero(s)]);
  out.chosen = best.set;
  out.payments = vcg_payments(ctx.inst, wt, ctx.reported, best.set, kw,
                              Rational(in.capacity), sp.items2);
  out.trace.push_back("scaled knapsack winner " + fmt_set(best.set) +
                      " weight " + fmt_rat(Rational(best.weight)));
  return out;
}

Outcome mech_xos_supadd_overbid(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  Split sp = split_by_bits(ctx, need_partition_bits(ctx), out);
  Rational v1 = opt_alg_value(ctx.inst, ctx.inst.valuation().dense_table(),
                              ctx.reported, sp.items1);
  Rational lam_v1 = *ctx.params.lambda * v1;
  out.trace.push_back("scale V1=" + fmt_rat(v1));
  if (need_branch_coin(ctx) < *ctx.params.p) {
    out.flags["branch"] = Rational(1);
    return demand_branch(ctx, ctx.inst.valuation().dense_table(),
                         lam_v1 / ctx.inst.budget(), lam_v1, sp.items2,
                         std::move(out));
  }
  return merge_fallback(std::move(out), mech_second_opt_cdemd(ctx));
}

Outcome mech_subadd_unibf(const Ctx& ctx) {
  Outcome out = blank_outcome(ctx);
  Split sp = split_by_bits(ctx, need_partition_bits(ctx), out);
  Rational v1 = opt_alg_value(ctx.inst, ctx.inst.valuation().dense_table(),
                              ctx.reported, sp.items1);
  const Rational& gamma = *ctx.params.gamma;
  Rational cap = *ctx.params.lambda * v1 / gamma;
  out.trace.push_back("scale V1=" + fmt_rat(v1) + " surrogate gap " +
                      fmt_rat(gamma));
  if (need_branch_coin(ctx) < *ctx.params.p) {
    out.flags["branch"] = Rational(1);
    ValueTable vx =
        player_respecting_xos(ctx.inst, ctx.inst.valuation().dense_table());
    return demand_branch(ctx, vx, cap / ctx.inst.budget(), cap, sp.items2,
                         std::move(out));
  }
  return merge_fallback(std::move(out), mech_second_opt(ctx));
}

}  // namespace bfmd::detail
