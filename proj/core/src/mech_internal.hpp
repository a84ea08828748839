// Private plumbing shared by the mechanism translation units: the run
// context (instance + reports + tape + resolved parameters + an item-mask
// universe restriction used by the per-group-column wrapper), checked tape
// accessors, trace formatting, and the per-mechanism entry points.
#pragma once

#include <string>
#include <vector>

#include "bfmd/mechanisms.hpp"

namespace bfmd::detail {

struct Ctx {
  const Instance& inst;
  const CostProfile& reported;
  const RandomTape& tape;
  const MechParams& params;  // fully resolved for the mechanism being run
  Subset universe;           // mechanisms only look at items inside this mask
};

// ---- tape accessors (throw std::invalid_argument when absent/ill-formed) --
const std::vector<bool>& need_partition_bits(const Ctx& ctx);
const std::vector<bool>& need_proxy_bits(const Ctx& ctx);
const Rational& need_branch_coin(const Ctx& ctx);
const Rational& need_sample_coin(const Ctx& ctx);
bool need_j_coin(const Ctx& ctx);
int need_exponent_coin(const Ctx& ctx, int max_ell);
int need_index_coin(const Ctx& ctx, int count);

// ---- small shared helpers ------------------------------------------------
std::string fmt_set(Subset s);
std::string fmt_rat(const Rational& x);

/// All-zero payments, empty chosen set.
Outcome blank_outcome(const Ctx& ctx);

/// Reported cost of a single item under its owner's report.
Rational item_cost(const Ctx& ctx, int item);

/// Best affordable value inside one player's group (restricted to the
/// universe), under reported costs.
Rational own_group_opt(const Ctx& ctx, int player);

/// Two-sided player split from the tape bits, intersected with the universe;
/// appends a trace line.
struct Split {
  Subset players1 = 0;
  Subset players2 = 0;
  Subset items1 = 0;
  Subset items2 = 0;
};
Split split_by_bits(const Ctx& ctx, const std::vector<bool>& bits,
                    Outcome& out);

/// Constrained-demand winner plus threshold payments at rate kappa with
/// value cap; kappa == 0 degenerates to the empty outcome.
Outcome demand_branch(const Ctx& ctx, const ValueTable& base,
                      const Rational& kappa, const Rational& cap,
                      Subset region, Outcome out);

/// Fractional capped-demand lottery: solve the two-row LP, pick the support
/// set indicated by the sample coin (residual mass is the empty set), and pay
/// expectation-calibrated per-outcome payments.
Outcome lottery_branch(const Ctx& ctx, const ValueTable& base,
                       const Rational& kappa, const Rational& cap,
                       Subset region, Outcome out);

/// Hand the whole budget to the owner of the highest-value singleton
/// (no-overbidding fallback).
Outcome top_singleton_outcome(const Ctx& ctx, Outcome out);

/// Single-player capped-demand step with a success bit (flag), shared by M1
/// standalone and the first-success combinator.
Outcome one_player_demand(const Ctx& ctx, int player, const Rational& val);
/// Single-player cheapest-high-value-item step with a success bit.
Outcome one_player_item(const Ctx& ctx, int player, const Rational& val);

// ---- per-mechanism entries ----------------------------------------------
Outcome mech_bf_in_exp(const Ctx& ctx);
Outcome mech_unibf_xos_nob(const Ctx& ctx);
Outcome mech_unibf_supadd_nob(const Ctx& ctx);
Outcome mech_unibf_add_nob(const Ctx& ctx);
Outcome mech_second_opt(const Ctx& ctx);
Outcome mech_xos_gen_overbid(const Ctx& ctx);
Outcome mech_second_opt_poly(const Ctx& ctx);
Outcome mech_additive_overbid(const Ctx& ctx);
Outcome mech_m1(const Ctx& ctx);
Outcome mech_m2(const Ctx& ctx);
Outcome mech_second_opt_cdemd(const Ctx& ctx);
Outcome mech_xos_supadd_overbid(const Ctx& ctx);
Outcome mech_submod_greedy(const Ctx& ctx);
Outcome mech_subadd_bf_in_exp(const Ctx& ctx);
Outcome mech_subadd_unibf(const Ctx& ctx);
Outcome mech_optalg_uniform(const Ctx& ctx);
Outcome mech_optalg_emax(const Ctx& ctx);
Outcome mech_optalg_zeta(const Ctx& ctx);
Outcome mech_optalg_logn(const Ctx& ctx);
Outcome mech_optalg_logn_exp(const Ctx& ctx);
Outcome mech_optalg_logz(const Ctx& ctx);
Outcome mech_neg_emax_overbid(const Ctx& ctx);
Outcome mech_neg_optstar(const Ctx& ctx);

Outcome dispatch(MechId id, const Ctx& ctx);

}  // namespace bfmd::detail
