// Catalog tables (names, requirements, parameter defaults), the shared
// branch helpers, threshold payments, and the run entry point.
#include "bfmd/mechanisms.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "mech_internal.hpp"

namespace bfmd {

namespace {

struct MechInfo {
  MechId id;
  const char* name;
};

const MechInfo kMechs[] = {
    {MechId::BfInExp, "bf_in_exp"},
    {MechId::UnibfXosNob, "unibf_xos_nob"},
    {MechId::UnibfSupaddNob, "unibf_supadd_nob"},
    {MechId::UnibfAddNob, "unibf_add_nob"},
    {MechId::SecondOpt, "second_opt"},
    {MechId::XosGenOverbid, "xos_gen_overbid"},
    {MechId::SecondOptPoly, "second_opt_poly"},
    {MechId::AdditiveOverbid, "additive_overbid"},
    {MechId::M1, "m1"},
    {MechId::M2, "m2"},
    {MechId::SecondOptCdemd, "second_opt_cdemd"},
    {MechId::XosSupaddOverbid, "xos_supadd_overbid"},
    {MechId::SubmodGreedy, "submod_greedy"},
    {MechId::SubaddBfInExp, "subadd_bf_in_exp"},
    {MechId::SubaddUnibf, "subadd_unibf"},
    {MechId::OptalgUniform, "optalg_uniform"},
    {MechId::OptalgEmax, "optalg_emax"},
    {MechId::OptalgZeta, "optalg_zeta"},
    {MechId::OptalgLogn, "optalg_logn"},
    {MechId::OptalgLognExp, "optalg_logn_exp"},
    {MechId::OptalgLogz, "optalg_logz"},
    {MechId::NegEmaxOverbid, "neg_emax_overbid"},
    {MechId::NegOptstar, "neg_optstar"},
};

}  // namespace

std::string mech_name(MechId id) {
  for (const auto& m : kMechs)
    if (m.id == id) return m.name;
  throw std::invalid_argument("unknown mechanism id");
}

std::optional<MechId> mech_from_name(const std::string& name) {
  for (const auto& m : kMechs)
    if (name == m.name) return m.id;
  return std::nullopt;
}

const std::vector<MechId>& all_mechs() {
  static const std::vector<MechId> ids = [] {
    std::vector<MechId> v;
    for (const auto& m : kMechs) v.push_back(m.id);
    return v;
  }();
  return ids;
}

MechParams resolve_params(MechId id, const Instance& inst,
                          const MechParams& given) {
  MechParams r = given;
  auto def = [](std::optional<Rational>& f, Rational v) {
    if (!f) f = std::move(v);
  };
  switch (id) {
    case MechId::BfInExp:
      def(r.lambda, Rational(1, 2));
      break;
    case MechId::UnibfXosNob:
      def(r.lambda, Rational(1, 2));
      def(r.p, Rational(4, 5));
      break;
    case MechId::UnibfSupaddNob:
      def(r.lambda, Rational(2, 5));
      def(r.p, Rational(14, 15));
      break;
    case MechId::UnibfAddNob:
      def(r.lambda, Rational(1, 2));
      def(r.p, Rational(12, 17));
      break;
    case MechId::SecondOpt:
      break;
    case MechId::XosGenOverbid:
      def(r.lambda, Rational(1, 2));
      def(r.p, Rational(128, 145));
      break;
    case MechId::SecondOptPoly:
      def(r.gamma, Rational(1));
      break;
    case MechId::AdditiveOverbid: {
      def(r.lambda, Rational(1, 8));
      def(r.beta, Rational(1));
      def(r.gamma, Rational(1));
      if (!r.r) r.r = 2;
      // balances the two branches: (p/8)(1/(64 beta) + 1) = (1 - p)/(8 gamma)
      Rational b64 = Rational(64) * *r.beta;
      def(r.p, b64 / (b64 + *r.gamma * (b64 + 1)));
      break;
    }
    case MechId::M1:
    case MechId::M2: {
      if (!r.player) r.player = 0;
      if (*r.player < 0 || *r.player >= inst.k())
        throw std::invalid_argument("params: player out of range");
      def(r.val, inst.value(inst.group_mask(*r.player)));
      break;
    }
    case MechId::SecondOptCdemd:
      def(r.gamma, Rational(1));
      break;
    case MechId::XosSupaddOverbid:
      def(r.lambda, Rational(1, 2));
      def(r.gamma, Rational(1));
      // balances the two branches: 17p/128 = (1 - p)/(32 gamma)
      def(r.p, Rational(4) / (Rational(4) + Rational(17) * *r.gamma));
      break;
    case MechId::SubmodGreedy:
      def(r.lambda, Rational(1, 3));
      break;
    case MechId::SubaddBfInExp:
    case MechId::SubaddUnibf: {
      def(r.lambda, Rational(1, 2));
      if (!r.gamma) {
        const ValueTable& v = inst.valuation().dense_table();
        ValueTable vx = player_respecting_xos(inst, v);
        r.gamma = frcover_gap(inst, v, vx);
      }
      if (id == MechId::SubaddUnibf)
        def(r.p, (Rational(128) * *r.gamma) /
                     (Rational(144) * *r.gamma + Rational(1)));
      break;
    }
    case MechId::OptalgUniform:
    case MechId::OptalgEmax:
      break;
    case MechId::OptalgZeta:
      if (!r.zeta_sub) r.zeta_sub = MechId::UnibfXosNob;
      if (*r.zeta_sub != MechId::UnibfXosNob &&
          *r.zeta_sub != MechId::XosGenOverbid)
        throw std::invalid_argument(
            "params: zeta_sub must be unibf_xos_nob or xos_gen_overbid");
      break;
    case MechId::OptalgLogn:
    case MechId::OptalgLogz:
      def(r.lambda, Rational(1, 2));
      def(r.p, Rational(1, 2));
      break;
    case MechId::OptalgLognExp:
      def(r.lambda, Rational(1, 2));
      break;
    case MechId::NegEmaxOverbid:
    case MechId::NegOptstar:
      break;
  }
  if (r.lambda && (*r.lambda < 0 || *r.lambda > Rational(1, 2)))
    throw std::invalid_argument("params: lambda must lie in [0, 1/2]");
  if (r.p && (*r.p < 0 || *r.p > 1))
    throw std::invalid_argument("params: p must lie in [0, 1]");
  if (r.beta && *r.beta < 1)
    throw std::invalid_argument("params: beta must be >= 1");
  if (r.gamma && *r.gamma < 1)
    throw std::invalid_argument("params: gamma must be >= 1");
  if (r.epsilon && *r.epsilon <= 0)
    throw std::invalid_argument("params: epsilon must be positive");
  if (r.r && *r.r < 2) throw std::invalid_argument("params: r must be >= 2");
  if (r.player && (*r.player < 0 || *r.player >= inst.k()))
    throw std::invalid_argument("params: player out of range");
  if (r.val && *r.val < 0)
    throw std::invalid_argument("params: val must be nonnegative");
  return r;
}

MechRequirements mech_requirements(MechId id, const MechParams& params) {
  switch (id) {
    case MechId::BfInExp:
      return {ValClass::Xos, CostKind::Any, false};
    case MechId::UnibfXosNob:
      return {ValClass::Xos, CostKind::Any, true};
    case MechId::UnibfSupaddNob:
      return {ValClass::Xos, CostKind::Superadditive, true};
    case MechId::UnibfAddNob:
      return {ValClass::Additive, CostKind::Additive, true};
    case MechId::SecondOpt:
      return {ValClass::Subadditive, CostKind::Any, false};
    case MechId::XosGenOverbid:
      return {ValClass::Xos, CostKind::Any, false};
    case MechId::SecondOptPoly:
      return {ValClass::Additive, CostKind::Additive, false};
    case MechId::AdditiveOverbid:
      return {ValClass::Additive, CostKind::Additive, false};
    case MechId::M1:
    case MechId::M2:
    case MechId::SecondOptCdemd:
      return {ValClass::Subadditive, CostKind::Superadditive, false};
    case MechId::XosSupaddOverbid:
      return {ValClass::Xos, CostKind::Superadditive, false};
    case MechId::SubmodGreedy:
      return {ValClass::Submodular, CostKind::Any, false};
    case MechId::SubaddBfInExp:
    case MechId::SubaddUnibf:
      return {ValClass::Subadditive, CostKind::Any, false};
    case MechId::OptalgUniform:
      return {ValClass::Subadditive, CostKind::Any, false};
    case MechId::OptalgEmax:
      return {ValClass::Subadditive, CostKind::Any, true};
    case MechId::OptalgZeta:
      return mech_requirements(params.zeta_sub.value_or(MechId::UnibfXosNob));
    case MechId::OptalgLogn:
      return {ValClass::Xos, CostKind::Superadditive, true};
    case MechId::OptalgLognExp:
      return {ValClass::Xos, CostKind::Any, true};
    case MechId::OptalgLogz:
      return {ValClass::Xos, CostKind::Superadditive, true};
    case MechId::NegEmaxOverbid:
    case MechId::NegOptstar:
      return {ValClass::Subadditive, CostKind::Any, false};
  }
  throw std::invalid_argument("unknown mechanism id");
}

bool mech_applicable(MechId id, const Instance& inst, const MechParams& params,
                     std::string* why) {
  MechRequirements req = mech_requirements(id, params);
  ValClass have = inst.valuation().declared_class();
  if (!val_class_implies(have, req.valuation)) {
    if (why)
      *why = "valuation class " + val_class_name(have) +
             " does not imply required " + val_class_name(req.valuation);
    return false;
  }
  if (req.cost != CostKind::Any) {
    for (const auto& cls : inst.cost_classes()) {
      for (const auto& member : cls.members) {
        bool ok = req.cost == CostKind::Additive ? member.additive()
                                                 : member.superadditive();
        if (!ok) {
          if (why)
            *why = "cost class of player " + std::to_string(cls.owner) +
                   " has a member that is not " +
                   (req.cost == CostKind::Additive ? "additive"
                                                   : "superadditive");
          return false;
        }
      }
    }
  }
  if (req.no_overbidding && !inst.no_overbidding()) {
    if (why) *why = "mechanism requires the no-overbidding flag";
    return false;
  }
  return true;
}

std::vector<Rational> vcg_payments(const Instance& inst,
                                   const ValueTable& base,
                                   const CostProfile& reported, Subset winner,
                                   const Rational& kappa,
                                   const std::optional<Rational>& cap,
                                   Subset region) {
  if (kappa == 0)
    throw std::invalid_argument("vcg_payments: kappa must be nonzero");
  auto solve = [&](Subset reg) {
    return cap ? constrained_demand(inst, base, reported, kappa, *cap, reg)
               : demand(inst, base, reported, kappa, reg);
  };
  DemandResult check = solve(region);
  if (check.set != winner)
    throw std::logic_error("vcg_payments: winner is not the demand optimum");
  int k = inst.k();
  std::vector<Rational> pay(k, Rational(0));
  Rational winner_cost = inst.total_cost(reported, winner);
  for (int i = 0; i < k; ++i) {
    if ((winner & inst.group_mask(i)) == 0) continue;
    DemandResult without = solve(region & ~inst.group_mask(i));
    pay[i] = base[winner] / kappa -
             (winner_cost - inst.player_cost(reported, i, winner)) -
             without.objective / kappa;
  }
  return pay;
}

Outcome run_mechanism(MechId id, const Instance& inst,
                      const CostProfile& reported, const RandomTape& tape,
                      const MechParams& params) {
  if (static_cast<int>(reported.size()) != inst.k())
    throw std::invalid_argument("reported profile has wrong length");
  for (int i = 0; i < inst.k(); ++i) {
    const CostClass& cls = inst.cost_classes()[i];
    bool member = std::any_of(cls.members.begin(), cls.members.end(),
                              [&](const CostFunction& m) {
                                return m == reported[i];
                              });
    if (!member)
      throw std::invalid_argument("reported cost of player " +
                                  std::to_string(i) +
                                  " is not a member of its public class");
  }
  MechParams resolved = resolve_params(id, inst, params);
  detail::Ctx ctx{inst, reported, tape, resolved,
                  full_mask(inst.n())};
  return detail::dispatch(id, ctx);
}

}  // namespace bfmd

namespace bfmd::detail {

const std::vector<bool>& need_partition_bits(const Ctx& ctx) {
  if (!ctx.tape.partition_bits ||
      static_cast<int>(ctx.tape.partition_bits->size()) != ctx.inst.k())
    throw std::invalid_argument(
        "tape: partition_bits missing or wrong length");
  return *ctx.tape.partition_bits;
}

const std::vector<bool>& need_proxy_bits(const Ctx& ctx) {
  if (!ctx.tape.proxy_partition_bits ||
      static_cast<int>(ctx.tape.proxy_partition_bits->size()) != ctx.inst.k())
    throw std::invalid_argument(
        "tape: proxy_partition_bits missing or wrong length");
  return *ctx.tape.proxy_partition_bits;
}

const Rational& need_branch_coin(const Ctx& ctx) {
  if (!ctx.tape.branch_coin || *ctx.tape.branch_coin < 0 ||
      *ctx.tape.branch_coin >= 1)
    throw std::invalid_argument("tape: branch_coin missing or outside [0,1)");
  return *ctx.tape.branch_coin;
}

const Rational& need_sample_coin(const Ctx& ctx) {
  if (!ctx.tape.sample_coin || *ctx.tape.sample_coin < 0 ||
      *ctx.tape.sample_coin >= 1)
    throw std::invalid_argument("tape: sample_coin missing or outside [0,1)");
  return *ctx.tape.sample_coin;
}

bool need_j_coin(const Ctx& ctx) {
  if (!ctx.tape.j_coin) throw std::invalid_argument("tape: j_coin missing");
  return *ctx.tape.j_coin;
}

int need_exponent_coin(const Ctx& ctx, int max_ell) {
  if (!ctx.tape.exponent_coin || *ctx.tape.exponent_coin < 0 ||
      *ctx.tape.exponent_coin > max_ell)
    throw std::invalid_argument("tape: exponent_coin missing or out of range");
  return *ctx.tape.exponent_coin;
}

int need_index_coin(const Ctx& ctx, int count) {
  if (!ctx.tape.index_coin || *ctx.tape.index_coin < 0 ||
      *ctx.tape.index_coin >= count)
    throw std::invalid_argument("tape: index_coin missing or out of range");
  return *ctx.tape.index_coin;
}

std::string fmt_set(Subset s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int e : items_of(s)) {
    if (!first) os << ',';
    os << e;
    first = false;
  }
  os << '}';
  return os.str();
}

std::string fmt_rat(const Rational& x) { return format_rational(x); }

Outcome blank_outcome(const Ctx& ctx) {
  Outcome out;
  out.payments.assign(ctx.inst.k(), Rational(0));
  return out;
}

Rational item_cost(const Ctx& ctx, int item) {
  return ctx.inst.player_cost(ctx.reported, ctx.inst.owner_of(item),
                              bit(item));
}

Rational own_group_opt(const Ctx& ctx, int player) {
  Subset mask = ctx.inst.group_mask(player) & ctx.universe;
  Rational best(0);
  for (Subset s = mask;; s = (s - 1) & mask) {
    if (ctx.inst.player_cost(ctx.reported, player, s) <= ctx.inst.budget() &&
        ctx.inst.value(s) > best)
      best = ctx.inst.value(s);
    if (s == 0) break;
  }
  return best;
}

Split split_by_bits(const Ctx& ctx, const std::vector<bool>& bits,
                    Outcome& out) {
  Partition part = random_partition(ctx.inst, bits);
  Split sp{part.players1, part.players2, part.items1 & ctx.universe,
           part.items2 & ctx.universe};
  out.trace.push_back("partition: players1=" + fmt_set(sp.players1) +
                      " players2=" + fmt_set(sp.players2) +
                      " items1=" + fmt_set(sp.items1) +
                      " items2=" + fmt_set(sp.items2));
  return sp;
}

Outcome demand_branch(const Ctx& ctx, const ValueTable& base,
                      const Rational& kappa, const Rational& cap,
                      Subset region, Outcome out) {
  if (kappa == 0) {
    out.trace.push_back("rate is zero: empty outcome");
    return out;
  }
  DemandResult dr =
      constrained_demand(ctx.inst, base, ctx.reported, kappa, cap, region);
  out.chosen = dr.set;
  out.payments = vcg_payments(ctx.inst, base, ctx.reported, dr.set, kappa,
                              cap, region);
  out.trace.push_back("demand winner " + fmt_set(dr.set) + " objective " +
                      fmt_rat(dr.objective) + " at rate " + fmt_rat(kappa) +
                      " cap " + fmt_rat(cap));
  return out;
}

Outcome lottery_branch(const Ctx& ctx, const ValueTable& base,
                       const Rational& kappa, const Rational& cap,
                       Subset region, Outcome out) {
  const Instance& inst = ctx.inst;
  if (kappa == 0) {
    out.flags["support_size"] = Rational(0);
    out.trace.push_back("rate is zero: empty outcome");
    return out;
  }
  FractionalSolution frac =
      solve_cdlp(inst, base, ctx.reported, region, kappa, cap);
  out.flags["support_size"] = Rational(static_cast<int>(frac.support.size()));
  for (std::size_t t = 0; t < frac.support.size(); ++t)
    out.flags["w" + std::to_string(t)] = frac.support[t].second;
  {
    std::ostringstream os;
    os << "lottery support:";
    for (const auto& [s, w] : frac.support)
      os << ' ' << fmt_set(s) << " w=" << fmt_rat(w);
    os << " residual=" << fmt_rat(Rational(1) - frac.mass);
    out.trace.push_back(os.str());
  }
  const Rational& coin = need_sample_coin(ctx);
  Subset chosen = 0;
  int picked = -1;
  Rational acc(0);
  for (std::size_t t = 0; t < frac.support.size(); ++t) {
    if (coin < acc + frac.support[t].second) {
      chosen = frac.support[t].first;
      picked = static_cast<int>(t);
      break;
    }
    acc += frac.support[t].second;
  }
  out.chosen = chosen;
  out.flags["support_index"] = Rational(picked);
  out.trace.push_back("sample coin " + fmt_rat(coin) + " picks " +
                      fmt_set(chosen));
  // Per-player payments calibrated so the expectation over the lottery
  // equals the exact threshold value of participating.
  for (int i = 0; i < inst.k(); ++i) {
    Subset gi = inst.group_mask(i) & region;
    if (gi == 0) continue;
    Rational mu(0), ecost(0), hit(0);
    for (const auto& [s, w] : frac.support) {
      Rational ci = inst.player_cost(ctx.reported, i, s);
      mu += w * (base[s] / kappa -
                 (inst.total_cost(ctx.reported, s) - ci));
      ecost += w * ci;
      if ((s & gi) != 0) hit += w;
    }
    FractionalSolution excl = solve_cdlp(
        inst, base, ctx.reported, region & ~inst.group_mask(i), kappa, cap);
    mu -= excl.objective / kappa;
    if (ecost != 0) {
      out.payments[i] =
          (mu / ecost) * inst.player_cost(ctx.reported, i, chosen);
    } else if (mu > 0 && hit != 0 && (chosen & gi) != 0) {
      out.payments[i] = mu / hit;
    }
  }
  return out;
}

Outcome top_singleton_outcome(const Ctx& ctx, Outcome out) {
  if (ctx.universe == 0) {
    out.trace.push_back("no items available: empty outcome");
    return out;
  }
  auto [item, value] = global_vmax(ctx.inst, ctx.universe);
  out.chosen = bit(item);
  out.payments[ctx.inst.owner_of(item)] = ctx.inst.budget();
  out.trace.push_back("top singleton " + fmt_set(out.chosen) + " value " +
                      fmt_rat(value) + ", owner paid the budget");
  return out;
}

Outcome dispatch(MechId id, const Ctx& ctx) {
  switch (id) {
    case MechId::BfInExp: return mech_bf_in_exp(ctx);
    case MechId::UnibfXosNob: return mech_unibf_xos_nob(ctx);
    case MechId::UnibfSupaddNob: return mech_unibf_supadd_nob(ctx);
    case MechId::UnibfAddNob: return mech_unibf_add_nob(ctx);
    case MechId::SecondOpt: return mech_second_opt(ctx);
    case MechId::XosGenOverbid: return mech_xos_gen_overbid(ctx);
    case MechId::SecondOptPoly: return mech_second_opt_poly(ctx);
    case MechId::AdditiveOverbid: return mech_additive_overbid(ctx);
    case MechId::M1: return mech_m1(ctx);
    case MechId::M2: return mech_m2(ctx);
    case MechId::SecondOptCdemd: return mech_second_opt_cdemd(ctx);
    case MechId::XosSupaddOverbid: return mech_xos_supadd_overbid(ctx);
    case MechId::SubmodGreedy: return mech_submod_greedy(ctx);
    case MechId::SubaddBfInExp: return mech_subadd_bf_in_exp(ctx);
    case MechId::SubaddUnibf: return mech_subadd_unibf(ctx);
    case MechId::OptalgUniform: return mech_optalg_uniform(ctx);
    case MechId::OptalgEmax: return mech_optalg_emax(ctx);
    case MechId::OptalgZeta: return mech_optalg_zeta(ctx);
    case MechId::OptalgLogn: return mech_optalg_logn(ctx);
    case MechId::OptalgLognExp: return mech_optalg_logn_exp(ctx);
    case MechId::OptalgLogz: return mech_optalg_logz(ctx);
    case MechId::NegEmaxOverbid: return mech_neg_emax_overbid(ctx);
    case MechId::NegOptstar: return mech_neg_optstar(ctx);
  }
  throw std::invalid_argument("unknown mechanism id");
}

}  // namespace bfmd::detail
