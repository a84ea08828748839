// The mechanism catalog: randomized budget-feasible procurement mechanisms
// over reported cost profiles, plus two deliberately broken controls used to
// exercise the auditor. Every mechanism is a deterministic function of
// (instance, reported profile, random tape, parameters), so outcomes are
// exactly replayable; all randomness lives in the explicit tape.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bfmd/benchmarks.hpp"

namespace bfmd {

enum class MechId {
  BfInExp,          // fractional capped-demand lottery, budget-feasible in expectation
  UnibfXosNob,      // partition + constrained demand, singleton fallback (needs no-overbidding)
  UnibfSupaddNob,   // variant with a rate shifted by the top singleton value
  UnibfAddNob,      // additive-valuation variant via integer-scaled knapsack
  SecondOpt,        // deterministic second-best-group winner, pays the budget
  XosGenOverbid,    // partition + constrained demand, SecondOpt fallback
  SecondOptPoly,    // proxy-partition knapsack-cover winner (additive case)
  AdditiveOverbid,  // scaled-knapsack main branch, SecondOptPoly fallback
  M1,               // single-player capped demand with a success bit
  M2,               // single-player cheapest-high-value-item with a success bit
  SecondOptCdemd,   // proxy partition + per-player M1/M2, first success wins
  XosSupaddOverbid, // partition + constrained demand, SecondOptCdemd fallback
  SubmodGreedy,     // greedy incremental demand across players (submodular v)
  SubaddBfInExp,    // BfInExp on the group-respecting cover surrogate
  SubaddUnibf,      // UnibfXos-style demand on the surrogate, SecondOpt fallback
  OptalgUniform,    // uniform random singleton, pays the budget if affordable
  OptalgEmax,       // deterministic top-value singleton (needs no-overbidding)
  OptalgZeta,       // random per-group column, delegates to a sub-mechanism
  OptalgLogn,       // random power-of-two value scale, demand-set branch
  OptalgLognExp,    // random scale with the fractional lottery branch
  OptalgLogz,       // random scale seeded by a single-demand estimate
  NegEmaxOverbid,   // control: top affordable singleton by reports (manipulable)
  NegOptstar        // control: pays the budget to every winner's player (manipulable)
};

/// Stable lowercase identifier, e.g. "bf_in_exp".
std::string mech_name(MechId id);
std::optional<MechId> mech_from_name(const std::string& name);
const std::vector<MechId>& all_mechs();

/// Optional parameter overrides; unset fields resolve to per-mechanism
/// defaults (resolve_params). `val` and `player` configure the single-player
/// mechanisms; `zeta_sub` picks the sub-mechanism of OptalgZeta.
struct MechParams {
  std::optional<Rational> lambda;
  std::optional<Rational> p;
  std::optional<Rational> beta;
  std::optional<Rational> gamma;
  std::optional<Rational> epsilon;
  std::optional<Rational> val;
  std::optional<int> r;
  std::optional<int> player;
  std::optional<MechId> zeta_sub;
};

/// Fills defaults (lambda, branch probability, approximation factors, the
/// single-player target value) and validates ranges: lambda in [0, 1/2],
/// p in [0, 1], beta >= 1, gamma >= 1, epsilon > 0, player in [0, k).
/// For the subadditive wrappers an unset gamma resolves to the instance's
/// observed cover-surrogate gap. Throws std::invalid_argument on bad values.
MechParams resolve_params(MechId id, const Instance& inst,
                          const MechParams& given);

enum class CostKind { Any, Superadditive, Additive };

/// What a mechanism demands of instances it is run on.
struct MechRequirements {
  ValClass valuation = ValClass::Subadditive;  // weakest class that suffices
  CostKind cost = CostKind::Any;               // checked on every class member
  bool no_overbidding = false;
};

MechRequirements mech_requirements(MechId id, const MechParams& params = {});

/// True when the instance satisfies the mechanism's requirements; on failure
/// `why` (if given) receives a one-line reason.
bool mech_applicable(MechId id, const Instance& inst,
                     const MechParams& params = {},
                     std::string* why = nullptr);

/// Explicit randomness. Mechanisms read only the fields they declare; a
/// missing required field raises std::invalid_argument. Coins live in [0, 1);
/// a branch with probability p is taken when the coin is < p.
struct RandomTape {
  std::optional<std::vector<bool>> partition_bits;        // one per player
  std::optional<Rational> branch_coin;                    // main vs fallback
  std::optional<Rational> sample_coin;                    // lottery over the LP support
  std::optional<std::vector<bool>> proxy_partition_bits;  // proxy mechanisms
  std::optional<bool> j_coin;                             // M1-vs-M2 choice
  std::optional<int> exponent_coin;                       // power-of-two scale
  std::optional<int> index_coin;                          // uniform index pick
};

/// One realized run: the procured set, one payment per player, named scalar
/// flags (success bits, winner index, branch taken), and a human-readable
/// decision trace.
struct Outcome {
  Subset chosen = 0;
  std::vector<Rational> payments;
  std::map<std::string, Rational> flags;
  std::vector<std::string> trace;
};

/// Threshold (clock) payments for a demand-style winner: each player whose
/// items were procured is paid base(winner)/kappa minus the other players'
/// reported cost minus 1/kappa times the best objective attainable without
/// that player; everyone else is paid zero. The winner must be the exact
/// demand optimum over `region` (capped at `cap` when given) at rate
/// `kappa` != 0, otherwise std::logic_error / std::invalid_argument.
std::vector<Rational> vcg_payments(const Instance& inst,
                                   const ValueTable& base,
                                   const CostProfile& reported, Subset winner,
                                   const Rational& kappa,
                                   const std::optional<Rational>& cap,
                                   Subset region);

/// Runs one mechanism. `reported` must be one member of each player's public
/// class; parameters resolve via resolve_params. Outcomes are deterministic
/// in the tape, and payments vectors always have one entry per player.
Outcome run_mechanism(MechId id, const Instance& inst,
                      const CostProfile& reported, const RandomTape& tape,
                      const MechParams& params = {});

}  // namespace bfmd
