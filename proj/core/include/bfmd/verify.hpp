// Exhaustive audit engine. Enumerates every coin setting a mechanism can
// reach with exact rational probabilities, checks truthfulness / individual
// rationality / no-positive-transfers / budget feasibility either per tape
// (universal mode) or in exact expectation, computes expected values and
// benchmark ratios, and bundles the structural lemma batteries used by the
// acceptance suites. Every failed check carries a replayable counterexample.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bfmd/benchmarks.hpp"
#include "bfmd/mechanisms.hpp"

namespace bfmd {

/// One fully specified coin setting together with its exact probability.
struct TapeAtom {
  RandomTape tape;
  Rational prob;
};

/// Ceiling on exhaustive enumeration; larger tape spaces switch to a seeded
/// Monte Carlo instruction instead of an exact atom list.
inline constexpr std::size_t kTapeAtomGuard = std::size_t(1) << 22;

struct MonteCarloInstruction {
  unsigned long long seed = 1;
  std::size_t samples = std::size_t(1) << 16;
};

/// Result of enumerate_tapes: either an exact atom list with probabilities
/// summing to one, or (beyond the guard) a Monte Carlo instruction and an
/// empty atom list.
struct TapeEnumeration {
  std::vector<TapeAtom> atoms;
  std::optional<MonteCarloInstruction> monte_carlo;
};

/// Enumerates every reachable coin setting of the mechanism on the given
/// reported profile. Branch coins are discretized at the mechanism's own
/// threshold (mass points below and at p), lottery coins at the cumulative
/// weights of the solved configuration-LP support, partitions and discrete
/// draws uniformly. Probabilities sum to exactly one.
TapeEnumeration enumerate_tapes(MechId id, const Instance& inst,
                                const CostProfile& reported,
                                const MechParams& params = {});

enum class AuditMode { Universal, Expectation };

/// Replayable witness of a failed check: the full reported profile (member
/// index per player), the audited player's hypothetical true member, the
/// tape (absent for expectation-level violations), and the two utilities
/// whose comparison failed.
struct Counterexample {
  int player = 0;
  int true_member = 0;
  int deviation_member = 0;
  std::vector<int> profile_members;
  std::optional<RandomTape> tape;
  Rational truthful_utility;
  Rational deviating_utility;
  std::string note;
};

struct CheckResult {
  std::string name;
  bool pass = true;
  std::optional<Counterexample> witness;
  std::string detail;
};

struct AuditOptions {
  /// Truthfulness quantifies over opponents' reports. When set, forces the
  /// full class product (strict mode) or truthful opponents only; unset
  /// defaults to the full product for k <= 3 and truthful opponents beyond.
  std::optional<bool> full_product;
};

struct AuditReport {
  std::string mechanism;           // mechanism name, or the suite name
  std::optional<MechId> mech;
  std::string instance_digest;
  std::string mode;                // "universal" | "expectation" | "suite"
  std::vector<CheckResult> checks;
  Rational expected_value;         // under truthful reports; 0 for suites
  std::map<std::string, Rational> benchmark_ratios;
  bool pass = true;                // conjunction of the checks
};

/// Audits truthfulness, IR, NPT and budget feasibility of one mechanism on
/// one instance, exhaustively over tapes, hypothetical true costs,
/// deviations, and opponent report profiles. Universal mode compares
/// utilities tape by tape; expectation mode compares exact expectations
/// (IR and NPT stay per-tape). All comparisons are exact.
AuditReport check_mechanism(MechId id, const Instance& inst, AuditMode mode,
                            const MechParams& params = {},
                            const AuditOptions& options = {});

/// Exact expected value of the chosen set under truthful reports.
Rational exact_expected_value(MechId id, const Instance& inst,
                              const MechParams& params = {});
/// Exact expected value / expected total payment under a given profile.
Rational expected_value_under(MechId id, const Instance& inst,
                              const CostProfile& reported,
                              const MechParams& params = {});
Rational expected_payment_under(MechId id, const Instance& inst,
                                const CostProfile& reported,
                                const MechParams& params = {});

/// Structural battery on one instance: the random-partitioning lemmas over
/// all 2^k player splits, the marginal-sum bound for group-respecting XOS
/// valuations, the half-budget pruning postconditions over a value grid,
/// configuration-LP support sizes, the fractional-cover sandwich with its
/// harmonic gap bound, and the single-player benchmark degeneracy.
AuditReport lemma_suite(const Instance& inst);

/// Weak monotonicity of the deterministic truthful catalog mechanisms on
/// this instance: for every player and every ordered pair of class members
/// c, c' (opponents truthful) with outputs A, A', checks
/// c(A) + c'(A') <= c(A') + c'(A) restricted to the player's own items.
std::vector<CheckResult> weak_monotonicity_checks(const Instance& inst);

/// Impossibility ceiling on the two-cost single-player family: no
/// deterministic budget-feasible catalog mechanism may exceed value
/// OPTalg/alpha under both class members simultaneously.
CheckResult det_overbid_ceiling(const Instance& inst, const Rational& alpha);

/// Telescoping payment chain on the all-items log-price family: with
/// a_l / p_l the exact expected item count and payment when the player
/// reports the price-2^l member, checks sum_l 2^(l-1) a_l <= p_0 <= B.
CheckResult los_nob_telescoping(const Instance& inst,
                                MechId id = MechId::BfInExp,
                                const MechParams& params = {});

/// Canonical JSON encoding of a report (rationals as "p/q" strings, fixed
/// key order); byte-identical for identical reports.
std::string audit_report_json(const AuditReport& report);

}  // namespace bfmd
