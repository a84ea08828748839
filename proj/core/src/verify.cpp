// Tape enumeration trees per mechanism, the exhaustive truthfulness / IR /
// NPT / budget auditor, exact expectations, the structural lemma battery,
// the lower-bound consistency checks, and canonical report serialization.
#include "bfmd/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bfmd/io.hpp"
#include "json.hpp"

namespace bfmd {

namespace {

using Atoms = std::vector<TapeAtom>;

RandomTape merge_tapes(const RandomTape& a, const RandomTape& b) {
  RandomTape t = a;
  if (b.partition_bits) t.partition_bits = b.partition_bits;
  if (b.proxy_partition_bits) t.proxy_partition_bits = b.proxy_partition_bits;
  if (b.branch_coin) t.branch_coin = b.branch_coin;
  if (b.sample_coin) t.sample_coin = b.sample_coin;
  if (b.j_coin) t.j_coin = b.j_coin;
  if (b.exponent_coin) t.exponent_coin = b.exponent_coin;
  if (b.index_coin) t.index_coin = b.index_coin;
  return t;
}

bool tapes_equal(const RandomTape& a, const RandomTape& b) {
  return a.partition_bits == b.partition_bits &&
         a.proxy_partition_bits == b.proxy_partition_bits &&
         a.branch_coin == b.branch_coin && a.sample_coin == b.sample_coin &&
         a.j_coin == b.j_coin && a.exponent_coin == b.exponent_coin &&
         a.index_coin == b.index_coin;
}

std::string bits_text(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

std::string tape_text(const RandomTape& t) {
  std::ostringstream os;
  bool any = false;
  auto sep = [&] {
    if (any) os << ' ';
    any = true;
  };
  if (t.partition_bits) {
    sep();
    os << "partition=" << bits_text(*t.partition_bits);
  }
  if (t.proxy_partition_bits) {
    sep();
    os << "proxy=" << bits_text(*t.proxy_partition_bits);
  }
  if (t.branch_coin) {
    sep();
    os << "branch=" << format_rational(*t.branch_coin);
  }
  if (t.sample_coin) {
    sep();
    os << "sample=" << format_rational(*t.sample_coin);
  }
  if (t.j_coin) {
    sep();
    os << "j=" << (*t.j_coin ? 2 : 1);
  }
  if (t.exponent_coin) {
    sep();
    os << "exponent=" << *t.exponent_coin;
  }
  if (t.index_coin) {
    sep();
    os << "index=" << *t.index_coin;
  }
  if (!any) os << "deterministic";
  return os.str();
}

Atoms single_atom() { return {TapeAtom{RandomTape{}, Rational(1)}}; }

Atoms partition_atoms(int k, bool proxy) {
  Atoms out;
  const std::size_t total = std::size_t(1) << k;
  const Rational each(Int(1), Int(1) << k);
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::vector<bool> bits(k);
    for (int i = 0; i < k; ++i) bits[i] = (mask >> i) & 1u;
    RandomTape t;
    if (proxy)
      t.proxy_partition_bits = std::move(bits);
    else
      t.partition_bits = std::move(bits);
    out.push_back({std::move(t), each});
  }
  return out;
}

/// Two mass points of the threshold coin: below p (the branch is taken) and
/// at p (it is not); degenerate thresholds collapse to one point.
Atoms branch_atoms(const Rational& p) {
  Atoms out;
  if (p > 0) {
    RandomTape t;
    t.branch_coin = Rational(0);
    out.push_back({std::move(t), p});
  }
  if (p < 1) {
    RandomTape t;
    t.branch_coin = p;
    out.push_back({std::move(t), Rational(1) - p});
  }
  return out;
}

Atoms j_atoms() {
  Atoms out;
  for (bool second : {false, true}) {
    RandomTape t;
    t.j_coin = second;
    out.push_back({std::move(t), Rational(1, 2)});
  }
  return out;
}

Atoms exponent_atoms(int max_ell) {
  Atoms out;
  const Rational each(Int(1), Int(max_ell + 1));
  for (int ell = 0; ell <= max_ell; ++ell) {
    RandomTape t;
    t.exponent_coin = ell;
    out.push_back({std::move(t), each});
  }
  return out;
}

Atoms index_atoms(int count) {
  Atoms out;
  const Rational each(Int(1), Int(count));
  for (int i = 0; i < count; ++i) {
    RandomTape t;
    t.index_coin = i;
    out.push_back({std::move(t), each});
  }
  return out;
}

Atoms cross(const Atoms& a, const Atoms& b) {
  Atoms out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b)
      out.push_back({merge_tapes(x.tape, y.tape), x.prob * y.prob});
  return out;
}

int flag_int(const std::map<std::string, Rational>& flags,
             const std::string& key, int fallback) {
  auto it = flags.find(key);
  if (it == flags.end()) return fallback;
  return floor_rat(it->second).convert_to<int>();
}

/// Expands each prefix with the lottery coin mass points observed on a probe
/// run: one atom per configuration-LP support set at the cumulative weight
/// offsets, plus the residual empty outcome.
Atoms lottery_cross(MechId id, const Instance& inst,
                    const CostProfile& reported, const MechParams& resolved,
                    const Atoms& prefixes) {
  Atoms out;
  for (const auto& pre : prefixes) {
    RandomTape probe = pre.tape;
    probe.sample_coin = Rational(0);
    Outcome o = run_mechanism(id, inst, reported, probe, resolved);
    int support = flag_int(o.flags, "support_size", 0);
    Rational acc(0);
    for (int t = 0; t < support; ++t) {
      Rational w = o.flags.at("w" + std::to_string(t));
      RandomTape tt = pre.tape;
      tt.sample_coin = acc;
      out.push_back({std::move(tt), pre.prob * w});
      acc += w;
    }
    if (acc < 1) {
      RandomTape tt = pre.tape;
      tt.sample_coin = acc;
      out.push_back({std::move(tt), pre.prob * (Rational(1) - acc)});
    }
  }
  return out;
}

Rational member_cost(const Instance& inst, int player, const CostFunction& m,
                     Subset chosen) {
  Subset group = inst.group_mask(player);
  return m.local_cost(global_to_local(chosen & group, group));
}

}  // namespace

TapeEnumeration enumerate_tapes(MechId id, const Instance& inst,
                                const CostProfile& reported,
                                const MechParams& params) {
  MechParams rp = resolve_params(id, inst, params);
  const int k = inst.k();
  const std::size_t parts = std::size_t(1) << k;
  const int zeta = std::max(1, inst.zeta());

  std::size_t bound = 1;
  switch (id) {
    case MechId::BfInExp:
    case MechId::SubaddBfInExp:
      bound = parts * 3;
      break;
    case MechId::UnibfXosNob:
    case MechId::UnibfSupaddNob:
    case MechId::UnibfAddNob:
    case MechId::XosGenOverbid:
    case MechId::SubaddUnibf:
    case MechId::SecondOptCdemd:
      bound = parts * 2;
      break;
    case MechId::SubmodGreedy:
    case MechId::SecondOptPoly:
      bound = parts;
      break;
    case MechId::AdditiveOverbid:
      bound = parts * (1 + parts);
      break;
    case MechId::XosSupaddOverbid:
      bound = parts * (1 + parts * 2);
      break;
    case MechId::OptalgUniform:
      bound = static_cast<std::size_t>(inst.n());
      break;
    case MechId::OptalgZeta:
      bound = static_cast<std::size_t>(zeta) * parts * 2;
      break;
    case MechId::OptalgLogn:
      bound = static_cast<std::size_t>(ceil_log2(inst.n()) + 1) * 2;
      break;
    case MechId::OptalgLognExp:
      bound = static_cast<std::size_t>(ceil_log2(inst.n()) + 1) * 3;
      break;
    case MechId::OptalgLogz:
      bound = parts * static_cast<std::size_t>(ceil_log2(zeta) + 1) * 2;
      break;
    default:
      bound = 1;
      break;
  }
  if (bound > kTapeAtomGuard) return {{}, MonteCarloInstruction{}};

  TapeEnumeration en;
  switch (id) {
    case MechId::SecondOpt:
    case MechId::M1:
    case MechId::M2:
    case MechId::OptalgEmax:
    case MechId::NegEmaxOverbid:
    case MechId::NegOptstar:
      en.atoms = single_atom();
      break;
    case MechId::UnibfXosNob:
    case MechId::UnibfSupaddNob:
    case MechId::UnibfAddNob:
    case MechId::XosGenOverbid:
    case MechId::SubaddUnibf:
      en.atoms = cross(partition_atoms(k, false), branch_atoms(*rp.p));
      break;
    case MechId::SubmodGreedy:
      en.atoms = partition_atoms(k, false);
      break;
    case MechId::SecondOptPoly:
      en.atoms = partition_atoms(k, true);
      break;
    case MechId::SecondOptCdemd:
      en.atoms = cross(partition_atoms(k, true), j_atoms());
      break;
    case MechId::AdditiveOverbid:
    case MechId::XosSupaddOverbid: {
      // The fallback path draws its own fresh coins; atoms on the taken
      // branch carry none of them.
      Atoms tail = id == MechId::AdditiveOverbid
                       ? partition_atoms(k, true)
                       : cross(partition_atoms(k, true), j_atoms());
      for (const auto& pa : partition_atoms(k, false)) {
        for (const auto& ba : branch_atoms(*rp.p)) {
          TapeAtom head{merge_tapes(pa.tape, ba.tape), pa.prob * ba.prob};
          if (*ba.tape.branch_coin < *rp.p) {
            en.atoms.push_back(std::move(head));
          } else {
            for (const auto& ta : tail)
              en.atoms.push_back({merge_tapes(head.tape, ta.tape),
                                  head.prob * ta.prob});
          }
        }
      }
      break;
    }
    case MechId::BfInExp:
    case MechId::SubaddBfInExp:
      en.atoms = lottery_cross(id, inst, reported, rp,
                               partition_atoms(k, false));
      break;
    case MechId::OptalgUniform:
      en.atoms = index_atoms(inst.n());
      break;
    case MechId::OptalgZeta: {
      MechParams sp = resolve_params(*rp.zeta_sub, inst, rp);
      en.atoms = cross(index_atoms(inst.zeta()),
                       cross(partition_atoms(k, false), branch_atoms(*sp.p)));
      break;
    }
    case MechId::OptalgLogn:
      en.atoms =
          cross(exponent_atoms(ceil_log2(inst.n())), branch_atoms(*rp.p));
      break;
    case MechId::OptalgLognExp:
      en.atoms = lottery_cross(id, inst, reported, rp,
                               exponent_atoms(ceil_log2(inst.n())));
      break;
    case MechId::OptalgLogz:
      en.atoms = cross(partition_atoms(k, false),
                       cross(exponent_atoms(ceil_log2(zeta)),
                             branch_atoms(*rp.p)));
      break;
  }
  return en;
}

Rational expected_value_under(MechId id, const Instance& inst,
                              const CostProfile& reported,
                              const MechParams& params) {
  MechParams rp = resolve_params(id, inst, params);
  TapeEnumeration en = enumerate_tapes(id, inst, reported, rp);
  if (en.monte_carlo)
    throw std::length_error("tape space exceeds the exact enumeration guard");
  Rational ev(0);
  for (const auto& atom : en.atoms)
    ev += atom.prob *
          inst.value(run_mechanism(id, inst, reported, atom.tape, rp).chosen);
  return ev;
}

Rational exact_expected_value(MechId id, const Instance& inst,
                              const MechParams& params) {
  return expected_value_under(id, inst, inst.true_costs(), params);
}

Rational expected_payment_under(MechId id, const Instance& inst,
                                const CostProfile& reported,
                                const MechParams& params) {
  MechParams rp = resolve_params(id, inst, params);
  TapeEnumeration en = enumerate_tapes(id, inst, reported, rp);
  if (en.monte_carlo)
    throw std::length_error("tape space exceeds the exact enumeration guard");
  Rational ep(0);
  for (const auto& atom : en.atoms) {
    Outcome o = run_mechanism(id, inst, reported, atom.tape, rp);
    for (const Rational& pay : o.payments) ep += atom.prob * pay;
  }
  return ep;
}

AuditReport check_mechanism(MechId id, const Instance& inst, AuditMode mode,
                            const MechParams& params,
                            const AuditOptions& options) {
  AuditReport rep;
  rep.mechanism = mech_name(id);
  rep.mech = id;
  rep.instance_digest = instance_digest(inst);
  rep.mode = mode == AuditMode::Universal ? "universal" : "expectation";

  const int k = inst.k();
  const auto& classes = inst.cost_classes();
  const bool full = options.full_product.value_or(k <= 3);
  MechParams rp = resolve_params(id, inst, params);

  std::vector<int> truth_idx(k, -1);
  for (int i = 0; i < k; ++i) {
    const auto& members = classes[i].members;
    for (std::size_t m = 0; m < members.size(); ++m)
      if (members[m] == inst.true_costs()[i])
        truth_idx[i] = static_cast<int>(m);
    if (truth_idx[i] < 0)
      throw std::logic_error("true cost is not a member of its class");
  }

  std::set<std::vector<int>> profile_keys;
  if (full) {
    std::vector<int> cur(k, 0);
    while (true) {
      profile_keys.insert(cur);
      int i = 0;
      while (i < k) {
        if (++cur[i] < static_cast<int>(classes[i].members.size())) break;
        cur[i] = 0;
        ++i;
      }
      if (i == k) break;
    }
  } else {
    profile_keys.insert(truth_idx);
    for (int i = 0; i < k; ++i)
      for (std::size_t m = 0; m < classes[i].members.size(); ++m) {
        std::vector<int> prof = truth_idx;
        prof[i] = static_cast<int>(m);
        profile_keys.insert(prof);
      }
  }

  struct PData {
    CostProfile costs;
    Atoms atoms;
    std::vector<Outcome> outs;
  };
  std::map<std::vector<int>, PData> data;
  for (const auto& key : profile_keys) {
    PData pd;
    for (int i = 0; i < k; ++i)
      pd.costs.push_back(classes[i].members[key[i]]);
    TapeEnumeration en = enumerate_tapes(id, inst, pd.costs, rp);
    if (en.monte_carlo)
      throw std::length_error(
          "tape space exceeds the exact enumeration guard");
    pd.atoms = std::move(en.atoms);
    pd.outs.reserve(pd.atoms.size());
    for (const auto& atom : pd.atoms)
      pd.outs.push_back(run_mechanism(id, inst, pd.costs, atom.tape, rp));
    data.emplace(key, std::move(pd));
  }

  CheckResult mass{"probability_mass"};
  CheckResult truthchk{"truthfulness"};
  CheckResult ir{"individual_rationality"};
  CheckResult npt{"no_positive_transfers"};
  CheckResult budget{mode == AuditMode::Universal ? "budget"
                                                  : "budget_expectation"};
  CheckResult align{"tape_alignment"};

  long long ir_tight = 0;
  for (const auto& [key, pd] : data) {
    Rational total_mass(0);
    Rational expected_total(0);
    for (std::size_t idx = 0; idx < pd.atoms.size(); ++idx) {
      total_mass += pd.atoms[idx].prob;
      const Outcome& o = pd.outs[idx];
      Rational total_pay(0);
      for (int i = 0; i < k; ++i) {
        const Rational& pay = o.payments[i];
        total_pay += pay;
        bool wins = (o.chosen & inst.group_mask(i)) != 0;
        if (npt.pass && (pay < 0 || (!wins && pay != 0))) {
          npt.pass = false;
          Counterexample cx;
          cx.player = i;
          cx.true_member = key[i];
          cx.deviation_member = key[i];
          cx.profile_members = key;
          cx.tape = pd.atoms[idx].tape;
          cx.truthful_utility = pay;
          cx.deviating_utility = pay;
          cx.note = pay < 0 ? "negative payment"
                            : "positive payment to a player with no chosen "
                              "items";
          npt.witness = std::move(cx);
        }
        Rational cost = inst.player_cost(pd.costs, i, o.chosen);
        Rational util = pay - cost;
        if (ir.pass && util < 0) {
          ir.pass = false;
          Counterexample cx;
          cx.player = i;
          cx.true_member = key[i];
          cx.deviation_member = key[i];
          cx.profile_members = key;
          cx.tape = pd.atoms[idx].tape;
          cx.truthful_utility = util;
          cx.deviating_utility = util;
          cx.note = "negative utility under truthful reporting";
          ir.witness = std::move(cx);
        }
        if (wins && pay == cost) ++ir_tight;
      }
      expected_total += pd.atoms[idx].prob * total_pay;
      if (mode == AuditMode::Universal && budget.pass &&
          total_pay > inst.budget()) {
        budget.pass = false;
        Counterexample cx;
        cx.player = -1;
        cx.profile_members = key;
        cx.tape = pd.atoms[idx].tape;
        cx.truthful_utility = total_pay;
        cx.deviating_utility = inst.budget();
        cx.note = "total payment exceeds the budget on this tape";
        budget.witness = std::move(cx);
      }
    }
    if (mass.pass && total_mass != 1) {
      mass.pass = false;
      Counterexample cx;
      cx.player = -1;
      cx.profile_members = key;
      cx.truthful_utility = total_mass;
      cx.deviating_utility = Rational(1);
      cx.note = "tape probabilities do not sum to one";
      mass.witness = std::move(cx);
    }
    if (mode == AuditMode::Expectation && budget.pass &&
        expected_total > inst.budget()) {
      budget.pass = false;
      Counterexample cx;
      cx.player = -1;
      cx.profile_members = key;
      cx.truthful_utility = expected_total;
      cx.deviating_utility = inst.budget();
      cx.note = "expected total payment exceeds the budget";
      budget.witness = std::move(cx);
    }
  }
  if (ir_tight > 0)
    ir.detail = "payment equals incurred cost in " +
                std::to_string(ir_tight) + " winning cells";

  // Truthfulness: player i's true member t against deviation d, for every
  // admissible opponent part; utilities always priced with member t.
  auto opponent_parts = [&](int i) {
    std::vector<std::vector<int>> parts;
    if (!full) {
      parts.push_back(truth_idx);
      return parts;
    }
    std::vector<int> cur(k, 0);
    while (true) {
      parts.push_back(cur);
      int j = 0;
      while (j < k) {
        if (j == i) {
          ++j;
          continue;
        }
        if (++cur[j] < static_cast<int>(classes[j].members.size())) break;
        cur[j] = 0;
        ++j;
      }
      if (j == k) break;
    }
    // entries at position i are duplicates of member 0; dedupe
    std::set<std::vector<int>> uniq;
    for (auto& p : parts) {
      p[i] = 0;
      uniq.insert(p);
    }
    return std::vector<std::vector<int>>(uniq.begin(), uniq.end());
  };

  for (int i = 0; i < k && truthchk.pass && align.pass; ++i) {
    const int msize = static_cast<int>(classes[i].members.size());
    for (const auto& part : opponent_parts(i)) {
      for (int t = 0; t < msize && truthchk.pass && align.pass; ++t) {
        for (int d = 0; d < msize; ++d) {
          if (d == t) continue;
          std::vector<int> keyT = part, keyD = part;
          keyT[i] = t;
          keyD[i] = d;
          const PData& T = data.at(keyT);
          const PData& D = data.at(keyD);
          if (mode == AuditMode::Universal) {
            bool aligned = T.atoms.size() == D.atoms.size();
            for (std::size_t x = 0; aligned && x < T.atoms.size(); ++x)
              aligned = tapes_equal(T.atoms[x].tape, D.atoms[x].tape) &&
                        T.atoms[x].prob == D.atoms[x].prob;
            if (!aligned) {
              align.pass = false;
              align.detail =
                  "tape trees differ across reports; per-tape comparison "
                  "undefined (audit this mechanism in expectation mode)";
              break;
            }
            for (std::size_t x = 0; x < T.atoms.size(); ++x) {
              Rational uT =
                  T.outs[x].payments[i] -
                  member_cost(inst, i, classes[i].members[t],
                              T.outs[x].chosen);
              Rational uD =
                  D.outs[x].payments[i] -
                  member_cost(inst, i, classes[i].members[t],
                              D.outs[x].chosen);
              if (uT < uD) {
                truthchk.pass = false;
                Counterexample cx;
                cx.player = i;
                cx.true_member = t;
                cx.deviation_member = d;
                cx.profile_members = keyD;
                cx.tape = D.atoms[x].tape;
                cx.truthful_utility = uT;
                cx.deviating_utility = uD;
                cx.note = "deviation beats truth-telling on tape " +
                          tape_text(D.atoms[x].tape);
                truthchk.witness = std::move(cx);
                break;
              }
            }
          } else {
            Rational euT(0), euD(0);
            for (std::size_t x = 0; x < T.atoms.size(); ++x)
              euT += T.atoms[x].prob *
                     (T.outs[x].payments[i] -
                      member_cost(inst, i, classes[i].members[t],
                                  T.outs[x].chosen));
            for (std::size_t x = 0; x < D.atoms.size(); ++x)
              euD += D.atoms[x].prob *
                     (D.outs[x].payments[i] -
                      member_cost(inst, i, classes[i].members[t],
                                  D.outs[x].chosen));
            if (euT < euD) {
              truthchk.pass = false;
              Counterexample cx;
              cx.player = i;
              cx.true_member = t;
              cx.deviation_member = d;
              cx.profile_members = keyD;
              cx.truthful_utility = euT;
              cx.deviating_utility = euD;
              cx.note = "deviation beats truth-telling in expectation";
              truthchk.witness = std::move(cx);
            }
          }
          if (!truthchk.pass) break;
        }
      }
      if (!truthchk.pass || !align.pass) break;
    }
  }

  const PData& truthful = data.at(truth_idx);
  Rational ev(0);
  for (std::size_t x = 0; x < truthful.atoms.size(); ++x)
    ev += truthful.atoms[x].prob * inst.value(truthful.outs[x].chosen);
  rep.expected_value = ev;

  const Subset everything = full_mask(inst.n());
  const std::pair<BenchmarkKind, const char*> kinds[] = {
      {BenchmarkKind::OptAlg, "opt_alg"},
      {BenchmarkKind::OptBench, "opt_bench"},
      {BenchmarkKind::LpStar, "lp_star"},
  };
  for (const auto& [kind, name] : kinds) {
    BenchmarkResult br = exact_benchmark(inst, kind, everything);
    if (br.value > 0) rep.benchmark_ratios[name] = ev / br.value;
  }

  rep.checks = {mass, truthchk, ir, npt, budget, align};
  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

namespace {

/// H_m = 1 + 1/2 + ... + 1/m (0 for m <= 0); the exact stand-in for the
/// 1 + ln m cover-gap bound.
Rational harmonic(int m) {
  Rational h(0);
  for (int i = 1; i <= m; ++i) h += Rational(Int(1), Int(i));
  return h;
}

void fail_with_set(CheckResult& c, Subset s, const std::string& note) {
  if (!c.pass) return;
  c.pass = false;
  c.detail = note;
  Counterexample cx;
  cx.player = -1;
  cx.note = note + " (set mask " + std::to_string(s) + ")";
  c.witness = std::move(cx);
}

}  // namespace

AuditReport lemma_suite(const Instance& inst) {
  AuditReport rep;
  rep.mechanism = "lemma_suite";
  rep.instance_digest = instance_digest(inst);
  rep.mode = "suite";

  const ValueTable& g = inst.valuation().dense_table();
  const int n = inst.n();
  const int k = inst.k();
  const Subset everything = full_mask(n);
  const std::size_t sets = std::size_t(1) << n;
  const std::size_t splits = std::size_t(1) << k;
  const bool is_xos =
      val_class_implies(inst.valuation().declared_class(), ValClass::Xos);

  std::vector<Partition> split_of(splits);
  for (std::size_t mask = 0; mask < splits; ++mask) {
    std::vector<bool> bits(k);
    for (int i = 0; i < k; ++i) bits[i] = (mask >> i) & 1u;
    split_of[mask] = random_partition(inst, bits);
  }

  // Random-partitioning lemma over every target set and all 2^k splits:
  // (a) both sides keep a quarter of the benchmark value with probability
  // at least 1/2; (b) additionally side 2 carries at least half of g(S) and
  // at least side 1, with probability at least 1/4.
  CheckResult part_a{"partition_omega"};
  CheckResult part_b{"partition_top_half"};
  for (Subset s = 0; s < static_cast<Subset>(sets); ++s) {
    Rational vb = vbench(inst, g, s);
    long long cnt_a = 0, cnt_b = 0;
    for (const auto& sp : split_of) {
      const Rational& g1 = g[s & sp.items1];
      const Rational& g2 = g[s & sp.items2];
      bool omega = Rational(4) * g1 >= vb && Rational(4) * g2 >= vb;
      if (omega) ++cnt_a;
      if (omega && Rational(2) * g2 >= g[s] && g2 >= g1) ++cnt_b;
    }
    if (Rational(Int(2 * cnt_a), Int(splits)) < 1)
      fail_with_set(part_a, s, "two-sided quarter event below probability "
                               "1/2");
    if (Rational(Int(4 * cnt_b), Int(splits)) < 1)
      fail_with_set(part_b, s, "dominant-side event below probability 1/4");
    if (!part_a.pass && !part_b.pass) break;
  }

  // Sampled estimate quality: with probability at least 1/4, side 2's
  // budget-feasible optimum dominates side 1's, side 1 retains a quarter of
  // the benchmark, and side 2 retains half the full optimum.
  CheckResult part_c{"partition_sample"};
  {
    Rational optalg = exact_benchmark(inst, BenchmarkKind::OptAlg,
                                      everything).value;
    Rational optbench = exact_benchmark(inst, BenchmarkKind::OptBench,
                                        everything).value;
    long long cnt = 0;
    for (const auto& sp : split_of) {
      Rational v1 = exact_benchmark(inst, BenchmarkKind::OptAlg,
                                    sp.items1).value;
      Rational v2 = exact_benchmark(inst, BenchmarkKind::OptAlg,
                                    sp.items2).value;
      if (Rational(2) * v2 >= optalg && v2 >= v1 &&
          Rational(4) * v1 >= optbench)
        ++cnt;
    }
    if (Rational(Int(4 * cnt), Int(splits)) < 1) {
      part_c.pass = false;
      part_c.detail = "sampled-optimum event below probability 1/4";
    }
  }

  // LP analogue on XOS instances, including the relaxation dominance
  // LP*_Bench >= OPT_Bench.
  CheckResult part_d{"partition_lp"};
  if (is_xos) {
    Rational lp = exact_benchmark(inst, BenchmarkKind::LpStar,
                                  everything).value;
    Rational lpb = exact_benchmark(inst, BenchmarkKind::LpStarBench,
                                   everything).value;
    Rational optbench = exact_benchmark(inst, BenchmarkKind::OptBench,
                                        everything).value;
    if (lpb < optbench) {
      part_d.pass = false;
      part_d.detail = "LP*_Bench below OPT_Bench";
    } else {
      long long cnt = 0;
      for (const auto& sp : split_of) {
        Rational lp1 = exact_benchmark(inst, BenchmarkKind::LpStar,
                                       sp.items1).value;
        Rational lp2 = exact_benchmark(inst, BenchmarkKind::LpStar,
                                       sp.items2).value;
        if (lp2 >= lp1 && Rational(4) * lp1 >= lpb &&
            Rational(2) * lp2 >= lp)
          ++cnt;
      }
      if (Rational(Int(4 * cnt), Int(splits)) < 1) {
        part_d.pass = false;
        part_d.detail = "sampled-LP event below probability 1/4";
      }
    }
  } else {
    part_d.detail = "valuation not declared XOS; skipped";
  }

  // Marginal-sum bound for XOS valuations, against both the group partition
  // and the singleton partition of the ground set.
  CheckResult marg{"xos_marginal_sum"};
  if (is_xos) {
    for (Subset s = 0; s < static_cast<Subset>(sets); ++s) {
      Rational by_groups(0), by_items(0);
      for (int i = 0; i < k; ++i)
        by_groups += g[s] - g[s & ~inst.group_mask(i)];
      for (int e = 0; e < n; ++e) by_items += g[s] - g[s & ~bit(e)];
      if (by_groups > g[s])
        fail_with_set(marg, s, "group-partition marginal sum exceeds g(S)");
      if (by_items > g[s])
        fail_with_set(marg, s,
                      "singleton-partition marginal sum exceeds g(S)");
      if (!marg.pass) break;
    }
  } else {
    marg.detail = "valuation not declared XOS; skipped";
  }

  // Half-budget pruning postconditions over a value grid, for every
  // budget-feasible target set. The all-zero corner (worthless set with a
  // zero target) admits no set strictly above the floor and is skipped.
  CheckResult prg{"prune_group_prefix"};
  CheckResult pre{"prune_element_prefix"};
  bool supadd_costs = true;
  for (const auto& c : inst.true_costs())
    supadd_costs = supadd_costs && c.superadditive();
  if (!supadd_costs)
    pre.detail = "aggregate cost not superadditive; skipped";
  const Rational half_budget = inst.budget() / 2;
  for (Subset s = 0; s < static_cast<Subset>(sets); ++s) {
    if (inst.true_total_cost(s) > inst.budget()) continue;
    Rational maxe(0);
    for (int e : items_of(s)) maxe = std::max(maxe, g[bit(e)]);
    Rational vb = vbench(inst, g, s);
    const Rational grid[] = {g[s] / 4,  g[s] / 2, Rational(3) * g[s] / 4,
                             g[s],      vb / 2,   g[s] + 1};
    for (const Rational& val : grid) {
      if (val == 0 && g[s] == 0) continue;
      if (prg.pass) {
        Subset t = prune(inst, g, inst.true_costs(), s, val,
                         PruneMode::GroupPrefix);
        Rational floor = std::min(Rational(vb - val), Rational(val - maxe));
        if ((t & ~s) != 0 || inst.true_total_cost(t) > half_budget ||
            g[t] > val || !(g[t] > floor))
          fail_with_set(prg, s, "group-prefix pruning postcondition fails");
      }
      if (supadd_costs && pre.pass) {
        Subset t = prune(inst, g, inst.true_costs(), s, val,
                         PruneMode::ElementPrefix);
        Rational floor = std::min(Rational(g[s] - val), val) - maxe;
        if ((t & ~s) != 0 || inst.true_total_cost(t) > half_budget ||
            g[t] > val || !(g[t] > floor))
          fail_with_set(pre, s,
                        "element-prefix pruning postcondition fails");
      }
    }
    if (!prg.pass && (!supadd_costs || !pre.pass)) break;
  }

  // Configuration LPs have two rows, so basic optima use at most two sets.
  CheckResult supp{"lp_support"};
  {
    FractionalSolution bflp =
        solve_bflp(inst, g, inst.true_costs(), everything);
    Rational kappa = bflp.objective / (Rational(2) * inst.budget());
    Rational cap = bflp.objective / 2;
    FractionalSolution cdlp =
        solve_cdlp(inst, g, inst.true_costs(), everything, kappa, cap);
    if (bflp.support.size() > 2 || cdlp.support.size() > 2 ||
        bflp.mass > 1 || cdlp.mass > 1) {
      supp.pass = false;
      supp.detail = "basic optimum uses more than two sets";
    } else {
      supp.detail = "bflp support " + std::to_string(bflp.support.size()) +
                    ", cdlp support " + std::to_string(cdlp.support.size()) +
                    " at rate " + format_rational(kappa);
    }
  }

  // Group-respecting cover surrogate: pointwise under-approximation, the
  // harmonic gap bound per set, and its own marginal-sum property.
  CheckResult frc{"frcover_sandwich"};
  {
    ValueTable vx = player_respecting_xos(inst, g);
    Rational gap = frcover_gap(inst, g, vx);
    if (gap > harmonic(k)) {
      frc.pass = false;
      frc.detail = "observed cover gap exceeds H_k";
    }
    for (Subset s = 0; frc.pass && s < static_cast<Subset>(sets); ++s) {
      int hit = 0;
      for (int i = 0; i < k; ++i)
        if ((s & inst.group_mask(i)) != 0) ++hit;
      if (vx[s] > g[s])
        fail_with_set(frc, s, "cover surrogate exceeds the valuation");
      else if (harmonic(hit) * vx[s] < g[s])
        fail_with_set(frc, s, "cover surrogate below g(S)/H_(groups hit)");
      else {
        Rational sum(0);
        for (int i = 0; i < k; ++i)
          sum += vx[s] - vx[s & ~inst.group_mask(i)];
        if (sum > vx[s])
          fail_with_set(frc, s, "surrogate marginal sum exceeds its value");
      }
    }
    if (frc.pass && frc.detail.empty())
      frc.detail = "observed gap " + format_rational(gap);
  }

  // With a single player the benchmark discounts the whole optimum.
  CheckResult single{"single_player_bench"};
  if (k == 1) {
    Rational ob = exact_benchmark(inst, BenchmarkKind::OptBench,
                                  everything).value;
    if (ob != 0) {
      single.pass = false;
      single.detail = "OPT_Bench nonzero on a single-player instance";
    }
  } else {
    single.detail = "more than one player; skipped";
  }

  rep.checks = {part_a, part_b, part_c, part_d, marg,
                prg,    pre,    supp,   frc,    single};
  for (CheckResult& c : weak_monotonicity_checks(inst))
    rep.checks.push_back(std::move(c));
  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

std::vector<CheckResult> weak_monotonicity_checks(const Instance& inst) {
  std::vector<CheckResult> out;
  const int k = inst.k();
  struct Candidate {
    MechId id;
    MechParams params;
    std::string label;
  };
  std::vector<Candidate> cands;
  cands.push_back({MechId::SecondOpt, {}, "second_opt"});
  cands.push_back({MechId::OptalgEmax, {}, "optalg_emax"});
  for (int i = 0; i < k; ++i) {
    MechParams mp;
    mp.player = i;
    cands.push_back({MechId::M1, mp, "m1(player=" + std::to_string(i) + ")"});
    cands.push_back({MechId::M2, mp, "m2(player=" + std::to_string(i) + ")"});
  }
  for (const auto& cand : cands) {
    if (!mech_applicable(cand.id, inst, cand.params)) continue;
    CheckResult c{"weak_monotonicity:" + cand.label};
    for (int i = 0; i < k && c.pass; ++i) {
      const auto& members = inst.cost_classes()[i].members;
      const int m = static_cast<int>(members.size());
      for (int a = 0; a < m && c.pass; ++a) {
        for (int b = a + 1; b < m; ++b) {
          CostProfile qa = inst.true_costs(), qb = inst.true_costs();
          qa[i] = members[a];
          qb[i] = members[b];
          Subset A = run_mechanism(cand.id, inst, qa, RandomTape{},
                                   cand.params)
                         .chosen;
          Subset Ab = run_mechanism(cand.id, inst, qb, RandomTape{},
                                    cand.params)
                          .chosen;
          Rational lhs = member_cost(inst, i, members[a], A) +
                         member_cost(inst, i, members[b], Ab);
          Rational rhs = member_cost(inst, i, members[a], Ab) +
                         member_cost(inst, i, members[b], A);
          if (lhs > rhs) {
            c.pass = false;
            Counterexample cx;
            cx.player = i;
            cx.true_member = a;
            cx.deviation_member = b;
            cx.truthful_utility = lhs;
            cx.deviating_utility = rhs;
            cx.note = "weak monotonicity violated between members " +
                      std::to_string(a) + " and " + std::to_string(b);
            c.witness = std::move(cx);
            break;
          }
        }
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

CheckResult det_overbid_ceiling(const Instance& inst, const Rational& alpha) {
  if (inst.k() != 1 || inst.cost_classes()[0].members.size() != 2)
    throw std::invalid_argument(
        "det_overbid_ceiling expects a single player with a two-member "
        "class");
  const ValueTable& g = inst.valuation().dense_table();
  CheckResult c{"det_overbid_ceiling"};
  std::ostringstream detail;
  const MechId det[] = {MechId::SecondOpt, MechId::M1, MechId::M2,
                        MechId::OptalgEmax};
  for (MechId id : det) {
    if (!mech_applicable(id, inst)) continue;
    Rational val[2], ceiling[2];
    for (int t = 0; t < 2; ++t) {
      CostProfile prof{inst.cost_classes()[0].members[t]};
      val[t] =
          inst.value(run_mechanism(id, inst, prof, RandomTape{}).chosen);
      ceiling[t] = opt_alg_value(inst, g, prof, full_mask(inst.n()));
    }
    detail << mech_name(id) << ": " << format_rational(val[0]) << " vs "
           << format_rational(ceiling[0]) << "/alpha, "
           << format_rational(val[1]) << " vs " << format_rational(ceiling[1])
           << "/alpha; ";
    if (alpha * val[0] > ceiling[0] && alpha * val[1] > ceiling[1]) {
      c.pass = false;
      Counterexample cx;
      cx.player = 0;
      cx.note = mech_name(id) +
                " beats the OPTalg/alpha ceiling on both class members";
      c.witness = std::move(cx);
    }
  }
  c.detail = detail.str();
  return c;
}

CheckResult los_nob_telescoping(const Instance& inst, MechId id,
                                const MechParams& params) {
  const int k = inst.k();
  std::size_t member_count = inst.cost_classes()[0].members.size();
  for (const auto& cls : inst.cost_classes())
    if (cls.members.size() != member_count)
      throw std::invalid_argument(
          "los_nob_telescoping expects equal class sizes");
  const int levels = static_cast<int>(member_count);
  CheckResult c{"los_nob_telescoping"};
  Rational chain(0), p0(0);
  std::ostringstream detail;
  for (int ell = 0; ell < levels; ++ell) {
    CostProfile prof;
    for (int i = 0; i < k; ++i)
      prof.push_back(inst.cost_classes()[i].members[ell]);
    Rational a = expected_value_under(id, inst, prof, params);
    Rational p = expected_payment_under(id, inst, prof, params);
    Rational weight = ell == 0 ? Rational(1, 2)
                               : Rational(Int(1) << (ell - 1));
    chain += weight * a;
    if (ell == 0) p0 = p;
    detail << "l=" << ell << ": a=" << format_rational(a)
           << " p=" << format_rational(p) << "; ";
  }
  detail << "chain=" << format_rational(chain);
  c.detail = detail.str();
  if (!(chain <= p0 && p0 <= inst.budget())) {
    c.pass = false;
    Counterexample cx;
    cx.player = -1;
    cx.truthful_utility = chain;
    cx.deviating_utility = p0;
    cx.note = "telescoping payment chain violated";
    c.witness = std::move(cx);
  }
  return c;
}

namespace {

using Json = nlohmann::ordered_json;

Json tape_json(const RandomTape& t) {
  Json j = Json::object();
  auto bits = [](const std::vector<bool>& v) {
    Json arr = Json::array();
    for (bool b : v) arr.push_back(b ? 1 : 0);
    return arr;
  };
  if (t.partition_bits) j["partition_bits"] = bits(*t.partition_bits);
  if (t.proxy_partition_bits)
    j["proxy_partition_bits"] = bits(*t.proxy_partition_bits);
  if (t.branch_coin) j["branch_coin"] = format_rational(*t.branch_coin);
  if (t.sample_coin) j["sample_coin"] = format_rational(*t.sample_coin);
  if (t.j_coin) j["j_coin"] = *t.j_coin;
  if (t.exponent_coin) j["exponent_coin"] = *t.exponent_coin;
  if (t.index_coin) j["index_coin"] = *t.index_coin;
  return j;
}

}  // namespace

std::string audit_report_json(const AuditReport& report) {
  Json root = Json::object();
  root["mechanism"] = report.mechanism;
  root["instance"] = report.instance_digest;
  root["mode"] = report.mode;
  root["pass"] = report.pass;
  root["expected_value"] = format_rational(report.expected_value);
  Json ratios = Json::object();
  for (const auto& [name, value] : report.benchmark_ratios)
    ratios[name] = format_rational(value);
  root["benchmark_ratios"] = ratios;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json jc = Json::object();
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    if (c.witness) {
      const Counterexample& cx = *c.witness;
      Json jw = Json::object();
      jw["player"] = cx.player;
      jw["true_member"] = cx.true_member;
      jw["deviation_member"] = cx.deviation_member;
      Json prof = Json::array();
      for (int m : cx.profile_members) prof.push_back(m);
      jw["profile_members"] = prof;
      if (cx.tape) jw["tape"] = tape_json(*cx.tape);
      jw["truthful_utility"] = format_rational(cx.truthful_utility);
      jw["deviating_utility"] = format_rational(cx.deviating_utility);
      jw["note"] = cx.note;
      jc["counterexample"] = jw;
    }
    checks.push_back(jc);
  }
  root["checks"] = checks;
  return root.dump(2) + "\n";
}

}  // namespace bfmd
