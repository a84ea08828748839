// bfmd: validate instance files, run mechanisms on explicit / enumerated /
// sampled tapes, audit mechanisms exhaustively, and sweep the structural
// lemma suite over corpora. Exit codes: 0 success, 1 audit or validation
// failure, 2 input error.
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bfmd/io.hpp"
#include "bfmd/verify.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::vector<std::string> instances;
  std::string mech;
  std::string lambda, p, beta, gamma, epsilon, val, zeta_sub;
  int r = -1;
  int player = -1;
  std::string tapes = "enumerate";
  std::vector<std::string> benchmarks;
  std::string bench_ell = "1", bench_eps = "1";
  int bench_player = 0;
  std::string opponents;  // "", "product", "truthful"
  std::string mode;       // "", "universal", "expectation"
  std::string format = "json";
  std::string out;
};

struct TapeSource {
  enum Kind { Enumerate, File, Seed } kind = Enumerate;
  std::string path;
  unsigned long long seed = 0;
  std::size_t count = 0;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bfmd::Rational rat_flag(const std::string& text, const std::string& flag) {
  auto r = bfmd::parse_rational(text);
  if (!r)
    throw bfmd::ParseError(flag + ": malformed rational \"" + text + "\"");
  return *r;
}

bfmd::MechParams build_params(const RunConfig& cfg) {
  bfmd::MechParams mp;
  if (!cfg.lambda.empty()) mp.lambda = rat_flag(cfg.lambda, "--lambda");
  if (!cfg.p.empty()) mp.p = rat_flag(cfg.p, "--p");
  if (!cfg.beta.empty()) mp.beta = rat_flag(cfg.beta, "--beta");
  if (!cfg.gamma.empty()) mp.gamma = rat_flag(cfg.gamma, "--gamma");
  if (!cfg.epsilon.empty()) mp.epsilon = rat_flag(cfg.epsilon, "--epsilon");
  if (!cfg.val.empty()) mp.val = rat_flag(cfg.val, "--val");
  if (cfg.r >= 0) mp.r = cfg.r;
  if (cfg.player >= 0) mp.player = cfg.player;
  if (!cfg.zeta_sub.empty()) {
    auto id = bfmd::mech_from_name(lower(cfg.zeta_sub));
    if (!id)
      throw bfmd::ParseError("--zeta-sub: unknown mechanism \"" +
                             cfg.zeta_sub + "\"");
    mp.zeta_sub = *id;
  }
  return mp;
}

bfmd::MechId mech_flag(const std::string& name) {
  auto id = bfmd::mech_from_name(lower(name));
  if (!id)
    throw bfmd::ParseError("--mech: unknown mechanism \"" + name + "\"");
  return *id;
}

std::optional<bfmd::BenchmarkKind> bench_from_name(const std::string& name) {
  using K = bfmd::BenchmarkKind;
  static const std::vector<std::pair<std::string, K>> table = {
      {"opt_alg", K::OptAlg},
      {"opt_bench", K::OptBench},
      {"opt_bench_ell", K::OptBenchEll},
      {"opt_param", K::OptParam},
      {"lp_star", K::LpStar},
      {"lp_star_bench", K::LpStarBench},
      {"opt_i", K::OptI},
      {"opt_second", K::OptSecond},
      {"v_max", K::VMax},
      {"sd_opt", K::SDOpt},
  };
  for (const auto& [n, k] : table)
    if (n == lower(name)) return k;
  return std::nullopt;
}

TapeSource parse_tapes(const std::string& text) {
  TapeSource src;
  if (text == "enumerate") return src;
  if (text.rfind("file:", 0) == 0) {
    src.kind = TapeSource::File;
    src.path = text.substr(5);
    if (src.path.empty()) throw bfmd::ParseError("--tapes: empty file path");
    return src;
  }
  if (text.rfind("seed:", 0) == 0) {
    const std::string rest = text.substr(5);
    const auto comma = rest.find(',');
    if (comma == std::string::npos || rest.compare(comma + 1, 6, "count:") != 0)
      throw bfmd::ParseError("--tapes: expected seed:N,count:M");
    try {
      src.seed = std::stoull(rest.substr(0, comma));
      src.count = std::stoull(rest.substr(comma + 7));
    } catch (...) {
      throw bfmd::ParseError("--tapes: malformed seed:N,count:M");
    }
    if (src.count == 0) throw bfmd::ParseError("--tapes: count must be > 0");
    src.kind = TapeSource::Seed;
    return src;
  }
  throw bfmd::ParseError(
      "--tapes: expected enumerate | file:PATH | seed:N,count:M");
}

std::vector<std::string> expand_paths(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& p : in) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::string> found;
      for (const auto& e : std::filesystem::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".json")
          found.push_back(e.path().string());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

Json params_json(const bfmd::MechParams& mp) {
  Json j = Json::object();
  if (mp.lambda) j["lambda"] = bfmd::format_rational(*mp.lambda);
  if (mp.p) j["p"] = bfmd::format_rational(*mp.p);
  if (mp.beta) j["beta"] = bfmd::format_rational(*mp.beta);
  if (mp.gamma) j["gamma"] = bfmd::format_rational(*mp.gamma);
  if (mp.epsilon) j["epsilon"] = bfmd::format_rational(*mp.epsilon);
  if (mp.val) j["val"] = bfmd::format_rational(*mp.val);
  if (mp.r) j["r"] = *mp.r;
  if (mp.player) j["player"] = *mp.player;
  if (mp.zeta_sub) j["zeta_sub"] = bfmd::mech_name(*mp.zeta_sub);
  return j;
}

Json tape_json(const bfmd::RandomTape& t) {
  Json j = Json::object();
  auto bits = [](const std::vector<bool>& v) {
    Json arr = Json::array();
    for (bool b : v) arr.push_back(b ? 1 : 0);
    return arr;
  };
  if (t.partition_bits) j["partition_bits"] = bits(*t.partition_bits);
  if (t.proxy_partition_bits)
    j["proxy_partition_bits"] = bits(*t.proxy_partition_bits);
  if (t.branch_coin) j["branch_coin"] = bfmd::format_rational(*t.branch_coin);
  if (t.sample_coin) j["sample_coin"] = bfmd::format_rational(*t.sample_coin);
  if (t.j_coin) j["j_coin"] = *t.j_coin;
  if (t.exponent_coin) j["exponent_coin"] = *t.exponent_coin;
  if (t.index_coin) j["index_coin"] = *t.index_coin;
  return j;
}

bfmd::RandomTape tape_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw bfmd::ParseError(path + ": expected an object");
  bfmd::RandomTape t;
  auto bits = [&](const Json& arr, const std::string& p) {
    if (!arr.is_array()) throw bfmd::ParseError(p + ": expected an array");
    std::vector<bool> out;
    for (const auto& e : arr) {
      if (!e.is_number_integer())
        throw bfmd::ParseError(p + ": expected 0/1 entries");
      out.push_back(e.get<int>() != 0);
    }
    return out;
  };
  if (j.contains("partition_bits"))
    t.partition_bits = bits(j.at("partition_bits"), path + ".partition_bits");
  if (j.contains("proxy_partition_bits"))
    t.proxy_partition_bits =
        bits(j.at("proxy_partition_bits"), path + ".proxy_partition_bits");
  auto rat = [&](const char* key) -> std::optional<bfmd::Rational> {
    if (!j.contains(key)) return std::nullopt;
    const Json& v = j.at(key);
    if (!v.is_string())
      throw bfmd::ParseError(path + "." + key + ": expected a \"p/q\" string");
    auto r = bfmd::parse_rational(v.get<std::string>());
    if (!r) throw bfmd::ParseError(path + "." + key + ": malformed rational");
    return *r;
  };
  t.branch_coin = rat("branch_coin");
  t.sample_coin = rat("sample_coin");
  if (j.contains("j_coin")) {
    if (!j.at("j_coin").is_boolean())
      throw bfmd::ParseError(path + ".j_coin: expected boolean");
    t.j_coin = j.at("j_coin").get<bool>();
  }
  auto num = [&](const char* key) -> std::optional<int> {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_number_integer())
      throw bfmd::ParseError(path + "." + key + ": expected integer");
    return j.at(key).get<int>();
  };
  t.exponent_coin = num("exponent_coin");
  t.index_coin = num("index_coin");
  return t;
}

/// A full tape with every field populated; mechanisms read only the fields
/// they declare. Coin values are 64-bit dyadic rationals.
bfmd::RandomTape sample_tape(bfmd::MechId id, const bfmd::Instance& inst,
                             std::mt19937_64& rng) {
  auto coin = [&] {
    return bfmd::Rational(bfmd::Int(rng()), bfmd::Int(1) << 64);
  };
  auto bits = [&](int k) {
    std::vector<bool> b(k);
    for (int i = 0; i < k; ++i) b[i] = (rng() & 1u) != 0;
    return b;
  };
  bfmd::RandomTape t;
  t.partition_bits = bits(inst.k());
  t.proxy_partition_bits = bits(inst.k());
  t.branch_coin = coin();
  t.sample_coin = coin();
  t.j_coin = (rng() & 1u) != 0;
  int emax = 0;
  if (id == bfmd::MechId::OptalgLogn || id == bfmd::MechId::OptalgLognExp)
    emax = bfmd::ceil_log2(inst.n());
  else if (id == bfmd::MechId::OptalgLogz)
    emax = bfmd::ceil_log2(std::max(1, inst.zeta()));
  t.exponent_coin = static_cast<int>(rng() % (emax + 1));
  const int icount = id == bfmd::MechId::OptalgZeta
                         ? std::max(1, inst.zeta())
                         : std::max(1, inst.n());
  t.index_coin = static_cast<int>(rng() % icount);
  return t;
}

Json outcome_json(const bfmd::Instance& inst, const bfmd::Outcome& o) {
  Json j = Json::object();
  Json chosen = Json::array();
  for (int e : bfmd::items_of(o.chosen)) chosen.push_back(e);
  j["chosen"] = chosen;
  j["value"] = bfmd::format_rational(inst.value(o.chosen));
  Json pays = Json::array();
  for (const auto& p : o.payments) pays.push_back(bfmd::format_rational(p));
  j["payments"] = pays;
  if (!o.flags.empty()) {
    Json flags = Json::object();
    for (const auto& [key, v] : o.flags)
      flags[key] = bfmd::format_rational(v);
    j["flags"] = flags;
  }
  if (!o.trace.empty()) {
    Json tr = Json::array();
    for (const auto& line : o.trace) tr.push_back(line);
    j["trace"] = tr;
  }
  return j;
}

struct CsvRow {
  std::string instance;
  std::string mechanism;
  std::string metric;
  std::string value;
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw bfmd::ParseError("cannot open output file: " + out_path);
  out << text;
}

std::string csv_text(std::vector<CsvRow> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const CsvRow& a, const CsvRow& b) {
                     if (a.instance != b.instance)
                       return a.instance < b.instance;
                     return a.mechanism < b.mechanism;
                   });
  std::ostringstream os;
  os << "instance,mechanism,metric,value\n";
  for (const auto& r : rows)
    os << r.instance << ',' << r.mechanism << ',' << r.metric << ','
       << r.value << '\n';
  return os.str();
}

void report_to_rows(const Json& rep, const std::string& mech,
                    std::vector<CsvRow>& rows) {
  const std::string digest = rep.at("instance").get<std::string>();
  if (rep.contains("expected_value"))
    rows.push_back({digest, mech, "expected_value",
                    rep.at("expected_value").get<std::string>()});
  if (rep.contains("mean_value"))
    rows.push_back({digest, mech, "mean_value",
                    rep.at("mean_value").get<std::string>()});
  if (rep.contains("benchmark_ratios"))
    for (const auto& [name, v] : rep.at("benchmark_ratios").items())
      rows.push_back({digest, mech, "ratio:" + name, v.get<std::string>()});
  if (rep.contains("benchmarks"))
    for (const auto& [name, v] : rep.at("benchmarks").items())
      rows.push_back({digest, mech, "bench:" + name, v.get<std::string>()});
  if (rep.contains("checks"))
    for (const auto& c : rep.at("checks"))
      rows.push_back({digest, mech, "check:" + c.at("name").get<std::string>(),
                      c.at("pass").get<bool>() ? "pass" : "fail"});
}

int cmd_validate(const RunConfig& cfg) {
  int rc = 0;
  std::ostringstream os;
  for (const auto& path : expand_paths(cfg.instances)) {
    if (!std::filesystem::is_regular_file(path))
      throw bfmd::ParseError("no such instance file: " + path);
    try {
      const bfmd::Instance inst = bfmd::load_instance_file(path);
      os << "ok " << bfmd::instance_digest(inst) << " " << path << "\n";
    } catch (const std::exception& e) {
      os << "invalid " << path << ": " << e.what() << "\n";
      rc = 1;
    }
  }
  emit(os.str(), cfg.out);
  return rc;
}

int cmd_run(const RunConfig& cfg) {
  const bfmd::MechId id = mech_flag(cfg.mech);
  const bfmd::MechParams given = build_params(cfg);
  const TapeSource src = parse_tapes(cfg.tapes);

  std::vector<std::pair<std::string, bfmd::BenchmarkKind>> wanted;
  for (const auto& name : cfg.benchmarks) {
    auto kind = bench_from_name(name);
    if (!kind)
      throw bfmd::ParseError("--benchmarks: unknown benchmark \"" + name +
                             "\"");
    wanted.emplace_back(lower(name), *kind);
  }
  bfmd::BenchParam bp;
  bp.ell = rat_flag(cfg.bench_ell, "--bench-ell");
  bp.eps = rat_flag(cfg.bench_eps, "--bench-eps");
  bp.player = cfg.bench_player;

  Json root = Json::object();
  root["command"] = "run";
  Json reports = Json::array();
  std::vector<CsvRow> rows;

  for (const auto& path : expand_paths(cfg.instances)) {
    const bfmd::Instance inst = bfmd::load_instance_file(path);
    std::string why;
    if (!bfmd::mech_applicable(id, inst, given, &why))
      throw bfmd::ParseError(bfmd::mech_name(id) + " not applicable to " +
                             path + ": " + why);
    const bfmd::MechParams rp = bfmd::resolve_params(id, inst, given);

    Json rep = Json::object();
    rep["instance"] = bfmd::instance_digest(inst);
    rep["path"] = path;
    rep["mechanism"] = bfmd::mech_name(id);
    rep["params"] = params_json(rp);

    if (src.kind == TapeSource::Enumerate) {
      bfmd::TapeEnumeration en =
          bfmd::enumerate_tapes(id, inst, inst.true_costs(), rp);
      if (en.monte_carlo)
        throw bfmd::ParseError(
            "tape space exceeds the exact enumeration guard; rerun with "
            "--tapes seed:N,count:M");
      rep["tapes"] = "enumerate";
      Json runs = Json::array();
      bfmd::Rational ev(0);
      for (const auto& atom : en.atoms) {
        const bfmd::Outcome o =
            bfmd::run_mechanism(id, inst, inst.true_costs(), atom.tape, rp);
        Json jr = Json::object();
        jr["tape"] = tape_json(atom.tape);
        jr["probability"] = bfmd::format_rational(atom.prob);
        jr.update(outcome_json(inst, o));
        runs.push_back(std::move(jr));
        ev += atom.prob * inst.value(o.chosen);
      }
      rep["runs"] = std::move(runs);
      rep["expected_value"] = bfmd::format_rational(ev);
      Json benches = Json::object();
      Json ratios = Json::object();
      for (const auto& [name, kind] : wanted) {
        const bfmd::Rational bv =
            bfmd::exact_benchmark(inst, kind, bfmd::full_mask(inst.n()), bp)
                .value;
        benches[name] = bfmd::format_rational(bv);
        if (bv > 0) ratios[name] = bfmd::format_rational(ev / bv);
      }
      if (!wanted.empty()) {
        rep["benchmarks"] = std::move(benches);
        rep["benchmark_ratios"] = std::move(ratios);
      }
    } else if (src.kind == TapeSource::File) {
      std::ifstream in(src.path);
      if (!in) throw bfmd::ParseError("cannot open tape file: " + src.path);
      std::ostringstream text;
      text << in.rdbuf();
      Json jt;
      try {
        jt = Json::parse(text.str());
      } catch (const std::exception& e) {
        throw bfmd::ParseError(std::string("tape file: ") + e.what());
      }
      std::vector<bfmd::RandomTape> tapes;
      if (jt.is_array()) {
        for (std::size_t i = 0; i < jt.size(); ++i)
          tapes.push_back(
              tape_from_json(jt.at(i), "tapes." + std::to_string(i)));
      } else {
        tapes.push_back(tape_from_json(jt, "tape"));
      }
      rep["tapes"] = "file:" + src.path;
      Json runs = Json::array();
      for (const auto& tape : tapes) {
        const bfmd::Outcome o =
            bfmd::run_mechanism(id, inst, inst.true_costs(), tape, rp);
        Json jr = Json::object();
        jr["tape"] = tape_json(tape);
        jr.update(outcome_json(inst, o));
        runs.push_back(std::move(jr));
      }
      rep["runs"] = std::move(runs);
    } else {
      std::mt19937_64 rng(src.seed);
      rep["tapes"] = "seed:" + std::to_string(src.seed) +
                     ",count:" + std::to_string(src.count);
      Json runs = Json::array();
      bfmd::Rational total(0);
      for (std::size_t s = 0; s < src.count; ++s) {
        const bfmd::RandomTape tape = sample_tape(id, inst, rng);
        const bfmd::Outcome o =
            bfmd::run_mechanism(id, inst, inst.true_costs(), tape, rp);
        Json jr = Json::object();
        jr["tape"] = tape_json(tape);
        jr.update(outcome_json(inst, o));
        runs.push_back(std::move(jr));
        total += inst.value(o.chosen);
      }
      rep["runs"] = std::move(runs);
      rep["mean_value"] =
          bfmd::format_rational(total / bfmd::Rational(bfmd::Int(src.count)));
    }
    report_to_rows(rep, bfmd::mech_name(id), rows);
    reports.push_back(std::move(rep));
  }
  root["reports"] = std::move(reports);
  emit(cfg.format == "csv" ? csv_text(std::move(rows))
                           : root.dump(2) + "\n",
       cfg.out);
  return 0;
}

int cmd_audit(const RunConfig& cfg) {
  const bfmd::MechId id = mech_flag(cfg.mech);
  const bfmd::MechParams given = build_params(cfg);

  Json root = Json::object();
  root["command"] = "audit";
  Json reports = Json::array();
  std::vector<CsvRow> rows;
  bool all_pass = true;

  for (const auto& path : expand_paths(cfg.instances)) {
    const bfmd::Instance inst = bfmd::load_instance_file(path);
    std::string why;
    if (!bfmd::mech_applicable(id, inst, given, &why))
      throw bfmd::ParseError(bfmd::mech_name(id) + " not applicable to " +
                             path + ": " + why);
    bfmd::AuditMode mode;
    if (cfg.mode == "universal") {
      mode = bfmd::AuditMode::Universal;
    } else if (cfg.mode == "expectation") {
      mode = bfmd::AuditMode::Expectation;
    } else {
      const bool lottery = id == bfmd::MechId::BfInExp ||
                           id == bfmd::MechId::SubaddBfInExp ||
                           id == bfmd::MechId::OptalgLognExp;
      mode = lottery ? bfmd::AuditMode::Expectation
                     : bfmd::AuditMode::Universal;
    }
    bfmd::AuditOptions opts;
    if (cfg.opponents == "product") opts.full_product = true;
    if (cfg.opponents == "truthful") opts.full_product = false;
    const bfmd::AuditReport ar =
        bfmd::check_mechanism(id, inst, mode, given, opts);
    all_pass = all_pass && ar.pass;
    Json rep = Json::parse(bfmd::audit_report_json(ar));
    rep["path"] = path;
    rep["params"] =
        params_json(bfmd::resolve_params(id, inst, given));
    report_to_rows(rep, bfmd::mech_name(id), rows);
    reports.push_back(std::move(rep));
  }
  root["reports"] = std::move(reports);
  emit(cfg.format == "csv" ? csv_text(std::move(rows))
                           : root.dump(2) + "\n",
       cfg.out);
  return all_pass ? 0 : 1;
}

int cmd_suite(const RunConfig& cfg) {
  Json root = Json::object();
  root["command"] = "suite";
  Json reports = Json::array();
  std::vector<CsvRow> rows;
  bool all_pass = true;

  for (const auto& path : expand_paths(cfg.instances)) {
    const bfmd::Instance inst = bfmd::load_instance_file(path);
    const bfmd::AuditReport ar = bfmd::lemma_suite(inst);
    all_pass = all_pass && ar.pass;
    Json rep = Json::parse(bfmd::audit_report_json(ar));
    rep["path"] = path;
    report_to_rows(rep, "lemma_suite", rows);
    reports.push_back(std::move(rep));
  }
  root["reports"] = std::move(reports);
  emit(cfg.format == "csv" ? csv_text(std::move(rows))
                           : root.dump(2) + "\n",
       cfg.out);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact-rational laboratory for multidimensional budget-feasible "
      "procurement mechanisms"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_instances = [&](CLI::App* sub) {
    sub->add_option("--instance", cfg.instances,
                    "instance file or directory (repeatable)")
        ->required();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  };
  auto add_mech = [&](CLI::App* sub) {
    sub->add_option("--mech", cfg.mech, "mechanism id, e.g. second_opt")
        ->required();
    sub->add_option("--lambda", cfg.lambda, "rate parameter, \"p/q\"");
    sub->add_option("--p", cfg.p, "branch probability, \"p/q\"");
    sub->add_option("--beta", cfg.beta, "demand approximation factor");
    sub->add_option("--gamma", cfg.gamma, "cover-gap factor");
    sub->add_option("--epsilon", cfg.epsilon, "approximation slack");
    sub->add_option("--val", cfg.val, "single-player target value");
    sub->add_option("--r", cfg.r, "scale resolution");
    sub->add_option("--player", cfg.player, "single-player mechanism player");
    sub->add_option("--zeta-sub", cfg.zeta_sub,
                    "sub-mechanism for optalg_zeta");
  };

  CLI::App* validate =
      app.add_subcommand("validate", "parse and validate instance files");
  add_instances(validate);
  validate->add_option("--out", cfg.out, "output path (default stdout)");

  CLI::App* run = app.add_subcommand(
      "run", "run one mechanism; enumerate mode adds exact expectations");
  add_instances(run);
  add_mech(run);
  run->add_option("--tapes", cfg.tapes,
                  "enumerate | file:PATH | seed:N,count:M");
  run->add_option("--benchmarks", cfg.benchmarks,
                  "comma-separated benchmark list, e.g. opt_alg,opt_second")
      ->delimiter(',');
  run->add_option("--bench-ell", cfg.bench_ell, "ell for opt_bench_ell");
  run->add_option("--bench-eps", cfg.bench_eps, "eps for opt_param");
  run->add_option("--bench-player", cfg.bench_player, "player for opt_i");
  add_output(run);

  CLI::App* audit = app.add_subcommand(
      "audit", "exhaustive truthfulness / IR / NPT / budget audit");
  add_instances(audit);
  add_mech(audit);
  audit->add_option("--mode", cfg.mode, "audit mode")
      ->check(CLI::IsMember({"universal", "expectation"}));
  audit->add_option("--opponents", cfg.opponents,
                    "opponent profiles: full product or truthful only")
      ->check(CLI::IsMember({"product", "truthful"}));
  add_output(audit);

  CLI::App* suite =
      app.add_subcommand("suite", "structural lemma suite over a corpus");
  add_instances(suite);
  add_output(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(cfg);
    if (app.got_subcommand(run)) return cmd_run(cfg);
    if (app.got_subcommand(audit)) return cmd_audit(cfg);
    return cmd_suite(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
