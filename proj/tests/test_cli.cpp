// End-to-end tests of the command-line laboratory: exit codes, JSON and CSV
// shapes, frozen worked-market outputs, and byte-for-byte determinism. The
// binary path arrives via the BFMD_CLI_PATH compile definition.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "bfmd/io.hpp"
#include "fixtures.hpp"

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace bfmd;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "bfmd_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path cap = work_dir() / ("capture_" + std::to_string(counter++) + ".txt");
  std::string cmd = std::string(BFMD_CLI_PATH) + " " + args + " > " +
                    cap.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  CliResult r;
  r.out = slurp(cap);
  if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  return r;
}

fs::path write_instance(const Instance& inst, const std::string& name) {
  fs::path p = work_dir() / name;
  std::ofstream(p, std::ios::binary) << serialize_instance(inst);
  return p;
}

fs::path i0_path() {
  static fs::path p = write_instance(bfmd::testing::make_i0(), "i0.json");
  return p;
}

fs::path replay_path() {
  static fs::path p =
      write_instance(bfmd::testing::make_replay_control(), "replay.json");
  return p;
}

}  // namespace

TEST_CASE("validate reports digests and exit codes") {
  CliResult ok = run_cli("validate --instance " + i0_path().string());
  CHECK(ok.code == 0);
  CHECK(ok.out.substr(0, 3) == "ok ");
  CHECK(ok.out.find(instance_digest(bfmd::testing::make_i0())) !=
        std::string::npos);

  fs::path bad = work_dir() / "bad.json";
  std::ofstream(bad) << "{\"n\": -1}";
  CliResult inv = run_cli("validate --instance " + bad.string());
  CHECK(inv.code == 1);
  CHECK(inv.out.substr(0, 7) == "invalid");

  CliResult missing =
      run_cli("validate --instance " + (work_dir() / "nope.json").string());
  CHECK(missing.code == 2);
}

TEST_CASE("run: frozen worked-market output") {
  CliResult r = run_cli("run --instance " + i0_path().string() +
                        " --mech second_opt --tapes enumerate"
                        " --benchmarks opt_second,opt_alg");
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc.at("command") == "run");
  const Json& rep = doc.at("reports").at(0);
  CHECK(rep.at("mechanism") == "second_opt");
  CHECK(rep.at("expected_value") == "6/1");
  const Json& runs = rep.at("runs");
  REQUIRE(runs.size() == 1);
  CHECK(runs.at(0).at("probability") == "1/1");
  CHECK(runs.at(0).at("chosen") == Json::array({0, 1}));
  CHECK(runs.at(0).at("payments") == Json::array({"3/1", "0/1"}));
  CHECK(rep.at("benchmarks").at("opt_second") == "4/1");
  CHECK(rep.at("benchmark_ratios").at("opt_second") == "3/2");
  CHECK(rep.at("benchmark_ratios").at("opt_alg") == "1/1");
}

TEST_CASE("run: repeated invocations are byte-identical") {
  std::string args = "run --instance " + i0_path().string() +
                     " --mech unibf_xos_nob --tapes enumerate";
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  Json doc = Json::parse(a.out);
  CHECK(doc.at("reports").at(0).at("runs").size() == 8);
  CHECK(doc.at("reports").at(0).at("expected_value") == "4/5");
}

TEST_CASE("run: seeded sampling is deterministic") {
  std::string args = "run --instance " + i0_path().string() +
                     " --mech bf_in_exp --tapes seed:42,count:16";
  CliResult a = run_cli(args);
  REQUIRE(a.code == 0);
  CliResult b = run_cli(args);
  CHECK(a.out == b.out);
  Json doc = Json::parse(a.out);
  CHECK(doc.at("reports").at(0).contains("mean_value"));
  CHECK(doc.at("reports").at(0).at("runs").size() == 16);
}

TEST_CASE("run: explicit tape file") {
  fs::path tape = work_dir() / "tape.json";
  std::ofstream(tape) << R"({"partition_bits": [1, 0], "sample_coin": "0/1"})";
  CliResult r = run_cli("run --instance " + i0_path().string() +
                        " --mech bf_in_exp --tapes file:" + tape.string());
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  const Json& run0 = doc.at("reports").at(0).at("runs").at(0);
  CHECK(run0.at("chosen") == Json::array({2}));
  CHECK(run0.at("payments") == Json::array({"0/1", "3/1"}));
}

TEST_CASE("run: input errors exit with code two") {
  CHECK(run_cli("run --instance " + i0_path().string() +
                " --mech no_such_mech")
            .code == 2);
  // additive-only mechanism on a submodular market: not applicable
  CHECK(run_cli("run --instance " + i0_path().string() +
                " --mech unibf_add_nob")
            .code == 2);
}

TEST_CASE("audit: passing and failing mechanisms") {
  CliResult ok = run_cli("audit --instance " + i0_path().string() +
                         " --mech unibf_xos_nob --mode universal");
  REQUIRE(ok.code == 0);
  Json doc = Json::parse(ok.out);
  CHECK(doc.at("reports").at(0).at("pass") == true);

  CliResult bad = run_cli("audit --instance " + replay_path().string() +
                          " --mech neg_emax_overbid");
  CHECK(bad.code == 1);
  Json bdoc = Json::parse(bad.out);
  const Json& rep = bdoc.at("reports").at(0);
  CHECK(rep.at("pass") == false);
  bool found_witness = false;
  for (const Json& c : rep.at("checks"))
    if (c.contains("counterexample")) found_witness = true;
  CHECK(found_witness);
}

TEST_CASE("suite command runs the lemma battery") {
  CliResult r = run_cli("suite --instance " + i0_path().string());
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc.at("command") == "suite");
  CHECK(doc.at("reports").at(0).at("pass") == true);
}

TEST_CASE("csv output is stable across instances") {
  fs::path second = write_instance(bfmd::testing::core_corpus()[0],
                                   "corpus0.json");
  CliResult r = run_cli("run --instance " + i0_path().string() +
                        " --instance " + second.string() +
                        " --mech second_opt --format csv"
                        " --benchmarks opt_alg");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "instance,mechanism,metric,value");
  int rows = 0;
  std::string line;
  std::vector<std::string> first_cols;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    first_cols.push_back(line.substr(0, line.find(',')));
  }
  CHECK(rows >= 4);  // expected_value + ratio/bench rows per instance
  CHECK(std::is_sorted(first_cols.begin(), first_cols.end()));

  CliResult again = run_cli("run --instance " + second.string() +
                            " --instance " + i0_path().string() +
                            " --mech second_opt --format csv"
                            " --benchmarks opt_alg");
  CHECK(again.out == r.out);  // order independent of argument order
}

TEST_CASE("out flag writes the report to a file") {
  fs::path dest = work_dir() / "report.json";
  CliResult r = run_cli("run --instance " + i0_path().string() +
                        " --mech second_opt --out " + dest.string());
  REQUIRE(r.code == 0);
  Json doc = Json::parse(slurp(dest));
  CHECK(doc.at("reports").at(0).at("expected_value") == "6/1");
}
