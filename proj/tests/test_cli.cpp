#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "boolcx/cli/commands.hpp"
#include "boolcx/errors.hpp"
#include "boolcx/zoo.hpp"
#include "doctest.h"

using namespace boolcx;
using namespace boolcx::cli;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "boolcx_test_cli";
  fs::create_directories(dir);
  return dir;
}

// Runs the command-line tool and returns its exit status.
int run_tool(const std::string& args, const fs::path& output) {
  const std::string command = std::string(BOOLCX_TOOL) + " " + args + " > " + output.string() + " 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

BooleanFunction tampered_maj3() {
  BooleanFunction f = zoo::majority(3);
  f.set(0b111, false);
  return f;
}

const nlohmann::ordered_json& row_for(const Report& report, const std::string& key, const std::string& value) {
  const auto it = std::find_if(report.rows.begin(), report.rows.end(),
                               [&](const auto& row) { return row.at(key) == value; });
  REQUIRE(it != report.rows.end());
  return *it;
}

}  // namespace

TEST_CASE("function expressions parse to canonical text and arity") {
  const auto composed = FunctionSpec::parse("compose( MAJ(3), and(2) )");
  CHECK(composed.to_string() == "compose(MAJ(3),AND(2))");
  CHECK(composed.arity() == 6);
  CHECK(FunctionSpec::parse("iter(MAJ(3),2)").arity() == 9);
  CHECK(FunctionSpec::parse("xor(G4,PAR(2))").arity() == 6);
  CHECK(FunctionSpec::parse("TRIBES(2,2)").build() == zoo::tribes(2, 2));
  CHECK(FunctionSpec::parse("perc:grid(1)").arity() == 7);
  CHECK(FunctionSpec::parse(FunctionSpec::parse("xor(iter(MAJ(3),2),PAR(1))").to_string()).arity() == 10);
  CHECK_THROWS(FunctionSpec::parse("MAJ(3"));
  CHECK_THROWS(FunctionSpec::parse("compose(MAJ(3))"));
  CHECK_THROWS(FunctionSpec::parse("xor(MAJ(3),AND(2))"));
  CHECK_THROWS(FunctionSpec::parse("MAJ(3) extra"));
  CHECK_THROWS_AS((void)FunctionSpec::parse("AND(30)").build(24), CapExceeded);
}

TEST_CASE("exact numbers round trip through num/den text") {
  for (const char* text : {"0/1", "5/1", "-3/7", "22/9", "123456789012345678901/4"}) {
    CHECK(exact(parse_exact(text)) == text);
  }
  CHECK(exact(parse_exact("0.25")) == "1/4");
  CHECK(exact(parse_exact("-1.5")) == "-3/2");
  CHECK(exact(parse_exact("0.0625")) == "1/16");
  CHECK(exact(parse_exact("010")) == "10/1");
  CHECK(exact(parse_exact(" 2 ")) == "2/1");
  CHECK(exact(Rational(6, 4)) == "3/2");
  CHECK_THROWS_AS(parse_exact("1/0"), UsageError);
  CHECK_THROWS_AS(parse_exact("0.2.5"), UsageError);
  CHECK_THROWS_AS(parse_exact("half"), UsageError);
}

TEST_CASE("reports serialize to JSON and CSV") {
  Report report;
  report.command = "demo";
  report.columns = {"name", "value"};
  report.meta["p"] = "1/2";
  report.add_row({{"name", "plain"}, {"value", "3/2"}, {"extra", 1}});
  report.add_row({{"name", "needs, \"quotes\""}, {"value", nullptr}});
  report.summary["rows"] = 2;

  const auto doc = nlohmann::json::parse(report.to_json());
  CHECK(doc.at("schema") == kReportSchema);
  CHECK(doc.at("command") == "demo");
  CHECK(doc.at("rows").size() == 2);
  CHECK(doc.at("rows")[0].at("extra") == 1);
  CHECK(doc.at("exit_code") == 0);
  CHECK(report.to_csv() == "name,value\nplain,3/2\n\"needs, \"\"quotes\"\"\",\n");
}

TEST_CASE("config files set caps and defaults") {
  const Config config = Config::parse(R"({"p": "1/3", "seed": 9, "shards": 2, "caps": {"subcube": 4}})");
  CHECK(config.p == Rational(1, 3));
  CHECK(config.seed == 9);
  CHECK(config.shards == 2);
  CHECK(config.caps.subcube == 4);
  CHECK(config.caps.dtree == EngineCaps{}.dtree);
  EngineCaps caps;
  caps.set_all(5);
  CHECK(caps.truth_table == 5);
  CHECK(caps.localwit == 5);
  CHECK_THROWS(Config::parse(R"({"caps": {"bogus": 1}})"));
}

TEST_CASE("measure on the constant zero table gives zero everywhere") {
  const fs::path path = scratch_dir() / "const0.tt";
  write_truth_table(path.string(), BooleanFunction::constant(3, false));
  MeasureRequest request{"tt:" + path.string(), Rational(1, 3), {}};
  const Report report = cmd_measure(request);
  CHECK(report.rows.size() == measure_keys().size());
  for (const auto& row : report.rows) {
    CHECK(row.at("status") == "ok");
    CHECK(row.at("value") == "0/1");
  }
}

TEST_CASE("measures over an engine cap are skipped, not fatal") {
  Config config;
  config.caps.subcube = 3;
  config.caps.localwit = 3;
  const Report report = cmd_measure({"AND(4)", std::nullopt, {"s", "sc", "l", "a"}}, config);
  CHECK(row_for(report, "measure", "s").at("status") == "ok");
  CHECK(row_for(report, "measure", "s").at("value") == "1/2");
  CHECK(row_for(report, "measure", "sc").at("status") == "skipped");
  CHECK(row_for(report, "measure", "l").at("status") == "skipped");
  CHECK(row_for(report, "measure", "a").at("value") == "15/8");
  CHECK(report.summary.at("skipped") == 2);
  CHECK_THROWS_AS(cmd_measure({"AND(4)", std::nullopt, {"bogus"}}), UsageError);
}

TEST_CASE("the manifest count matches the table") {
  const auto ids = manifest_row_ids();
  CHECK(ids.size() == static_cast<std::size_t>(kManifestRowCount));
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
}

TEST_CASE("a tampered zoo table makes reproduce fail") {
  ReproduceOptions clean{{}, "maj3"};
  const Report baseline = cmd_reproduce(clean);
  CHECK(baseline.exit_code == kExitOk);
  CHECK(baseline.summary.at("failed") == 0);

  ReproduceOptions tampered{{{"MAJ(3)", tampered_maj3()}}, "maj3"};
  const Report broken = cmd_reproduce(tampered);
  CHECK(broken.exit_code == kExitRegression);
  CHECK(broken.summary.at("failed").get<int>() > 0);
}

TEST_CASE("percolation estimates do not depend on the shard count") {
  const auto run = [](unsigned shards) {
    PercRequest request;
    request.m = 3;
    request.quantities = {"crossing", "s", "w"};
    request.samples = 4000;
    request.seed = 17;
    request.shards = shards;
    Report report = cmd_percolation(request);
    report.meta.erase("elapsed_seconds");
    report.meta.erase("shards");
    return report.to_json();
  };
  CHECK(run(1) == run(4));
}

TEST_CASE("percolation on the one-by-one grid is exact") {
  PercRequest request;
  request.m = 1;
  request.quantities = {"crossing", "s"};
  const Report report = cmd_percolation(request);
  CHECK(report.meta.at("mode") == "exact");
  CHECK(row_for(report, "quantity", "crossing").at("value") == "1/2");
  PercRequest both = request;
  both.file = "unused.json";
  CHECK_THROWS_AS(cmd_percolation(both), UsageError);
}

TEST_CASE("the tool reports regressions, usage errors and caps through its exit code") {
  const fs::path dir = scratch_dir();
  const fs::path table = dir / "maj3_tampered.tt";
  write_truth_table(table.string(), tampered_maj3());
  const fs::path out = dir / "out.txt";

  CHECK(run_tool("reproduce --filter maj3 --format csv", out) == kExitOk);
  CHECK(run_tool("--override 'MAJ(3)=" + table.string() + "' reproduce --filter maj3", out) == kExitRegression);
  CHECK(run_tool("measure 'MAJ(3)' --measures nope", out) == kExitUsage);
  CHECK(run_tool("frobnicate", out) == kExitUsage);
  CHECK(run_tool("--cap 3 measure 'AND(4)' --measures s", out) == kExitCap);

  CHECK(run_tool("measure 'MAJ(3)' --measures s,w --format csv", out) == kExitOk);
  std::ifstream in(out);
  const std::string csv((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(csv.find("s,3/2,ok") != std::string::npos);
  CHECK(csv.find("w,2/1,ok") != std::string::npos);
}
