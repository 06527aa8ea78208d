#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "nlohmann/json.hpp"
#include "subprocess.hpp"

using json = nlohmann::json;
using testsupport::run_cli;
using testsupport::run_command;

namespace {

json parse(const std::string& text) { return json::parse(text); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("analytic kplayer emits the closed form with a config echo") {
  const auto r = run_cli("analytic kplayer --k 4 --lambda 1");
  REQUIRE(r.exitCode == 0);
  const json doc = parse(r.output);
  CHECK(doc["schemaVersion"] == 1);
  CHECK(doc["command"] == "analytic");
  CHECK(doc["model"] == "kplayer");
  CHECK(doc["provenance"] == "analytic");
  CHECK(doc["config"]["k"] == 4);
  CHECK(doc["config"]["lambda"] == 1.0);
  CHECK(doc["results"]["meanWait"] == 1.5);
}

TEST_CASE("analytic reference values round-trip through the CLI") {
  auto r = run_cli("analytic minvar");
  REQUIRE(r.exitCode == 0);
  CHECK(std::abs(parse(r.output)["results"]["ratio"].get<double>() -
                 (2.0 * std::sqrt(33.0) - 11.0)) < 1e-15);

  r = run_cli("analytic twoqueue --l1 0.5 --l2 0.25");
  REQUIRE(r.exitCode == 0);
  auto doc = parse(r.output);
  CHECK(doc["results"]["meanIndividual"] == 3.0);
  CHECK(doc["results"]["meanTeam"] == 2.0);
  CHECK(doc["results"]["meanOverall"] == 2.5);
  CHECK(doc["results"]["variancePrinted"] == 5.25);

  r = run_cli("analytic centralvar --l1 1 --l2 0 --order lifo");
  REQUIRE(r.exitCode == 0);
  CHECK(parse(r.output)["results"]["variancePrinted"] == 1.75);

  r = run_cli("analytic sides --la 0.3 --lb 0.3 --lc 0.4");
  REQUIRE(r.exitCode == 0);
  doc = parse(r.output);
  CHECK(std::abs(doc["results"]["meanOverall"].get<double>() - 1.0431034482758623) <
        1e-12);
  CHECK(std::abs(doc["results"]["q"].get<double>() - 0.22857142857142862) < 1e-12);

  r = run_cli("analytic zones --la 0.5 --lb 0.5 --lc 0");
  REQUIRE(r.exitCode == 0);
  CHECK(std::abs(parse(r.output)["results"]["q"].get<double>() - 0.25) < 1e-14);

  r = run_cli("analytic qderiv --lb 0.4");
  REQUIRE(r.exitCode == 0);
  CHECK(std::abs(parse(r.output)["results"]["derivative"].get<double>() +
                 1.2222222222222223) < 1e-12);
}

TEST_CASE("exit codes distinguish the failure modes") {
  CHECK(run_cli("analytic sides --la 0.5 --lb 0.3 --lc 0.2").exitCode == 2);
  CHECK(run_cli("analytic central --l1 0 --l2 0.5").exitCode == 3);
  CHECK(run_cli("analytic qderiv --lb 0.6").exitCode == 1);
  CHECK(run_cli("analytic centralvar --l1 0.5 --l2 0.25 --order twoqueue").exitCode == 1);
  CHECK(run_cli("analytic kplayer --k 4").exitCode == 1);       // missing flag
  CHECK(run_cli("analytic nonsense").exitCode == 1);            // unknown model
  CHECK(run_cli("").exitCode == 1);                             // missing subcommand
  CHECK(run_cli("--help").exitCode == 0);
  CHECK(run_cli("simulate central --help").exitCode == 0);
}

TEST_CASE("simulate emits summaries, a full config echo, and is reproducible") {
  const std::string args =
      "simulate kplayer --k 4 --lambda 1 --arrivals 4000 --warmup 1000 "
      "--seed 11 --reps 4 --jobs 2";
  const auto r1 = run_cli(args);
  REQUIRE(r1.exitCode == 0);
  const json doc = parse(r1.output);
  CHECK(doc["command"] == "simulate");
  CHECK(doc["model"] == "kplayer");
  CHECK(doc["provenance"] == "simulation");
  CHECK(doc["config"]["arrivals"] == 4000);
  CHECK(doc["config"]["warmup"] == 1000);
  CHECK(doc["config"]["seed"] == 11);
  CHECK(doc["config"]["replications"] == 4);
  CHECK(doc["config"]["jobs"] == 2);
  CHECK(doc["config"]["trace"].is_null());
  CHECK(doc["results"]["stable"] == true);
  CHECK(doc["results"]["converged"] == true);
  CHECK(doc["results"]["censored"] == 0);
  const auto& cls = doc["results"]["classes"];
  REQUIRE(cls.size() == 1);
  CHECK(cls[0]["class"] == "all");
  CHECK(cls[0]["count"] == 16000);
  CHECK(std::abs(cls[0]["mean"].get<double>() - 1.5) < 0.1);
  CHECK(cls[0]["ciHalfWidth"].get<double>() > 0.0);

  const auto r2 = run_cli(args);
  CHECK(r1.output == r2.output);
}

TEST_CASE("simulate honors MATCHQ_JOBS only as a default") {
  const auto env = run_command(
      std::string("MATCHQ_JOBS=3 ") + MATCHQ_CLI_PATH +
      " simulate kplayer --k 2 --lambda 1 --arrivals 200 --warmup 100 --reps 3"
      " 2>/dev/null");
  REQUIRE(env.exitCode == 0);
  CHECK(parse(env.output)["config"]["jobs"] == 3);

  const auto flag = run_command(
      std::string("MATCHQ_JOBS=3 ") + MATCHQ_CLI_PATH +
      " simulate kplayer --k 2 --lambda 1 --arrivals 200 --warmup 100 --reps 3"
      " --jobs 2 2>/dev/null");
  REQUIRE(flag.exitCode == 0);
  CHECK(parse(flag.output)["config"]["jobs"] == 2);
}

TEST_CASE("simulate writes a trace CSV next to the summary") {
  const std::string path = "/tmp/matchq_test_trace.csv";
  std::remove(path.c_str());
  const auto r = run_cli(
      "simulate central --l1 0.5 --l2 0.25 --order fifo --arrivals 500 "
      "--warmup 100 --reps 2 --trace " + path);
  REQUIRE(r.exitCode == 0);
  CHECK(parse(r.output)["config"]["trace"] == path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "arrivalTime,class,matchTime,wait");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 500);
  std::remove(path.c_str());
}

TEST_CASE("unstable simulation reports rather than refuses") {
  const auto r = run_cli(
      "simulate sides --la 0.5 --lb 0.3 --lc 0.2 --arrivals 2000 --warmup 500 "
      "--reps 2");
  REQUIRE(r.exitCode == 0);
  const json doc = parse(r.output);
  CHECK(doc["results"]["stable"] == false);
  CHECK(doc["results"]["converged"] == false);
}

TEST_CASE("figure outputs are CSV with the expected headers") {
  auto r = run_cli("figure fig5 --step 0.25");
  REQUIRE(r.exitCode == 0);
  auto rows = lines_of(r.output);
  REQUIRE(!rows.empty());
  CHECK(rows[0] == "lambda1,lambda2,series,provenance,variance,flag");
  bool sawDegenerate = false;
  bool sawOracle = false;
  for (const auto& line : rows) {
    if (line.find("degenerate") != std::string::npos) sawDegenerate = true;
    if (line.find("oracleFIFO") != std::string::npos) sawOracle = true;
  }
  CHECK(sawDegenerate);  // the lambda1 = 0 corner cannot be tabulated
  CHECK(sawOracle);

  r = run_cli("figure fig8 --step 0.5");
  REQUIRE(r.exitCode == 0);
  rows = lines_of(r.output);
  CHECK(rows[0] == "lambdaA,lambdaB,lambdaC,provenance,meanA,meanB,meanC,meanOverall,flag");
  bool sawUnstable = false;
  for (const auto& line : rows) {
    if (line.find("unstable") != std::string::npos) sawUnstable = true;
  }
  CHECK(sawUnstable);

  r = run_cli("figure fig10 --step 0.5");
  REQUIRE(r.exitCode == 0);
  rows = lines_of(r.output);
  CHECK(rows[0] == "lambdaA,lambdaC,lambdaB,provenance,q,flag");
  bool sawLandmark = false;
  for (const auto& line : rows) {
    if (line.rfind("0.5,0,0.5,", 0) == 0 &&
        line.find(",0.25,") != std::string::npos) {
      sawLandmark = true;
    }
  }
  CHECK(sawLandmark);

  r = run_cli("figure fig11 --step 0.5");
  REQUIRE(r.exitCode == 0);
  rows = lines_of(r.output);
  CHECK(rows[0] == "lambdaA,lambdaB,lambdaC,provenance,meanOverall,flag");

  r = run_cli("figure fig6 --n 2000 --seed 5");
  REQUIRE(r.exitCode == 0);
  rows = lines_of(r.output);
  REQUIRE(rows.size() > 2);
  CHECK(rows[0].rfind("#", 0) == 0);
  CHECK(rows[1] == "lambda1,binLow,binHigh,count,density,referenceDensity");
}

TEST_CASE("figure --out writes the same CSV to a file") {
  const std::string path = "/tmp/matchq_test_fig10.csv";
  std::remove(path.c_str());
  const auto direct = run_cli("figure fig10 --step 0.5");
  const auto filed = run_cli("figure fig10 --step 0.5 --out " + path);
  REQUIRE(filed.exitCode == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == direct.output);
  std::remove(path.c_str());
}

TEST_CASE("audit prints the gap table and a readable summary") {
  const auto csv = run_cli("audit");
  REQUIRE(csv.exitCode == 0);
  const auto rows = lines_of(csv.output);
  REQUIRE(!rows.empty());
  CHECK(rows[0] ==
        "lambda1,lambda2,order,printedVariance,oracleVariance,absGap,relGap,"
        "oracleMean,flag");
  bool sawLitmus = false;
  for (const auto& line : rows) {
    if (line.find("litmus") != std::string::npos) sawLitmus = true;
  }
  CHECK(sawLitmus);

  const auto merged = run_cli("audit", /*mergeStderr=*/true);
  REQUIRE(merged.exitCode == 0);
  CHECK(merged.output.find("printed") != std::string::npos);
}
