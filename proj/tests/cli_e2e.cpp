#include "doctest.h"

#include "qeq/catalog.hpp"
#include "qeq/io.hpp"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + QEQ_CLI_PATH " " + args +
                          " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("catalog lists every builtin instance") {
  const RunResult r = run("catalog");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("command") == "catalog");
  REQUIRE(j.at("instances").size() == qeq::catalog_names().size());
  CHECK(j.at("instances").at(0).at("name") == "tz-counterexample");
}

TEST_CASE("solve exit codes follow the outcome") {
  CHECK(run("solve e2-even").exit_code == 0);            // solutions found
  CHECK(run("solve no-fixed-point").exit_code == 2);     // clean empty
  CHECK(run("solve f-one --variant case1").exit_code == 3);  // hypotheses refuted
  CHECK(run("solve nonesuch").exit_code == 1);           // unknown instance
  CHECK(run("solve e2-even --variant bogus").exit_code == 1);
}

TEST_CASE("solve reports the expected solution set") {
  const RunResult r = run("solve e3-moving --seed 7");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  const auto& sols = j.at("report").at("solutions");
  REQUIRE(sols.size() == 1);
  CHECK(sols.at(0).at(0).get<double>() == doctest::Approx(1.0));
  CHECK(j.at("report").at("radius_found") == true);
  CHECK(j.at("report").at("rho").get<double>() == doctest::Approx(2.0));
}

TEST_CASE("verify exit codes and witness payloads") {
  CHECK(run("verify e2-even --property pseudo-monotone").exit_code == 0);
  CHECK(run("verify e2-even --property made-up").exit_code == 1);
  const RunResult fail = run("verify f-one --property properly-quasi-monotone");
  CHECK(fail.exit_code == 3);
  const json j = json::parse(fail.out);
  CHECK(j.at("verdict").at("pass") == false);
  CHECK(j.at("verdict").contains("witness"));
}

TEST_CASE("coercivity searches when no radius is given") {
  const RunResult r = run("coercivity e3-moving --search");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("search").at("rho").get<double>() == doctest::Approx(2.0));
  CHECK(run("coercivity empty-values --search").exit_code == 3);
  CHECK(run("coercivity far-violation --rho 1").exit_code == 3);
  CHECK(run("coercivity tz-counterexample --rho 2").exit_code == 0);
}

TEST_CASE("oracle enumerates the even solution") {
  const RunResult r = run("oracle e2-even");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  const auto& sols = j.at("solutions");
  REQUIRE(sols.size() == 1);
  CHECK(sols.at(0).at(0).get<double>() == doctest::Approx(0.0));
}

TEST_CASE("instances load from files exactly like catalog entries") {
  const std::string path = "cli_e2e_instance.json";
  {
    std::ofstream out(path, std::ios::binary);
    out << qeq::io::serialize_instance(qeq::catalog_get("e2-even"));
  }
  const RunResult by_file = run("solve " + path + " --seed 3");
  const RunResult by_name = run("solve e2-even --seed 3");
  CHECK(by_file.exit_code == 0);
  CHECK(by_file.out == by_name.out);
  std::remove(path.c_str());
}

TEST_CASE("malformed instance files exit with a usage error") {
  const std::string path = "cli_e2e_broken.json";
  {
    std::ofstream out(path, std::ios::binary);
    out << "{ not json";
  }
  CHECK(run("solve " + path).exit_code == 1);
  std::remove(path.c_str());
}

TEST_CASE("repeated runs are byte identical") {
  const char* cmds[] = {
      "solve e3-moving --seed 7",
      "verify e2-even --property properly-quasi-monotone --seed 7",
      "coercivity tz-counterexample --tz --seed 7",
      "oracle e4-qvi --seed 7",
      "catalog",
  };
  for (const char* cmd : cmds) {
    CAPTURE(cmd);
    const RunResult a = run(cmd);
    const RunResult b = run(cmd);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("seed precedence runs env over preset and flag over env") {
  const RunResult flag = run("verify e2-even --property quasi-monotone --seed 9");
  const RunResult env = run("verify e2-even --property quasi-monotone", "QEQ_SEED=9");
  REQUIRE(flag.exit_code == 0);
  CHECK(flag.out == env.out);
  const json j = json::parse(flag.out);
  CHECK(j.at("seed") == 9);
}

TEST_CASE("reports write to a file when asked") {
  const std::string path = "cli_e2e_report.json";
  const RunResult r = run("solve e2-even --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());  // the report went to the file instead
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(json::parse(text).at("command") == "solve");
  std::remove(path.c_str());
}

TEST_CASE("gnep solve validates through the command line") {
  const RunResult r = run("solve e5-gnep --seed 7");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  const auto& sols = j.at("report").at("solutions");
  REQUIRE(sols.size() == 1);
  CHECK(std::abs(sols.at(0).at(0).get<double>()) <= 0.05 + 1e-9);
  CHECK(std::abs(sols.at(0).at(1).get<double>()) <= 0.05 + 1e-9);
  REQUIRE(j.contains("validations"));
  CHECK(j.at("validations").at(0).at("ok") == true);
}
