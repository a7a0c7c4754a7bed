#include "doctest.h"

#include "qeq/catalog.hpp"
#include "qeq/io.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <string>

using namespace qeq;
using json = nlohmann::json;

TEST_CASE("every catalog instance round trips through the schema") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const ProblemInstance inst = catalog_get(name);
    const std::string text = io::serialize_instance(inst);
    const ProblemInstance back = io::parse_instance(text);
    CHECK(io::serialize_instance(back) == text);  // serialize is idempotent
    CHECK(io::instance_hash(back) == io::instance_hash(inst));
    CHECK(back.name == inst.name);
    CHECK(back.kind == inst.kind);
    CHECK(back.n == inst.n);
  }
}

TEST_CASE("catalog names are unique and resolvable") {
  const auto names = catalog_names();
  CHECK(names.size() == 21);
  for (const auto& name : names) {
    CHECK(catalog_get(name).name == name);
    CHECK_FALSE(catalog_description(name).empty());
  }
  CHECK_THROWS_AS(catalog_get("nonesuch"), UnknownName);
}

TEST_CASE("instances load from files") {
  const ProblemInstance e2 = catalog_get("e2-even");
  const std::string path = "unit_io_instance.json";
  {
    std::ofstream out(path, std::ios::binary);
    out << io::serialize_instance(e2);
  }
  const ProblemInstance back = io::load_instance_file(path);
  CHECK(io::instance_hash(back) == io::instance_hash(e2));
  std::remove(path.c_str());
}

TEST_CASE("schema violations are rejected with context") {
  CHECK_THROWS_AS(io::parse_instance("{"), SchemaError);
  CHECK_THROWS_AS(io::parse_instance("[]"), SchemaError);
  CHECK_THROWS_AS(io::parse_instance("{\"schema_version\": 2}"), SchemaError);

  json j = json::parse(io::serialize_instance(catalog_get("e2-even")));
  json extra = j;
  extra["surprise"] = 1;
  CHECK_THROWS_AS(io::parse_instance(extra.dump()), SchemaError);

  json nokind = j;
  nokind.erase("kind");
  CHECK_THROWS_AS(io::parse_instance(nokind.dump()), SchemaError);

  json badkind = j;
  badkind["kind"] = "mystery";
  CHECK_THROWS(io::parse_instance(badkind.dump()));
}

TEST_CASE("infinite box bounds survive the trip as strings") {
  const ProblemInstance tz = catalog_get("tz-counterexample");
  const std::string text = io::serialize_instance(tz);
  CHECK(text.find("\"inf\"") != std::string::npos);
  const ProblemInstance back = io::parse_instance(text);
  const auto v = back.K.evaluate(Vec::Zero(1));
  CHECK(value_contains(v, Vec::Constant(1, 1e9)));  // upper bound stayed infinite
  CHECK_FALSE(value_contains(v, Vec::Constant(1, 0.5)));
}

TEST_CASE("canonical serialization is sorted and newline terminated") {
  const std::string text = io::serialize_instance(catalog_get("e3-moving"));
  CHECK(text.back() == '\n');
  const json j = json::parse(text);
  CHECK(j.at("schema_version").get<int>() == 1);
  // Canonical dump of the parsed document reproduces the bytes.
  CHECK(j.dump(2) + "\n" == text);
}

TEST_CASE("report envelopes carry the fixed fields and no timestamps") {
  const ProblemInstance e3 = catalog_get("e3-moving");
  const auto rep = solver::solve(e3, solver::TheoremVariant::case2, std::nullopt,
                                 0.01, 1e-6, 7);
  const std::string text = io::solve_report_json(e3, 7, rep, nullptr);
  const json j = json::parse(text);
  CHECK(j.at("schema_version").get<int>() == 1);
  CHECK(j.at("tool_version").get<std::string>() == std::string(kToolVersion));
  CHECK(j.at("command") == "solve");
  CHECK(j.at("instance") == "e3-moving");
  CHECK(j.at("seed") == 7);
  CHECK(j.at("input_hash") == io::instance_hash(e3));
  CHECK(text.find("time") == std::string::npos);
  const json& r = j.at("report");
  CHECK(r.at("mode") == "case2");
  CHECK(r.at("rho").get<double>() == doctest::Approx(2.0));
  CHECK(r.at("solutions").size() == 1);
  CHECK(r.at("lifts").at(0).at("status") == "certified_by_theorem");
}

TEST_CASE("verify report echoes the property and verdict") {
  const ProblemInstance e2 = catalog_get("e2-even");
  const auto verdict =
      properties::check_pseudo_monotone(e2.f, e2.C, 1000, 3);
  const json j = json::parse(
      io::verify_report_json(e2, 3, "pseudo-monotone", 1000, verdict));
  CHECK(j.at("command") == "verify");
  CHECK(j.at("property") == "pseudo-monotone");
  CHECK(j.at("budget") == 1000);
  CHECK(j.at("verdict").at("pass") == true);
}

TEST_CASE("instance hashes separate the catalog") {
  std::string last;
  for (const auto& name : catalog_names()) {
    const std::string h = io::instance_hash(catalog_get(name));
    CHECK(h.size() == 16);
    CHECK(h != last);
    last = h;
  }
}
