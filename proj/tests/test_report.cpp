#include "doctest.h"

#include "inpkit/report.hpp"

using namespace inpkit::report;

namespace {

std::size_t count_lines_starting(const std::string& text, const std::string& prefix) {
  std::size_t count = 0, pos = 0;
  while (pos < text.size()) {
    const auto end = text.find('\n', pos);
    if (text.compare(pos, prefix.size(), prefix) == 0) ++count;
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return count;
}

}  // namespace

TEST_CASE("every demo runs and passes with defaults") {
  REQUIRE(demo_names().size() == 7);
  for (const auto& name : demo_names()) {
    CAPTURE(name);
    const Report r = run_demo(name, {});
    CHECK(r.scenario == name);
    CHECK(r.anchor == anchor_registry().at(name));
    CHECK(r.passed());
    CHECK_FALSE(r.checks.empty());
  }
}

TEST_CASE("demo options") {
  CHECK_THROWS_AS(run_demo("no-such-demo", {}), UnknownDemo);
  DemoOptions bad;
  bad.cols = 0;
  CHECK_THROWS_AS(run_demo("kb-pattern", bad), InvalidOption);
  bad.cols = 1;
  CHECK_THROWS_AS(run_demo("kb-pattern", bad), InvalidOption);
  DemoOptions depth;
  depth.depth = 1;
  CHECK_THROWS_AS(run_demo("free-chain", depth), InvalidOption);

  DemoOptions chain;
  chain.depth = 3;
  chain.cols = 3;
  const Report r = run_demo("free-chain", chain);
  CHECK(r.result == "Verified");
  CHECK(r.witnesses.rows.size() == 27);
}

TEST_CASE("kb-pattern table lists one row per path") {
  const Report r = run_demo("kb-pattern", {});
  CHECK(r.result == "Verified");
  REQUIRE(r.witnesses.columns == std::vector<std::string>{"eta", "witness", "checks"});
  CHECK(r.witnesses.rows.size() == 64);
  const std::string table = emit(r, Format::Table);
  CHECK(count_lines_starting(table, "  (") == 64);
  CHECK(table.find("status   : PASS") != std::string::npos);
  CHECK(table.find("elapsed") == std::string::npos);
  CHECK(emit(r, Format::Table, true).find("elapsed") != std::string::npos);
}

TEST_CASE("empty witness tables are marked") {
  Report r;
  r.scenario = "empty";
  r.checks.push_back({"trivial", true, ""});
  const std::string table = emit(r, Format::Table);
  CHECK(table.find("witnesses: (no witnesses)") != std::string::npos);
  CHECK(table.find("certificates: (none)") != std::string::npos);
  Report none;
  CHECK_FALSE(none.passed());
}

TEST_CASE("json output is deterministic and round-trips") {
  for (const auto& name : demo_names()) {
    CAPTURE(name);
    const Report a = run_demo(name, {});
    const Report b = run_demo(name, {});
    const std::string ja = emit(a, Format::Json), jb = emit(b, Format::Json);
    CHECK(ja == jb);
    const auto doc = nlohmann::json::parse(ja);
    CHECK(doc.at("schema") == kSchemaVersion);
    CHECK(doc.at("passed") == true);
    CHECK_FALSE(doc.contains("elapsed_ms"));
    CHECK(emit(from_json(doc), Format::Json) == ja);
    CHECK(emit(from_json(doc), Format::Table) == emit(a, Format::Table));
  }
  const auto timed = to_json(run_demo("index-pairs", {}), true);
  CHECK(timed.contains("elapsed_ms"));
  CHECK(from_json(timed).elapsed_ms == timed.at("elapsed_ms").get<double>());
  auto wrong = timed;
  wrong["schema"] = "other/9";
  CHECK_THROWS_AS(from_json(wrong), std::invalid_argument);
}

TEST_CASE("seeds change samples but not verdicts") {
  DemoOptions one, two;
  two.seed = 2;
  const Report a = run_demo("presburger-iso", one), b = run_demo("presburger-iso", two);
  CHECK(a.passed());
  CHECK(b.passed());
  CHECK(a.witnesses.rows != b.witnesses.rows);
}

TEST_CASE("plaut-hull certificates") {
  const Report r = run_demo("plaut-hull", {});
  REQUIRE(r.certificates.contains("g_squared_not_in_hull"));
  const auto& cert = r.certificates.at("g_squared_not_in_hull");
  CHECK(cert.at("orbit").at("fixed_point") == "3");
  CHECK(cert.at("g_at_first_point") == "4");
  CHECK(cert.at("orbit").at("samples").size() == 101);
}
