#include "doctest.h"

#include <string>

#include "inpkit/inpkit.h"
#include "json.hpp"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  inpkit_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("kb elements") {
  inpkit_kb_element *a = nullptr, *b = nullptr, *c = nullptr, *i = nullptr;
  REQUIRE(inpkit_kb_new("1", "2", &a) == INPKIT_OK);
  REQUIRE(inpkit_kb_new("3", "5", &b) == INPKIT_OK);
  REQUIRE(inpkit_kb_mul(a, b, &c) == INPKIT_OK);
  char* text = nullptr;
  REQUIRE(inpkit_kb_to_string(c, &text) == INPKIT_OK);
  CHECK(take(text) == "(4,3)");
  REQUIRE(inpkit_kb_inv(b, &i) == INPKIT_OK);
  REQUIRE(inpkit_kb_to_string(i, &text) == INPKIT_OK);
  CHECK(take(text) == "(-3,5)");
  int order = 0;
  REQUIRE(inpkit_kb_compare(a, b, &order) == INPKIT_OK);
  CHECK(order == -1);
  REQUIRE(inpkit_kb_compare(b, a, &order) == INPKIT_OK);
  CHECK(order == 1);
  REQUIRE(inpkit_kb_compare(a, a, &order) == INPKIT_OK);
  CHECK(order == 0);
  inpkit_kb_free(a);
  inpkit_kb_free(b);
  inpkit_kb_free(c);
  inpkit_kb_free(i);
  inpkit_kb_free(nullptr);

  inpkit_kb_element* big = nullptr;
  REQUIRE(inpkit_kb_new("123456789012345678901234567890", "-1", &big) == INPKIT_OK);
  REQUIRE(inpkit_kb_to_string(big, &text) == INPKIT_OK);
  CHECK(take(text) == "(123456789012345678901234567890,-1)");
  inpkit_kb_free(big);
}

TEST_CASE("errors") {
  inpkit_kb_element* a = nullptr;
  CHECK(inpkit_kb_new("1x", "2", &a) == INPKIT_E_PARSE);
  CHECK(a == nullptr);
  CHECK(std::string(inpkit_last_error()).find("1x") != std::string::npos);
  CHECK(inpkit_kb_new(nullptr, "2", &a) == INPKIT_E_NULL);
  inpkit_pattern* p = nullptr;
  CHECK(inpkit_pattern_kb_depth2(1, 2, &p) == INPKIT_E_ARGUMENT);
  CHECK(inpkit_pattern_free_chain(0, 2, &p) == INPKIT_E_ARGUMENT);
  inpkit_report* r = nullptr;
  CHECK(inpkit_run_demo("nope", nullptr, &r) == INPKIT_E_UNKNOWN_DEMO);
  inpkit_demo_options o;
  inpkit_demo_options_init(&o);
  o.cols = 0;
  CHECK(inpkit_run_demo("kb-pattern", &o, &r) == INPKIT_E_ARGUMENT);
  o.cols = -4;
  CHECK(inpkit_run_demo("kb-pattern", &o, &r) == INPKIT_E_ARGUMENT);
  CHECK(r == nullptr);
  CHECK(inpkit_verdict_get_kind(nullptr) == INPKIT_UNKNOWN);
  CHECK(inpkit_report_passed(nullptr) == 0);
}

TEST_CASE("patterns and verdicts") {
  inpkit_pattern* p = nullptr;
  REQUIRE(inpkit_pattern_kb_depth2(4, 4, &p) == INPKIT_OK);
  char* text = nullptr;
  REQUIRE(inpkit_pattern_to_json(p, &text) == INPKIT_OK);
  const auto pattern = nlohmann::json::parse(take(text));
  CHECK(pattern.at("depth") == 2);
  CHECK(pattern.at("rows").size() == 2);

  inpkit_verdict* v = nullptr;
  REQUIRE(inpkit_verify(p, 0, &v) == INPKIT_OK);
  CHECK(inpkit_verdict_get_kind(v) == INPKIT_VERIFIED);
  CHECK(inpkit_verdict_witness_count(v) == 16);
  REQUIRE(inpkit_verdict_to_json(v, &text) == INPKIT_OK);
  const auto verdict = nlohmann::json::parse(take(text));
  CHECK(verdict.at("verdict") == "Verified");
  CHECK(verdict.at("paths").size() == 16);
  inpkit_verdict_free(v);
  inpkit_pattern_free(p);

  REQUIRE(inpkit_pattern_free_chain(1, 3, &p) == INPKIT_OK);
  REQUIRE(inpkit_verify(p, 2, &v) == INPKIT_OK);
  CHECK(inpkit_verdict_get_kind(v) == INPKIT_VERIFIED);
  CHECK(inpkit_verdict_witness_count(v) == 9);
  inpkit_verdict_free(v);
  inpkit_pattern_free(p);
}

TEST_CASE("demos") {
  REQUIRE(inpkit_demo_count() == 7);
  CHECK(inpkit_demo_name(7) == nullptr);
  for (size_t i = 0; i < inpkit_demo_count(); ++i) {
    const std::string name = inpkit_demo_name(i);
    CAPTURE(name);
    inpkit_report* r = nullptr;
    REQUIRE(inpkit_run_demo(name.c_str(), nullptr, &r) == INPKIT_OK);
    CHECK(inpkit_report_passed(r) == 1);
    char* text = nullptr;
    REQUIRE(inpkit_report_emit(r, INPKIT_FORMAT_JSON, 0, &text) == INPKIT_OK);
    const auto doc = nlohmann::json::parse(take(text));
    CHECK(doc.at("scenario") == name);
    REQUIRE(inpkit_report_emit(r, INPKIT_FORMAT_TABLE, 1, &text) == INPKIT_OK);
    CHECK(take(text).find("status   : PASS") != std::string::npos);
    inpkit_report_free(r);
  }
  inpkit_demo_options o;
  inpkit_demo_options_init(&o);
  CHECK(o.seed == 1u);
  o.cols = 3;
  inpkit_report* r = nullptr;
  REQUIRE(inpkit_run_demo("kb-pattern", &o, &r) == INPKIT_OK);
  char* text = nullptr;
  REQUIRE(inpkit_report_emit(r, INPKIT_FORMAT_JSON, 0, &text) == INPKIT_OK);
  CHECK(nlohmann::json::parse(take(text)).at("inputs").at("n_cols") == 3);
  inpkit_report_free(r);
}
