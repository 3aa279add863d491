// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "polcheck/polcheck.h"

namespace {

struct Text {
  char* p = nullptr;
  ~Text() { pc_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Report {
  pc_report* p = nullptr;
  ~Report() { pc_report_free(p); }
};

const char* kCut = "atom P positive; command [k : P] < x | k >;";

}  // namespace

TEST_CASE("metadata") {
  CHECK(std::string(pc_version()) == "0.1.0");
  CHECK(std::string(pc_status_name(PC_EPRESET)) == "preset-mismatch");
  CHECK(std::string(pc_default_preset("lnl")) == "lnl-full");
  CHECK(std::string(pc_default_preset("cdb")) == "cartesian");
  CHECK(pc_default_preset("nope") == nullptr);
  CHECK(pc_default_preset(nullptr) == nullptr);
}

TEST_CASE("check") {
  Report r;
  REQUIRE(pc_check_source(kCut, "pol", nullptr, 0, &r.p) == PC_OK);
  CHECK(pc_report_exit_code(r.p) == 0);
  CHECK(pc_report_query_count(r.p) == 1);
  CHECK(std::string(pc_report_text(r.p)).find("[x : P]") != std::string::npos);
  CHECK(std::string(pc_report_json(r.p)).find("\"status\": \"ok\"") != std::string::npos);

  Report bad;
  REQUIRE(pc_check_source("atom P positive; expr [] () : P;", "pol", nullptr, 0, &bad.p) == PC_OK);
  CHECK(pc_report_exit_code(bad.p) == 1);

  // Parse failures are part of the report.
  Report unparsable;
  REQUIRE(pc_check_source("expr [] (", "pol", nullptr, 0, &unparsable.p) == PC_OK);
  CHECK(pc_report_exit_code(unparsable.p) == 2);
}

TEST_CASE("argument errors") {
  pc_report* r = nullptr;
  CHECK(pc_check_source(nullptr, "pol", nullptr, 0, &r) == PC_EINVAL);
  CHECK(pc_check_source(kCut, "nope", nullptr, 0, &r) == PC_EINVAL);
  CHECK(std::string(pc_last_error()).find("nope") != std::string::npos);
  CHECK(pc_check_source(kCut, "pol", "bogus", 0, &r) == PC_EINVAL);
  CHECK(pc_check_source(kCut, "stlc", "lnl-full", 0, &r) == PC_EPRESET);
  CHECK(r == nullptr);

  Text t;
  CHECK(pc_elaborate_source(kCut, nullptr, "linear", &t.p) == PC_EINVAL);
  CHECK(pc_oracle_run("pol", nullptr, -1, 1, 1, &t.p, nullptr) == PC_EINVAL);
  CHECK(pc_generate_corpus("pol", nullptr, "lambda-check", 1, 4, 1, 0, 0, &t.p) == PC_EINVAL);
  CHECK(pc_generate_corpus("pol", nullptr, "command", 1, 4, 1, 1.5, 0, &t.p) == PC_EINVAL);
  CHECK(t.p == nullptr);
}

TEST_CASE("elaborate and dualize") {
  Text tree;
  REQUIRE(pc_elaborate_source(kCut, nullptr, nullptr, &tree.p) == PC_OK);
  CHECK(tree.str().find("cut") != std::string::npos);

  Text dual;
  REQUIRE(pc_dualize_source(kCut, &dual.p) == PC_OK);
  CHECK(dual.str().find("atom P negative;") != std::string::npos);

  Text none;
  CHECK(pc_dualize_source("command [", &none.p) == PC_EPARSE);
  CHECK(std::string(pc_last_error()).find("1:") == 0);
}

TEST_CASE("oracle and generator") {
  Text report;
  int mismatches = -1;
  REQUIRE(pc_oracle_run("pos", nullptr, 6, 3, 50, &report.p, &mismatches) == PC_OK);
  CHECK(mismatches == 0);
  CHECK(report.str().find("status: agree") != std::string::npos);

  Text a, b;
  REQUIRE(pc_generate_corpus("neg", nullptr, "command", 5, 6, 10, 0.2, 0, &a.p) == PC_OK);
  REQUIRE(pc_generate_corpus("neg", nullptr, "command", 5, 6, 10, 0.2, 0, &b.p) == PC_OK);
  CHECK(a.str() == b.str());

  Report r;
  REQUIRE(pc_check_source(a.p, "neg", nullptr, 0, &r.p) == PC_OK);
  CHECK(pc_report_query_count(r.p) == 10);
}
