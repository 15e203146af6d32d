#include "dmcalc/verify.hpp"
#include "helpers.hpp"

using namespace dmcalc;

// Quick pass over every property suite; the acceptance binary runs the full
// 100-trial configuration.
TEST_CASE("all property suites pass at reduced trial counts") {
  VerifyOptions opt;
  opt.trials = 25;
  for (const std::string& suite : suite_names()) {
    for (const RuleResult& r : run_suite(suite, opt)) {
      CAPTURE(suite);
      CAPTURE(r.id);
      CAPTURE(r.max_err);
      CAPTURE(r.note);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("verify results are reproducible for a fixed seed") {
  VerifyOptions opt;
  opt.trials = 10;
  opt.seed = 12345;
  const auto first = run_suite("OP", opt);
  const auto second = run_suite("OP", opt);
  REQUIRE(first.size() == second.size());
  for (size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].id == second[i].id);
    CHECK(first[i].max_err == second[i].max_err);
  }
}

TEST_CASE("unknown suites are rejected") {
  CHECK_THROWS_AS(run_suite("nope", VerifyOptions{}), InvalidInput);
}
