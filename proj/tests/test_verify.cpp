#include "eqsim/verify.hpp"

#include <doctest.h>

#include <algorithm>

using namespace eqsim;

TEST_SUITE("verify") {

TEST_CASE("all invariants hold on the default configuration") {
  const auto results = run_invariant_suite();
  CHECK(results.size() >= 10);
  for (const auto& r : results) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("a PPBS sign fault is detected by the optics checks only") {
  VerifyOptions opts;
  opts.ppbs_sign = optics::PpbsSign::Unsigned;
  for (const auto& r : run_invariant_suite(opts)) {
    const bool optical = r.name == "sign-table" || r.name == "success-probability" || r.name == "optics-concurrence" ||
                         r.name == "optics-unitarity";
    INFO(r.name);
    CHECK(r.passed == !optical);
  }
}

}
