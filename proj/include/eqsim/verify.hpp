#pragma once

// Self-check of the simulator's structural invariants, run by `eqsim verify`.

#include "eqsim/optics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace eqsim {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 20140901;
  int random_cases = 200;
  /// Corrupts the PPBS reflected-port sign; used to exercise failure reporting.
  optics::PpbsSign ppbs_sign = optics::PpbsSign::ReflectedMinus;
};

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& options = {});

}  // namespace eqsim
