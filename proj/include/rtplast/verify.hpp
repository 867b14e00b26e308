#pragma once

//! \file verify.hpp
//! \brief Property suites run by `rtplast verify` and the acceptance binary.
//! Every threshold is fixed here; suites report measured vs threshold for
//! each check.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rtp {

struct Check {
  enum class Relation { AtMost, AtLeast, Holds };

  std::string name;
  Relation relation = Relation::Holds;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  std::string error;  // non-empty when the suite aborted with an exception

  bool passed() const;
};

//! Suite names accepted by run_suites, excluding "all".
const std::vector<std::string>& suite_names();

//! Runs one suite, or every suite for "all". Throws std::invalid_argument on
//! an unknown name.
std::vector<SuiteReport> run_suites(std::string_view name, std::uint64_t seed = 0);

//! Human-readable report lines, one per check.
std::string format_report(const SuiteReport& report);

}  // namespace rtp
