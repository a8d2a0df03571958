#pragma once

#include <string>
#include <vector>

namespace hymlab::accept {

// One measured inequality with its pinned tolerance.  `at_least` selects the
// direction: pass iff measured >= threshold instead of measured <= threshold.
struct Check {
  std::string id;
  double measured = 0.0;
  double threshold = 0.0;
  bool at_least = false;
  bool pass = false;
};

// Outcome of one published criterion (1-based position in the criteria list).
struct SuiteResult {
  int index = 0;
  std::string name;
  std::vector<Check> checks;

  bool pass() const;
};

// Registered suite names in criterion order.
const std::vector<std::string>& suite_names();

// Runs one suite; throws ValidationError for unknown names.
SuiteResult run_suite(const std::string& name);

// Runs every suite in criterion order.  Heavy reference runs are cached and
// shared across suites within the process.
std::vector<SuiteResult> run_all();

}  // namespace hymlab::accept
