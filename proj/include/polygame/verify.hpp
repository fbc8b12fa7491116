#ifndef POLYGAME_VERIFY_HPP
#define POLYGAME_VERIFY_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace polygame {

// One verification check: the measured margin against its limit.
struct CheckResult {
  std::string id;
  bool pass = false;
  double measured = 0.0;
  std::string constraint;  // e.g. "<= 1e-06"
  std::string detail;
};

// Suites: "regularizers", "conservation", "dissipation", "equivalence",
// or "all".  Unknown names throw ConfigError listing the options.
std::vector<std::string> verify_suite_names();

std::vector<CheckResult> run_verify_suite(const std::string& suite);

// Every check id, in execution order of "all"; used to pin the registry.
std::vector<std::string> verify_registry();

// Prints one pass/fail line per check; returns true iff all pass.
bool print_check_results(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace polygame

#endif  // POLYGAME_VERIFY_HPP
