#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace xrt::cli {

struct SelftestReport {
  int suites_passed = 0;
  int suites_total = 0;
  bool oracle_ok = false;
  std::vector<std::string> failures;

  bool ok() const noexcept { return suites_passed == suites_total && oracle_ok; }
  /// "5/5 golden suites, oracle sweep OK" or the FAILED variant.
  std::string summary() const;
};

/// Golden suites (parallel2d, fan, parallel3d, cone, helical) plus a reduced random oracle sweep.
/// `inject_fault` names a suite whose computed row is perturbed before
/// checking; it exists so the harness itself can be tested.
SelftestReport run_selftest(std::string_view inject_fault = {});

}  // namespace xrt::cli
