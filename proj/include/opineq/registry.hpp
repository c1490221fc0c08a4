#ifndef OPINEQ_REGISTRY_HPP
#define OPINEQ_REGISTRY_HPP

// Named checks runnable from the command line.

#include <functional>
#include <string>
#include <vector>

#include "opineq/checks.hpp"

namespace opineq {

struct CheckInfo {
  std::string id;
  std::string description;
  /// Passes only when a violation is found.
  bool expect_violation = false;
  std::function<InequalityReport(const ProbeConfig&, const CheckParams&)> run;
};

/// All checks in suite order.
const std::vector<CheckInfo>& registry();

/// nullptr for unknown ids. Accepts the alias "thm-MO" for "minkowski-sandwich".
const CheckInfo* find_check(const std::string& id);

/// Throws std::invalid_argument for unknown ids.
InequalityReport run_check(const std::string& id, const ProbeConfig& config, const CheckParams& params = {});

/// One line per check: "<id>  <description>".
std::string registry_listing();

}  // namespace opineq

#endif  // OPINEQ_REGISTRY_HPP
