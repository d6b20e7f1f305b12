#pragma once

#include "rsl/oracle.hpp"
#include "rsl/policy.hpp"

namespace rsl {

/// Gap report between the value-iteration oracle and the closed forms.
struct CompareReport {
  double value_gap = 0;     ///< max_i |W(grid[i]) - value[i]|
  double policy_gap = 0;    ///< max_i dist(policy[i], [lo, hi] of the closed-form policy)
  double cell = 0;          ///< grid spacing, the natural unit for policy_gap
  double worst_value_x = 0;
  double worst_policy_x = 0;
};

/// Evaluates the closed forms on the oracle grid and reports the sup-norm
/// gaps. Throws regime_error when no closed forms exist for the economy.
CompareReport compare(const Economy& e, const OracleResult& o, const ClassifyOptions& copt = {});

}  // namespace rsl
