#pragma once

#include <stdexcept>
#include <string>

namespace rsl {

/// Invalid model primitives or arguments.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A transition (x, x') lies outside the transition possibility set.
struct feasibility_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Root bracketing failed: the sign pattern required for bisection does not
/// hold, meaning the parameters are outside the hypotheses of the threshold
/// construction.
struct bracket_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Value iteration reached its iteration cap before meeting the tolerance.
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Closed forms are not available for the requested regime.
struct regime_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Threshold enumeration exceeded the configured cap; the discount factor is
/// too close to the accumulation point 1/theta.
struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rsl
