#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsl/policy.hpp"

namespace rsl {

/// Numerical extinction threshold for depreciating stocks; with d < 1 the
/// stock never reaches 0 exactly in floating point.
inline constexpr double kEpsExtinct = 1e-9;

/// Investment detection margin: a period invests when x' > (1-d)x + this.
inline constexpr double kEpsInvest = 1e-12;

enum class Selection {
  Lower,     ///< minimum-investment endpoint of the correspondence
  Upper,     ///< maximum-investment endpoint (default)
  Turnpike,  ///< the straight-down-the-turnpike selection on the 1/theta knife
             ///< edge; coincides with Upper
};

std::string to_string(Selection s);

struct Trajectory {
  std::vector<double> states;          ///< x_0 .. x_T
  std::vector<double> outputs;         ///< consumption y_t, t = 0 .. T-1
  std::vector<double> utilities;       ///< u_t, equals outputs under linear felicity
  std::vector<bool> investment_flags;  ///< x_{t+1} > (1-d)x_t + kEpsInvest
  std::optional<int> extinct_at;       ///< first t with x_t < kEpsExtinct
  double discounted_total = 0;         ///< sum_t delta^t u_t over the horizon
  double delta = 0;
  std::string selection;  ///< selection rule used, for reproducibility
};

/// Iterates the closed-form optimal policy from x0 for `horizon` periods.
/// Throws regime_error when the regime has no characterized policy.
Trajectory simulate(const Economy& e, double x0, int horizon, Selection sel = Selection::Upper,
                    const ClassifyOptions& copt = {});

struct ExtinctionStats {
  bool extinct = false;
  int periods_with_investment = 0;
  std::optional<int> time_to_threshold;  ///< first t with x_t < eps
};

ExtinctionStats extinction_stats(const Trajectory& t, double eps = kEpsExtinct);

struct DiscountedUtility {
  double value = 0;       ///< finite-horizon partial sum
  double tail_bound = 0;  ///< delta^T / (1 - delta); per-period utility is <= 1
};

DiscountedUtility discounted_utility(const Trajectory& t);

}  // namespace rsl
