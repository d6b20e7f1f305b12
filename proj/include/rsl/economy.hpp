#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "rsl/errors.hpp"

namespace rsl {

/// Comparison tolerance for threshold tests on derived quantities. Model
/// parameters are O(1) ratios, so this sits far below parameter scale.
inline constexpr double kEpsCmp = 1e-12;

/// Slack used when checking feasibility of analytically constructed
/// transitions, absorbing float noise on the boundary of the transition set.
inline constexpr double kFeasSlack = 1e-9;

/// Primitives of the two-sector Leontief growth model. One unit of labor and
/// a_C units of capital produce one unit of the consumption good; one unit of
/// labor and a_I units of capital produce b units of the investment good.
/// Labor supply is fixed at one, capital depreciates at rate d, and the
/// planner discounts future utility by delta. a_I = 0 is allowed (the
/// investment good then needs labor only).
struct Economy {
  double a_C = 0;    ///< capital per unit of consumption output, > 0
  double a_I = 0;    ///< capital per b units of investment output, >= 0
  double b = 0;      ///< investment output per worker, > 0
  double d = 0;      ///< depreciation rate, in (0, 1]
  double delta = 0;  ///< discount factor, in (0, 1)
};

/// Throws validation_error naming the offending field.
void validate(const Economy& e);

/// Quantities derived from the primitives. Optional fields are genuinely
/// absent where undefined, never NaN.
struct DerivedParams {
  std::optional<double> zeta;   ///< MRT under full utilization; absent when a_C == a_I
  std::optional<double> theta;  ///< MRT with zero consumption; absent when a_I == 0
  double inv_theta = 0;         ///< 1/theta, taken to be 0 when a_I == 0
  double mu0 = 0;               ///< lower technological bound 1/(b/a_C + (1-d))
  std::optional<double> golden_stock;  ///< modified golden rule stock, present iff delta > 1/theta
  std::optional<double> golden_price;  ///< supporting price, present iff delta > 1/theta and a_C != a_I
};

DerivedParams derive_params(const Economy& e);

/// Transition possibility: (1-d)x <= x' <= (1-d)x + b*min(1, x/a_I).
/// When a_I == 0 the min term is 1 for every x, including x == 0, since
/// labor alone produces the investment good. `eps` loosens both bounds.
bool feasible(const Economy& e, double x, double x_next, double eps = 0.0);

/// Largest consumption output compatible with moving the stock from x to
/// x_next: the binding one of the capital and labor constraints, clamped
/// below at zero. Throws feasibility_error when (x, x_next) is outside the
/// transition set beyond kFeasSlack.
double consumption(const Economy& e, double x, double x_next);

/// Reduced-form per-period utility. Felicity is linear, so this equals
/// consumption(e, x, x_next).
double utility(const Economy& e, double x, double x_next);

/// Unchecked evaluation of the reduced-form utility; the caller guarantees
/// feasibility. Negative rounding noise is clamped to zero.
inline double reduced_utility(const Economy& e, double x, double x_next) noexcept {
  const double inv = x_next - (1.0 - e.d) * x;
  const double labor = 1.0 - inv / e.b;
  const double capital = (x - (e.a_I / e.b) * inv) / e.a_C;
  return std::max(0.0, std::min(labor, capital));
}

/// True iff there is a feasible (x, x') with x <= delta*x' and positive
/// utility; equivalent to delta > 1/theta.
bool is_delta_normal(const Economy& e);

// Shared derived quantities. Preconditions mirror where each is defined.
double zeta_of(const Economy& e);       // requires a_C != a_I
double theta_of(const Economy& e);      // requires a_I > 0
double inv_theta_of(const Economy& e);  // 0 when a_I == 0
double mu0_of(const Economy& e);

/// Intercept a_C*b/(a_C - a_I) of the full-utilization line.
double mv_intercept(const Economy& e);

/// Full-utilization line x' = -zeta*x + a_C*b/(a_C - a_I): transitions on it
/// employ all labor and all capital, and the two branches of the reduced-form
/// utility coincide there. Requires a_C != a_I.
double mv_line(const Economy& e, double x);

/// Upper bound of the transition set at stock x.
double omega_upper(const Economy& e, double x);

/// Fixed point of the full-utilization line, a_C*b/(b + d*(a_C - a_I)); the
/// modified golden rule stock whenever one exists. Requires b + d*(a_C - a_I)
/// != 0 (always true unless zeta == -1).
double mv_fixed_point(const Economy& e);

Economy economy_from_json(const std::string& text);
std::string to_json(const Economy& e);
std::string to_json(const DerivedParams& p);

}  // namespace rsl
