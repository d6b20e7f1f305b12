#pragma once

#include <span>
#include <string>
#include <vector>

#include "rsl/economy.hpp"
#include "rsl/thresholds.hpp"

namespace rsl {

struct AffineMap {
  double alpha = 0;
  double beta = 0;
  double operator()(double x) const { return alpha + beta * x; }
};

/// One half-open interval (lo, hi] of stock values and the affine lower and
/// upper selections of the policy correspondence on it. Function-valued
/// policies have lower == upper.
struct PolicyPiece {
  double lo = 0;
  double hi = 0;
  AffineMap lower;
  AffineMap upper;
};

struct Interval {
  double lo = 0;
  double hi = 0;
  bool contains(double v, double eps = 0.0) const { return v >= lo - eps && v <= hi + eps; }
};

/// Piecewise-affine optimal policy correspondence h(x). Pieces partition
/// (0, inf) with (lo, hi] intervals; a shared endpoint belongs to the piece
/// on its left, and the selections agree there whenever the policy is
/// continuous.
struct PolicyCorrespondence {
  std::vector<PolicyPiece> pieces;
  std::string selection_default = "upper";
  bool function_valued() const;
};

/// Closed-form optimal policy for every characterized regime. Throws
/// regime_error for DeltaNormal, which lies outside the characterization.
PolicyCorrespondence optimal_policy(const Economy& e);
PolicyCorrespondence optimal_policy(const Economy& e, const Regime& r);

/// [lower(x), upper(x)] for the piece containing x; requires x > 0.
Interval policy_eval(const PolicyCorrespondence& p, double x);

/// Piecewise-affine value function, evaluated lazily: the breakpoint families
/// generated by repeated depreciation (and, on the knife edge, by the
/// zero-consumption growth factor) accumulate indefinitely, so segments are
/// located on demand rather than materialized.
class ValueFunctionPW {
 public:
  /// W(x); requires x >= 0 and finite.
  double operator()(double x) const;

  /// Affine coefficients of the segment containing x; requires x > 0.
  AffineMap segment(double x) const;

  /// Finite backbone of breakpoints; the lazy families repeat beyond these.
  const std::vector<double>& breakpoints() const { return breaks_; }

 private:
  enum class Form {
    DecayOnly,          ///< policy is pure depreciation everywhere
    DelayedExtinction,  ///< n investment periods before the decay phase
    StationaryKnife,    ///< delta == 1/theta with a capital-intensive investment sector
  };

  friend ValueFunctionPW closed_form_value(const Economy& e, const Regime& r);
  ValueFunctionPW(const Economy& e, Form form, int n, std::vector<double> xs);

  AffineMap decay_only_segment(double x) const;
  AffineMap delayed_segment(double x) const;
  AffineMap knife_segment(double x) const;

  Economy e_;
  Form form_;
  int n_ = 0;
  std::vector<double> xs_;  ///< x_0..x_n thresholds (DelayedExtinction)
  std::vector<double> breaks_;
  double base_ = 0;  ///< a_C (1 - delta (1-d))
  double xhat_ = 0;  ///< stationary stock (StationaryKnife)
  double uhat_ = 0;  ///< u(xhat, xhat)
};

/// Closed-form value function matching the optimal policy of the regime.
/// Throws regime_error for DeltaNormal.
ValueFunctionPW closed_form_value(const Economy& e);
ValueFunctionPW closed_form_value(const Economy& e, const Regime& r);

/// max over xs and over both selection endpoints x' of
/// |W(x) - u(x, x') - delta W(x')|. Throws feasibility_error if a policy
/// endpoint leaves the transition set, which signals a construction bug.
double bellman_residual(const Economy& e, const ValueFunctionPW& W, const PolicyCorrespondence& p,
                        std::span<const double> xs);

}  // namespace rsl
