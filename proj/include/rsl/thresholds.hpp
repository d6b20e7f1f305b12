#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsl/economy.hpp"

namespace rsl {

/// Bisection bracket width for discount-factor roots.
inline constexpr double kTolRoot = 1e-13;

/// Rational function whose unique root on (0, 1/theta) is the n-th
/// bifurcation value of the discount factor:
///
///   z_n(delta) = -1/b + delta * ( -sum_{i=0}^{n-1} (-delta*zeta)^i / (a_I - a_C)
///                                 + (-delta*zeta)^n / (a_C (1 - delta (1-d))) )
///
/// evaluated by direct summation, so delta == -1/zeta needs no special case.
/// n == 0 drops the sum and is defined for every a_C; n >= 1 requires
/// a_C != a_I. Throws validation_error when delta falls outside [0, 1/theta]
/// by more than kEpsCmp.
double z_n(const Economy& e, int n, double delta);

/// Closed rational form of z_n, with the removable singularity at
/// delta == -1/zeta handled by its own branch. Used as a cross-check oracle
/// for the summed form; requires a_C < a_I.
double z_n_closed(const Economy& e, int n, double delta);

/// Polynomial sharing the roots of z_n away from -1/zeta:
///   b a_I (-zeta)^n (1 - theta*delta) delta^(n+1) - a_C (a_I - a_C) (1 - (1-d) delta)^2.
/// Requires a_C < a_I and n >= 1.
double z_tilde_n(const Economy& e, int n, double delta);

/// n-th bifurcation discount factor: mu_0 analytically, mu_n for n >= 1 as
/// the bisection root of z_n on [0, 1/theta]. Throws bracket_error when the
/// endpoint signs contradict the single-crossing property.
double mu_n(const Economy& e, int n);

/// n-th capital threshold: x_0 = a_C and x_n = -(x_{n-1} - a_C b/(a_C-a_I))/zeta,
/// computed by direct recursion. Requires a_C < a_I.
double x_n(const Economy& e, int n);

struct ThresholdTable {
  std::vector<double> mu;  ///< mu_0 .. mu_n_max, strictly increasing
  std::vector<double> x;   ///< x_0 .. x_n_max, strictly increasing
  int n_max = 0;
  double inv_theta = 0;
};

/// Builds mu_0..mu_n and x_0..x_n; n >= 1 requires a_C < a_I.
ThresholdTable build_threshold_table(const Economy& e, int n_max);

enum class RegimeKind {
  ExtinctionNoInvestment,     ///< policy is the pure-depreciation line for every x > 0
  ExtinctionWithInvestment,   ///< extinction deferred by n investment periods
  KnifeEdgeMu,                ///< delta == mu_n: policy is a correspondence
  KnifeEdgeInvTheta,          ///< delta == 1/theta: stationary continuum (0, x-hat]
  OneSector,                  ///< a_C == a_I, delta < 1/theta
  DeltaNormal,                ///< delta > 1/theta (or a_I == 0): outside the characterized scope
  UnsustainableNoInvestment,  ///< theta < 1 with mu0 >= 1: no investment for any delta
};

struct Regime {
  RegimeKind kind = RegimeKind::DeltaNormal;
  std::optional<int> n;   ///< bifurcation index; >= 1 for ExtinctionWithInvestment, >= 0 for KnifeEdgeMu
  std::optional<int> n0;  ///< finite-bifurcation index when theta < 1 and mu0 < 1
  bool circulating = false;  ///< d == 1
};

struct ClassifyOptions {
  double eps_cmp = kEpsCmp;
  double eps_knife = 1e-12;  ///< half-width of the knife-edge windows around 1/theta and mu_n
  int n_cap = 10000;         ///< threshold enumeration cap
};

/// Exhaustive regime classification. Throws cap_error when delta sits so
/// close to 1/theta that more than n_cap roots would be needed.
Regime classify(const Economy& e, const ClassifyOptions& opt = {});

std::string to_string(const Regime& r);
std::string to_string(RegimeKind k);

}  // namespace rsl
