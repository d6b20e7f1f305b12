#include "rsl/thresholds.hpp"

#include <cmath>

#include "rsl/format.hpp"

namespace rsl {
namespace {

double powi(double base, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

void check_z_domain(const Economy& e, int n, double delta) {
  if (n < 0) throw validation_error("z_n: n must be >= 0");
  const double it = inv_theta_of(e);
  if (delta < -kEpsCmp || delta > it + kEpsCmp) {
    throw validation_error("z_n: delta = " + fmt17(delta) + " outside [0, " + fmt17(it) + "]");
  }
  if (n >= 1 && e.a_C == e.a_I) throw validation_error("z_n with n >= 1 requires a_C != a_I");
}

}  // namespace

double z_n(const Economy& e, int n, double delta) {
  check_z_domain(e, n, delta);
  const double tail = delta / (e.a_C * (1.0 - delta * (1.0 - e.d)));
  if (n == 0) return -1.0 / e.b + tail;
  const double r = -delta * zeta_of(e);
  double sum = 0.0, pw = 1.0;
  for (int i = 0; i < n; ++i) {
    sum += pw;
    pw *= r;
  }
  return -1.0 / e.b + delta * (-sum / (e.a_I - e.a_C) + pw / (e.a_C * (1.0 - delta * (1.0 - e.d))));
}

double z_n_closed(const Economy& e, int n, double delta) {
  check_z_domain(e, n, delta);
  if (!(e.a_C < e.a_I)) throw validation_error("z_n_closed requires a_C < a_I");
  const double zt = zeta_of(e);
  const double shrink = 1.0 - delta * (1.0 - e.d);
  const double common = e.a_C * e.b * shrink * (e.a_I - e.a_C);
  if (std::abs(delta + 1.0 / zt) <= kEpsCmp) {
    const double num =
        -n * e.b * e.a_C * (1.0 - e.d) * delta + n * e.b * e.a_C - e.b * e.a_I + 2.0 * e.b * e.a_C;
    return num / (common * zt);
  }
  const double th = theta_of(e);
  const double num = e.b * e.a_I * powi(-zt, n) * (1.0 - th * delta) * powi(delta, n + 1) -
                     e.a_C * (e.a_I - e.a_C) * shrink * shrink;
  return num / (common * (1.0 + delta * zt));
}

double z_tilde_n(const Economy& e, int n, double delta) {
  if (n < 1) throw validation_error("z_tilde_n requires n >= 1");
  check_z_domain(e, n, delta);
  const double zt = zeta_of(e);
  const double th = theta_of(e);
  const double shrink = 1.0 - (1.0 - e.d) * delta;
  return e.b * e.a_I * powi(-zt, n) * (1.0 - th * delta) * powi(delta, n + 1) -
         e.a_C * (e.a_I - e.a_C) * shrink * shrink;
}

double mu_n(const Economy& e, int n) {
  if (n < 0) throw validation_error("mu_n: n must be >= 0");
  if (n == 0) return mu0_of(e);
  if (!(e.a_C < e.a_I)) throw validation_error("mu_n with n >= 1 requires a_C < a_I");
  double lo = 0.0, hi = inv_theta_of(e);
  const double flo = z_n(e, n, lo), fhi = z_n(e, n, hi);
  if (!(flo < 0.0) || !(fhi > 0.0)) {
    throw bracket_error("mu_n: z_" + std::to_string(n) + " does not change sign on [0, 1/theta] (" +
                        fmt17(flo) + ", " + fmt17(fhi) + ")");
  }
  for (int it = 0; it < 200 && hi - lo > kTolRoot; ++it) {
    const double mid = 0.5 * (lo + hi);
    (z_n(e, n, mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double x_n(const Economy& e, int n) {
  if (n < 0) throw validation_error("x_n: n must be >= 0");
  if (n >= 1 && !(e.a_C < e.a_I)) throw validation_error("x_n with n >= 1 requires a_C < a_I");
  double x = e.a_C;
  if (n == 0) return x;
  const double zt = zeta_of(e);
  const double q = mv_intercept(e);
  for (int i = 0; i < n; ++i) x = -(x - q) / zt;
  return x;
}

ThresholdTable build_threshold_table(const Economy& e, int n_max) {
  if (n_max < 0) throw validation_error("threshold table: n_max must be >= 0");
  if (n_max >= 1 && !(e.a_C < e.a_I)) {
    throw validation_error("threshold table with n_max >= 1 requires a_C < a_I");
  }
  ThresholdTable t;
  t.n_max = n_max;
  t.inv_theta = inv_theta_of(e);
  t.mu.reserve(n_max + 1);
  t.x.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    t.mu.push_back(mu_n(e, n));
    t.x.push_back(x_n(e, n));
  }
  return t;
}

namespace {

// Smallest n >= 1 with mu_n >= 1; exists when theta < 1 and mu_0 < 1 because
// the sequence increases to 1/theta > 1. By single crossing, mu_n >= 1 is
// equivalent to z_n(1) <= 0, so no root-finding is needed here.
int finite_bifurcation_index(const Economy& e, const ClassifyOptions& opt) {
  for (int n = 1; n <= opt.n_cap; ++n) {
    if (z_n(e, n, 1.0) <= 0.0) return n;
  }
  throw cap_error("finite bifurcation index exceeds n_cap = " + std::to_string(opt.n_cap));
}

}  // namespace

Regime classify(const Economy& e, const ClassifyOptions& opt) {
  validate(e);
  Regime r;
  r.circulating = (e.d == 1.0);
  const double it = inv_theta_of(e);
  if (e.a_I == 0.0 || e.delta > it + opt.eps_cmp) {
    r.kind = RegimeKind::DeltaNormal;
    return r;
  }
  const double th = theta_of(e);
  if (th > 1.0 && std::abs(e.delta - it) <= opt.eps_knife) {
    r.kind = RegimeKind::KnifeEdgeInvTheta;
    return r;
  }
  if (e.a_C == e.a_I) {
    r.kind = RegimeKind::OneSector;
    return r;
  }
  if (e.a_C > e.a_I) {
    r.kind = RegimeKind::ExtinctionNoInvestment;
    return r;
  }
  // Capital-intensive investment-good sector below 1/theta.
  const double m0 = mu0_of(e);
  if (th < 1.0) {
    if (m0 >= 1.0) {
      r.kind = RegimeKind::UnsustainableNoInvestment;
      return r;
    }
    r.n0 = finite_bifurcation_index(e, opt);
  }
  if (std::abs(e.delta - m0) <= opt.eps_knife) {
    r.kind = RegimeKind::KnifeEdgeMu;
    r.n = 0;
    return r;
  }
  if (e.delta < m0) {
    r.kind = RegimeKind::ExtinctionNoInvestment;
    return r;
  }
  for (int n = 1;; ++n) {
    if (n > opt.n_cap) {
      throw cap_error("threshold enumeration exceeded n_cap = " + std::to_string(opt.n_cap) +
                      "; delta = " + fmt17(e.delta) + " is too close to 1/theta = " + fmt17(it));
    }
    const double mn = mu_n(e, n);
    if (std::abs(e.delta - mn) <= opt.eps_knife) {
      r.kind = RegimeKind::KnifeEdgeMu;
      r.n = n;
      return r;
    }
    if (e.delta < mn) {
      r.kind = RegimeKind::ExtinctionWithInvestment;
      r.n = r.n0 ? std::min(n, *r.n0) : n;
      return r;
    }
    if (it - mn < 1e-15) {
      throw cap_error("threshold enumeration stalled within 1e-15 of 1/theta = " + fmt17(it));
    }
  }
}

std::string to_string(RegimeKind k) {
  switch (k) {
    case RegimeKind::ExtinctionNoInvestment: return "ExtinctionNoInvestment";
    case RegimeKind::ExtinctionWithInvestment: return "ExtinctionWithInvestment";
    case RegimeKind::KnifeEdgeMu: return "KnifeEdgeMu";
    case RegimeKind::KnifeEdgeInvTheta: return "KnifeEdgeInvTheta";
    case RegimeKind::OneSector: return "OneSector";
    case RegimeKind::DeltaNormal: return "DeltaNormal";
    case RegimeKind::UnsustainableNoInvestment: return "UnsustainableNoInvestment";
  }
  return "Unknown";
}

std::string to_string(const Regime& r) {
  std::string s = to_string(r.kind);
  if (r.n) s += "(n=" + std::to_string(*r.n) + ")";
  return s;
}

}  // namespace rsl
