#include "rsl/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "rsl/format.hpp"

namespace rsl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

AffineMap constant(double c) { return {c, 0.0}; }
AffineMap ray(double slope) { return {0.0, slope}; }
AffineMap decay_map(const Economy& e) { return {0.0, 1.0 - e.d}; }
AffineMap mv_map(const Economy& e) { return {mv_intercept(e), -zeta_of(e)}; }

/// A bound given by one affine map, or by the pointwise min/max of two.
struct BoundSpec {
  AffineMap a;
  std::optional<AffineMap> b;
  bool take_min = false;
};

BoundSpec one(AffineMap m) { return {m, std::nullopt, false}; }
BoundSpec min_of(AffineMap m1, AffineMap m2) { return {m1, m2, true}; }
BoundSpec max_of(AffineMap m1, AffineMap m2) { return {m1, m2, false}; }

AffineMap active(const BoundSpec& s, double x) {
  if (!s.b) return s.a;
  const double va = s.a(x), vb = (*s.b)(x);
  const bool pick_a = s.take_min ? va <= vb : va >= vb;
  return pick_a ? s.a : *s.b;
}

std::optional<double> crossing(const AffineMap& f, const AffineMap& g) {
  if (f.beta == g.beta) return std::nullopt;
  return (g.alpha - f.alpha) / (f.beta - g.beta);
}

/// Emits (lo, hi] with the given bounds, split wherever a min/max switches
/// between its two affine candidates so that every stored piece is affine.
void emit(std::vector<PolicyPiece>& out, double lo, double hi, const BoundSpec& lower,
          const BoundSpec& upper) {
  std::vector<double> cuts;
  auto consider = [&](const BoundSpec& s) {
    if (!s.b) return;
    if (auto c = crossing(s.a, *s.b); c && *c > lo && *c < hi) cuts.push_back(*c);
  };
  consider(lower);
  consider(upper);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(hi);
  double a = lo;
  for (double c : cuts) {
    if (!(c > a)) continue;
    const double t = std::isinf(c) ? a + std::max(1.0, std::abs(a)) : 0.5 * (a + c);
    out.push_back({a, c, active(lower, t), active(upper, t)});
    a = c;
  }
}

PolicyCorrespondence no_investment_policy(const Economy& e) {
  PolicyCorrespondence p;
  emit(p.pieces, 0.0, kInf, one(decay_map(e)), one(decay_map(e)));
  return p;
}

PolicyCorrespondence delayed_extinction_policy(const Economy& e, int n) {
  if (n < 1) throw validation_error("delayed extinction policy needs n >= 1");
  const double xn = x_n(e, n);
  const double xnm1 = x_n(e, n - 1);
  const AffineMap od = decay_map(e), mv = mv_map(e);
  PolicyCorrespondence p;
  emit(p.pieces, 0.0, e.a_C, one(od), one(od));
  emit(p.pieces, e.a_C, xn, one(mv), one(mv));
  if (e.d < 1.0) {
    const double top = xnm1 / (1.0 - e.d);
    emit(p.pieces, xn, top, one(constant(xnm1)), one(constant(xnm1)));
    emit(p.pieces, top, kInf, one(od), one(od));
  } else {
    emit(p.pieces, xn, kInf, one(constant(xnm1)), one(constant(xnm1)));
  }
  return p;
}

PolicyCorrespondence mu_knife_policy(const Economy& e, int n) {
  const AffineMap od = decay_map(e), mv = mv_map(e);
  PolicyCorrespondence p;
  emit(p.pieces, 0.0, e.a_C, one(od), one(od));
  if (n == 0) {
    const double x1 = x_n(e, 1);
    emit(p.pieces, e.a_C, x1, one(od), one(mv));
    if (e.d < 1.0) {
      const double top = e.a_C / (1.0 - e.d);
      emit(p.pieces, x1, top, one(od), one(constant(e.a_C)));
      emit(p.pieces, top, kInf, one(od), one(od));
    } else {
      emit(p.pieces, x1, kInf, one(od), one(constant(e.a_C)));
    }
    return p;
  }
  const double xn = x_n(e, n);
  const double xnm1 = x_n(e, n - 1);
  emit(p.pieces, e.a_C, xn, one(mv), one(mv));
  if (e.d < 1.0) {
    const double top1 = xnm1 / (1.0 - e.d);
    const double top2 = xn / (1.0 - e.d);
    emit(p.pieces, xn, top1, one(constant(xnm1)), min_of(mv, constant(xn)));
    emit(p.pieces, top1, top2, one(od), min_of(mv, constant(xn)));
    emit(p.pieces, top2, kInf, one(od), one(od));
  } else {
    const double xnp1 = x_n(e, n + 1);
    emit(p.pieces, xn, xnp1, one(constant(xnm1)), one(mv));
    emit(p.pieces, xnp1, kInf, one(constant(xnm1)), one(constant(xn)));
  }
  return p;
}

PolicyCorrespondence inv_theta_knife_policy(const Economy& e) {
  const AffineMap od = decay_map(e);
  const double th = theta_of(e);
  PolicyCorrespondence p;
  if (e.a_C > e.a_I) {
    const AffineMap mv = mv_map(e);
    emit(p.pieces, 0.0, e.a_I, one(od), min_of(constant(e.a_C), ray(th)));
    emit(p.pieces, e.a_I, e.a_C, one(od), min_of(constant(e.a_C), mv));
    emit(p.pieces, e.a_C, kInf, one(od), one(od));
    return p;
  }
  if (e.a_C == e.a_I) {
    emit(p.pieces, 0.0, e.a_C, one(od), min_of(constant(e.a_C), ray(th)));
    emit(p.pieces, e.a_C, kInf, one(od), max_of(constant(e.a_C), od));
    return p;
  }
  const AffineMap mv = mv_map(e);
  const double xh = mv_fixed_point(e);
  emit(p.pieces, 0.0, xh / th, max_of(od, mv), one(ray(th)));
  emit(p.pieces, xh / th, xh, max_of(od, mv), one(constant(xh)));
  emit(p.pieces, xh, kInf, max_of(constant(xh), od), max_of(constant(xh), od));
  return p;
}

}  // namespace

bool PolicyCorrespondence::function_valued() const {
  for (const auto& pc : pieces) {
    if (pc.lower.alpha != pc.upper.alpha || pc.lower.beta != pc.upper.beta) return false;
  }
  return true;
}

PolicyCorrespondence optimal_policy(const Economy& e, const Regime& r) {
  validate(e);
  switch (r.kind) {
    case RegimeKind::DeltaNormal:
      throw regime_error("the optimal policy for the delta-normal regime is not characterized");
    case RegimeKind::ExtinctionNoInvestment:
    case RegimeKind::UnsustainableNoInvestment:
    case RegimeKind::OneSector:
      return no_investment_policy(e);
    case RegimeKind::ExtinctionWithInvestment:
      return delayed_extinction_policy(e, r.n.value());
    case RegimeKind::KnifeEdgeMu:
      return mu_knife_policy(e, r.n.value());
    case RegimeKind::KnifeEdgeInvTheta:
      return inv_theta_knife_policy(e);
  }
  throw validation_error("unreachable regime kind");
}

PolicyCorrespondence optimal_policy(const Economy& e) { return optimal_policy(e, classify(e)); }

Interval policy_eval(const PolicyCorrespondence& p, double x) {
  if (!(x > 0) || !std::isfinite(x)) {
    throw validation_error("policy_eval requires finite x > 0, got " + fmt17(x));
  }
  auto it = std::lower_bound(p.pieces.begin(), p.pieces.end(), x,
                             [](const PolicyPiece& pc, double v) { return pc.hi < v; });
  if (it == p.pieces.end()) throw validation_error("policy pieces do not cover x = " + fmt17(x));
  return {it->lower(x), it->upper(x)};
}

ValueFunctionPW::ValueFunctionPW(const Economy& e, Form form, int n, std::vector<double> xs)
    : e_(e), form_(form), n_(n), xs_(std::move(xs)) {
  base_ = e_.a_C * (1.0 - e_.delta * (1.0 - e_.d));
  switch (form_) {
    case Form::DecayOnly:
      breaks_ = {e_.a_C};
      break;
    case Form::DelayedExtinction:
      breaks_ = xs_;
      if (e_.d < 1.0) breaks_.push_back(xs_[n_ - 1] / (1.0 - e_.d));
      break;
    case Form::StationaryKnife: {
      xhat_ = mv_fixed_point(e_);
      uhat_ = 1.0 - e_.d * xhat_ / e_.b;
      const double th = theta_of(e_);
      breaks_ = {xhat_ / th, xhat_};
      if (e_.d < 1.0) breaks_.push_back(xhat_ / (1.0 - e_.d));
      break;
    }
  }
}

AffineMap ValueFunctionPW::decay_only_segment(double x) const {
  if (x <= e_.a_C) return {0.0, 1.0 / base_};
  // x in (a_C/(1-d)^{k-1}, a_C/(1-d)^k]: k depreciation periods of full
  // employment before the stock enters [0, a_C].
  double y = x, dk = 1.0, ddk = 1.0;
  while (y > e_.a_C) {
    y *= 1.0 - e_.d;
    dk *= e_.delta;
    ddk *= e_.delta * (1.0 - e_.d);
  }
  return {(1.0 - dk) / (1.0 - e_.delta), ddk / base_};
}

AffineMap ValueFunctionPW::delayed_segment(double x) const {
  if (x <= xs_[0]) return {0.0, 1.0 / base_};
  const double q = mv_intercept(e_);
  const double zt = zeta_of(e_);
  // Peel the depreciation families above x_{n-1}/(1-d); each period there
  // yields utility 1 and shrinks the stock by (1-d).
  double prefix = 0.0, disc = 1.0, scale = 1.0, y = x;
  if (e_.d < 1.0) {
    const double top = xs_[n_ - 1] / (1.0 - e_.d);
    while (y > top) {
      prefix += disc;
      disc *= e_.delta;
      scale *= 1.0 - e_.d;
      y *= 1.0 - e_.d;
    }
  }
  AffineMap inner;
  if (y <= xs_[n_]) {
    // Full-utilization family: m steps along the line x' = -zeta x + q, then
    // the decay-phase value at the m-th iterate.
    const int m = static_cast<int>(std::lower_bound(xs_.begin(), xs_.end(), y) - xs_.begin());
    double fa = 0.0, fb = 1.0;  // i-th iterate of the line as an affine map
    double dk = 1.0;
    double alpha = 0.0, beta = 0.0;
    for (int i = 0; i < m; ++i) {
      alpha += dk * (e_.a_I - fa) / (e_.a_I - e_.a_C);
      beta += dk * (-fb) / (e_.a_I - e_.a_C);
      fa = q - zt * fa;
      fb = -zt * fb;
      dk *= e_.delta;
    }
    alpha += dk * fa / base_;
    beta += dk * fb / base_;
    inner = {alpha, beta};
  } else {
    // One interior-investment step to x_{n-1}, n full-utilization steps down
    // the threshold ladder, then the decay-phase value at (1-d) a_C.
    double sum = 0.0, dk = e_.delta;
    for (int i = 1; i <= n_; ++i) {
      sum += dk * (e_.a_I - xs_[n_ - i]) / (e_.a_I - e_.a_C);
      dk *= e_.delta;
    }
    const double alpha = (e_.b - xs_[n_ - 1]) / e_.b + sum + dk * (1.0 - e_.d) * e_.a_C / base_;
    inner = {alpha, (1.0 - e_.d) / e_.b};
  }
  return {prefix + disc * inner.alpha, disc * inner.beta * scale};
}

AffineMap ValueFunctionPW::knife_segment(double x) const {
  const double th = theta_of(e_);
  if (x >= xhat_) {
    // Depreciation family above the stationary stock.
    double y = x, dk = 1.0, sk = 1.0;
    if (e_.d < 1.0) {
      const double top = xhat_ / (1.0 - e_.d);
      while (y >= top) {
        y *= 1.0 - e_.d;
        dk *= e_.delta;
        sk *= 1.0 - e_.d;
      }
    }
    const double slope = (1.0 - e_.d) / e_.b;
    return {-slope * dk * xhat_ + (1.0 - dk + dk * uhat_) / (1.0 - e_.delta), slope * dk * sk};
  }
  // Zero-consumption growth family below the stationary stock.
  double y = x, dk = 1.0, sk = 1.0;
  const double bottom = xhat_ / th;
  while (y < bottom) {
    y *= th;
    dk *= e_.delta;
    sk *= th;
  }
  const double c = e_.a_I * th / (e_.a_C * e_.b);
  return {dk * (uhat_ / (1.0 - e_.delta) - c * xhat_), c * dk * sk};
}

AffineMap ValueFunctionPW::segment(double x) const {
  if (!(x > 0) || !std::isfinite(x)) {
    throw validation_error("value segment requires finite x > 0, got " + fmt17(x));
  }
  switch (form_) {
    case Form::DecayOnly: return decay_only_segment(x);
    case Form::DelayedExtinction: return delayed_segment(x);
    case Form::StationaryKnife: return knife_segment(x);
  }
  throw validation_error("unreachable value form");
}

double ValueFunctionPW::operator()(double x) const {
  if (!(x >= 0) || !std::isfinite(x)) {
    throw validation_error("value function requires finite x >= 0, got " + fmt17(x));
  }
  if (x == 0.0) return 0.0;
  const AffineMap s = segment(x);
  return s(x);
}

ValueFunctionPW closed_form_value(const Economy& e, const Regime& r) {
  validate(e);
  using Form = ValueFunctionPW::Form;
  switch (r.kind) {
    case RegimeKind::DeltaNormal:
      throw regime_error("the closed-form value for the delta-normal regime is not characterized");
    case RegimeKind::ExtinctionNoInvestment:
    case RegimeKind::UnsustainableNoInvestment:
    case RegimeKind::OneSector:
      return ValueFunctionPW(e, Form::DecayOnly, 0, {});
    case RegimeKind::ExtinctionWithInvestment:
    case RegimeKind::KnifeEdgeMu: {
      const int n = r.n.value();
      if (n == 0) return ValueFunctionPW(e, Form::DecayOnly, 0, {});
      std::vector<double> xs;
      xs.reserve(n + 1);
      for (int i = 0; i <= n; ++i) xs.push_back(x_n(e, i));
      return ValueFunctionPW(e, Form::DelayedExtinction, n, std::move(xs));
    }
    case RegimeKind::KnifeEdgeInvTheta:
      if (e.a_C < e.a_I) return ValueFunctionPW(e, Form::StationaryKnife, 0, {});
      return ValueFunctionPW(e, Form::DecayOnly, 0, {});
  }
  throw validation_error("unreachable regime kind");
}

ValueFunctionPW closed_form_value(const Economy& e) { return closed_form_value(e, classify(e)); }

double bellman_residual(const Economy& e, const ValueFunctionPW& W, const PolicyCorrespondence& p,
                        std::span<const double> xs) {
  double worst = 0.0;
  for (double x : xs) {
    if (!(x > 0) || !std::isfinite(x)) {
      throw validation_error("bellman_residual requires finite sample points > 0");
    }
    const Interval h = policy_eval(p, x);
    const double wx = W(x);
    for (double xn : {h.lo, h.hi}) {
      const double r = std::abs(wx - utility(e, x, xn) - e.delta * W(xn));
      worst = std::max(worst, r);
      if (h.lo == h.hi) break;
    }
  }
  return worst;
}

}  // namespace rsl
