#include "rsl/simulate.hpp"

#include <cmath>

#include "rsl/format.hpp"

namespace rsl {

std::string to_string(Selection s) {
  switch (s) {
    case Selection::Lower: return "lower";
    case Selection::Upper: return "upper";
    case Selection::Turnpike: return "turnpike";
  }
  return "unknown";
}

Trajectory simulate(const Economy& e, double x0, int horizon, Selection sel,
                    const ClassifyOptions& copt) {
  validate(e);
  if (!(x0 > 0) || !std::isfinite(x0)) {
    throw validation_error("simulate requires finite x0 > 0, got " + fmt17(x0));
  }
  if (horizon < 1) throw validation_error("simulate requires horizon >= 1");
  const Regime r = classify(e, copt);
  if (sel == Selection::Turnpike && r.kind != RegimeKind::KnifeEdgeInvTheta) {
    throw validation_error("the turnpike selection applies only on the 1/theta knife edge");
  }
  const PolicyCorrespondence p = optimal_policy(e, r);

  Trajectory t;
  t.delta = e.delta;
  t.selection = to_string(sel);
  t.states.reserve(horizon + 1);
  t.states.push_back(x0);
  double discount = 1.0;
  for (int step = 0; step < horizon; ++step) {
    const double x = t.states.back();
    double xn = 0.0;
    if (x > 0.0) {
      const Interval h = policy_eval(p, x);
      xn = sel == Selection::Lower ? h.lo : h.hi;
      if (xn < 0.0) xn = 0.0;  // absorb -0.0 style noise
    }
    const double y = utility(e, x, xn);
    t.outputs.push_back(y);
    t.utilities.push_back(y);
    t.investment_flags.push_back(xn > (1.0 - e.d) * x + kEpsInvest);
    t.discounted_total += discount * y;
    discount *= e.delta;
    t.states.push_back(xn);
  }
  for (size_t i = 0; i < t.states.size(); ++i) {
    if (t.states[i] < kEpsExtinct) {
      t.extinct_at = static_cast<int>(i);
      break;
    }
  }
  return t;
}

ExtinctionStats extinction_stats(const Trajectory& t, double eps) {
  ExtinctionStats s;
  for (size_t i = 0; i < t.states.size(); ++i) {
    if (t.states[i] < eps) {
      s.time_to_threshold = static_cast<int>(i);
      s.extinct = true;
      break;
    }
  }
  for (bool f : t.investment_flags) s.periods_with_investment += f ? 1 : 0;
  return s;
}

DiscountedUtility discounted_utility(const Trajectory& t) {
  DiscountedUtility du;
  du.value = t.discounted_total;
  du.tail_bound = std::pow(t.delta, static_cast<double>(t.outputs.size())) / (1.0 - t.delta);
  return du;
}

}  // namespace rsl
