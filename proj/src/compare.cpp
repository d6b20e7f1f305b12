#include "rsl/compare.hpp"

#include <cmath>

namespace rsl {

CompareReport compare(const Economy& e, const OracleResult& o, const ClassifyOptions& copt) {
  const Regime r = classify(e, copt);
  const ValueFunctionPW W = closed_form_value(e, r);
  const PolicyCorrespondence p = optimal_policy(e, r);
  CompareReport rep;
  rep.cell = o.cell();
  for (size_t i = 0; i < o.grid.size(); ++i) {
    const double x = o.grid[i];
    const double vg = std::abs(W(x) - o.value[i]);
    if (vg > rep.value_gap) {
      rep.value_gap = vg;
      rep.worst_value_x = x;
    }
    if (x <= 0) continue;  // the policy correspondence is defined on (0, inf)
    const Interval h = policy_eval(p, x);
    const double pg = std::max({0.0, h.lo - o.policy[i], o.policy[i] - h.hi});
    if (pg > rep.policy_gap) {
      rep.policy_gap = pg;
      rep.worst_policy_x = x;
    }
  }
  return rep;
}

}  // namespace rsl
