#include "rsl/economy.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "rsl/format.hpp"

namespace rsl {

void validate(const Economy& e) {
  auto bad = [](const std::string& field, double v, const std::string& want) {
    throw validation_error("invalid economy: " + field + " = " + fmt17(v) + ", expected " + want);
  };
  if (!(e.a_C > 0) || !std::isfinite(e.a_C)) bad("a_C", e.a_C, "a finite value > 0");
  if (!(e.a_I >= 0) || !std::isfinite(e.a_I)) bad("a_I", e.a_I, "a finite value >= 0");
  if (!(e.b > 0) || !std::isfinite(e.b)) bad("b", e.b, "a finite value > 0");
  if (!(e.d > 0 && e.d <= 1)) bad("d", e.d, "a value in (0, 1]");
  if (!(e.delta > 0 && e.delta < 1)) bad("delta", e.delta, "a value in (0, 1)");
}

double zeta_of(const Economy& e) {
  if (e.a_C == e.a_I) throw validation_error("zeta is undefined for a_C == a_I");
  return e.b / (e.a_C - e.a_I) - (1.0 - e.d);
}

double theta_of(const Economy& e) {
  if (!(e.a_I > 0)) throw validation_error("theta is undefined for a_I == 0");
  return e.b / e.a_I + (1.0 - e.d);
}

double inv_theta_of(const Economy& e) {
  return e.a_I > 0 ? 1.0 / theta_of(e) : 0.0;
}

double mu0_of(const Economy& e) { return 1.0 / (e.b / e.a_C + (1.0 - e.d)); }

double mv_intercept(const Economy& e) {
  if (e.a_C == e.a_I) throw validation_error("the full-utilization line is undefined for a_C == a_I");
  return e.a_C * e.b / (e.a_C - e.a_I);
}

double mv_line(const Economy& e, double x) { return -zeta_of(e) * x + mv_intercept(e); }

double omega_upper(const Economy& e, double x) {
  const double cap = e.a_I > 0 ? std::min(1.0, x / e.a_I) : 1.0;
  return (1.0 - e.d) * x + e.b * cap;
}

double mv_fixed_point(const Economy& e) {
  const double denom = e.b + e.d * (e.a_C - e.a_I);
  if (denom == 0) throw validation_error("the full-utilization line has no fixed point (zeta == -1)");
  return e.a_C * e.b / denom;
}

bool feasible(const Economy& e, double x, double x_next, double eps) {
  if (!(x >= 0) || !(x_next >= 0)) return false;
  const double lo = (1.0 - e.d) * x;
  return x_next >= lo - eps && x_next <= omega_upper(e, x) + eps;
}

double consumption(const Economy& e, double x, double x_next) {
  if (!feasible(e, x, x_next, kFeasSlack)) {
    throw feasibility_error("infeasible transition: x = " + fmt17(x) + ", x' = " + fmt17(x_next));
  }
  return reduced_utility(e, x, x_next);
}

double utility(const Economy& e, double x, double x_next) { return consumption(e, x, x_next); }

bool is_delta_normal(const Economy& e) { return e.delta > inv_theta_of(e); }

DerivedParams derive_params(const Economy& e) {
  validate(e);
  DerivedParams p;
  if (e.a_C != e.a_I) p.zeta = zeta_of(e);
  if (e.a_I > 0) p.theta = theta_of(e);
  p.inv_theta = inv_theta_of(e);
  p.mu0 = mu0_of(e);
  if (e.delta > p.inv_theta) {
    p.golden_stock = e.a_C * e.b / (e.b + e.d * (e.a_C - e.a_I));
    if (p.zeta) p.golden_price = 1.0 / ((e.a_C - e.a_I) * (1.0 + e.delta * *p.zeta));
  }
  return p;
}

Economy economy_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw validation_error(std::string("economy JSON parse failure: ") + ex.what());
  }
  Economy e;
  auto get = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
      throw validation_error(std::string("economy JSON needs numeric key \"") + key + "\"");
    }
    return j[key].get<double>();
  };
  e.a_C = get("a_C");
  e.a_I = get("a_I");
  e.b = get("b");
  e.d = get("d");
  e.delta = get("delta");
  validate(e);
  return e;
}

std::string to_json(const Economy& e) {
  std::ostringstream os;
  os << "{\"a_C\":" << fmt17(e.a_C) << ",\"a_I\":" << fmt17(e.a_I) << ",\"b\":" << fmt17(e.b)
     << ",\"d\":" << fmt17(e.d) << ",\"delta\":" << fmt17(e.delta) << "}";
  return os.str();
}

std::string to_json(const DerivedParams& p) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  auto put = [&](const char* key, double v) {
    if (!first) os << ",";
    first = false;
    os << "\"" << key << "\":" << fmt17(v);
  };
  if (p.zeta) put("zeta", *p.zeta);
  if (p.theta) put("theta", *p.theta);
  put("inv_theta", p.inv_theta);
  put("mu0", p.mu0);
  if (p.golden_stock) put("golden_stock", *p.golden_stock);
  if (p.golden_price) put("golden_price", *p.golden_price);
  os << "}";
  return os.str();
}

}  // namespace rsl
