#include "rsl/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "rsl/format.hpp"

namespace rsl {

OracleConfig default_oracle_config(const Economy& e) {
  validate(e);
  double m = std::max(e.a_C, e.a_I);
  if (e.d < 1.0) m = std::max(m, e.a_C / (1.0 - e.d));
  const DerivedParams p = derive_params(e);
  if (p.golden_stock) m = std::max(m, *p.golden_stock);
  OracleConfig cfg;
  cfg.x_max = 1.5 * m;
  return cfg;
}

namespace {

void validate_config(const Economy& e, const OracleConfig& cfg) {
  double m = std::max(e.a_C, e.a_I);
  if (e.d < 1.0) m = std::max(m, e.a_C / (1.0 - e.d));
  const DerivedParams p = derive_params(e);
  if (p.golden_stock) m = std::max(m, *p.golden_stock);
  if (!(cfg.x_max >= 1.5 * m)) {
    throw validation_error("oracle x_max = " + fmt17(cfg.x_max) + " below required " +
                           fmt17(1.5 * m));
  }
  if (cfg.n_grid < 101) throw validation_error("oracle n_grid must be >= 101");
  if (!(cfg.tol_vi > 0)) throw validation_error("oracle tol_vi must be > 0");
  if (cfg.max_iter < 1) throw validation_error("oracle max_iter must be >= 1");
}

}  // namespace

OracleResult value_iteration(const Economy& e, const OracleConfig& cfg) {
  validate(e);
  validate_config(e, cfg);

  const int n = cfg.n_grid;
  const double h = cfg.x_max / (n - 1);
  OracleResult out;
  out.grid.resize(n);
  for (int i = 0; i < n; ++i) out.grid[i] = i * h;

  std::vector<double> v(n, 0.0), vnext(n, 0.0);
  out.policy.assign(n, 0.0);
  const bool has_kink = e.a_C != e.a_I;

  // Precomputed feasible windows: exact bounds and the covered node range.
  std::vector<double> lo(n), hi(n);
  std::vector<int> jlo(n), jhi(n);
  bool clipped = false;
  for (int i = 0; i < n; ++i) {
    const double x = out.grid[i];
    lo[i] = (1.0 - e.d) * x;
    double u = omega_upper(e, x);
    if (u > cfg.x_max) {
      u = cfg.x_max;
      clipped = true;
    }
    hi[i] = u;
    jlo[i] = static_cast<int>(std::ceil(lo[i] / h - 1e-9));
    jhi[i] = static_cast<int>(std::floor(hi[i] / h + 1e-9));
    jlo[i] = std::clamp(jlo[i], 0, n - 1);
    jhi[i] = std::clamp(jhi[i], 0, n - 1);
  }

  auto interp = [&](double y) {
    int j = static_cast<int>(y / h);
    j = std::clamp(j, 0, n - 2);
    const double t = (y - out.grid[j]) / h;
    return v[j] + t * (v[j + 1] - v[j]);
  };

  for (out.iterations = 0;;) {
    bool edge_hit = false;
    for (int i = 0; i < n; ++i) {
      const double x = out.grid[i];
      double best = -1.0;
      double bestx = lo[i];
      for (int j = jlo[i]; j <= jhi[i]; ++j) {
        const double f = reduced_utility(e, x, out.grid[j]) + e.delta * v[j];
        if (f > best) {
          best = f;
          bestx = out.grid[j];
        }
      }
      auto try_point = [&](double y) {
        if (y < lo[i] || y > hi[i]) return;
        const double f = reduced_utility(e, x, y) + e.delta * interp(y);
        if (f > best) {
          best = f;
          bestx = y;
        }
      };
      try_point(lo[i]);
      try_point(hi[i]);
      if (has_kink) try_point(mv_line(e, x));
      vnext[i] = best;
      out.policy[i] = bestx;
      if (clipped && bestx >= cfg.x_max - 1e-12 && omega_upper(e, x) > cfg.x_max) edge_hit = true;
    }
    double change = 0.0;
    for (int i = 0; i < n; ++i) change = std::max(change, std::abs(vnext[i] - v[i]));
    v.swap(vnext);
    out.sup_changes.push_back(change);
    out.final_delta = change;
    ++out.iterations;
    if (change <= cfg.tol_vi) {
      out.truncated_argmax = edge_hit;
      break;
    }
    if (out.iterations >= cfg.max_iter) {
      throw convergence_error("value iteration: sup-norm change " + fmt17(change) +
                              " above tol " + fmt17(cfg.tol_vi) + " after " +
                              std::to_string(cfg.max_iter) + " iterations");
    }
  }
  out.value = std::move(v);
  return out;
}

bool stationarity_check(const Economy& e, const OracleResult& o) {
  const DerivedParams p = derive_params(e);
  if (!p.golden_stock) {
    throw regime_error("stationarity check requires the delta-normal regime (delta > 1/theta)");
  }
  const double xh = *p.golden_stock;
  const double h = o.cell();
  const auto it = std::min_element(o.grid.begin(), o.grid.end(), [&](double a, double b) {
    return std::abs(a - xh) < std::abs(b - xh);
  });
  const auto i = static_cast<size_t>(it - o.grid.begin());
  return std::abs(o.policy[i] - xh) <= h + 1e-12;
}

}  // namespace rsl
