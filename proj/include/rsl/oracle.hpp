#pragma once

#include <vector>

#include "rsl/economy.hpp"

namespace rsl {

struct OracleConfig {
  double x_max = 0;       ///< grid upper bound; >= 1.5 * the largest structural stock level
  int n_grid = 4001;      ///< node count, >= 101
  double tol_vi = 1e-10;  ///< sup-norm convergence tolerance
  int max_iter = 100000;  ///< iteration cap
};

/// x_max = 1.5 * max(a_C, a_I, a_C/(1-d) when d < 1, golden stock when defined).
OracleConfig default_oracle_config(const Economy& e);

struct OracleResult {
  std::vector<double> grid;
  std::vector<double> value;   ///< converged value estimate per node
  std::vector<double> policy;  ///< argmax next stock per node (may be off-grid)
  int iterations = 0;
  double final_delta = 0;            ///< last sup-norm change
  std::vector<double> sup_changes;   ///< sup-norm change per iteration
  bool truncated_argmax = false;     ///< an argmax hit the x_max clipping bound
  double cell() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }
};

/// Discretized value iteration from V = 0, independent of every closed-form
/// construction: synchronous sweeps of the Bellman operator with V linearly
/// interpolated between nodes. Since the per-period utility is piecewise
/// linear in x', maximizing over all grid nodes in the feasible interval plus
/// its exact endpoints plus the exact utility kink is exact for the
/// interpolated problem. Deterministic for fixed inputs. Throws
/// convergence_error when max_iter is reached above tol_vi.
OracleResult value_iteration(const Economy& e, const OracleConfig& cfg);

/// True iff the oracle argmax at the node nearest the modified golden rule
/// stock stays within one grid cell of it. Requires the delta-normal regime.
bool stationarity_check(const Economy& e, const OracleResult& o);

}  // namespace rsl
