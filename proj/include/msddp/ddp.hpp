#pragma once

#include <vector>

#include "msddp/cutmodel.hpp"
#include "msddp/instance.hpp"
#include "msddp/schedule.hpp"
#include "msddp/telemetry.hpp"

namespace msddp {

enum class RunStatus { Converged, IterationLimit };

/// One feasible policy produced by a forward phase.
struct ForwardPath {
  std::vector<Vector> states;   ///< x_1..x_T
  Vector stage_costs;           ///< c_t' x_t per stage
  Vector model_values;          ///< continuation model value at x_t per stage
  double first_stage_value = 0; ///< optimal value of the first-stage solve (the lb)

  /// Discounted path cost, an upper bound on the optimum for
  /// single-scenario instances.
  double cost(double lambda) const {
    double sum = 0.0;
    double w = 1.0;
    for (Eigen::Index t = 0; t < stage_costs.size(); ++t) {
      sum += w * stage_costs(t);
      w *= lambda;
    }
    return sum;
  }
};

/// Forward phase against the iteration-(k-1) pools. Requires a
/// single-scenario instance.
ForwardPath ddp_forward(const Instance& inst, const PoolSet& pools_km1,
                        const SolveConfig& config);

/// Aggregate-cut backward pass shared by all solvers: for t = T..2 solves
/// every stage-t scenario at the visited state x_{t-1} against the already
/// updated stage-(t+1) pool and appends the averaged cut, anchored at
/// x_{t-1}, to pool t. Returns the extended snapshot; the input is untouched.
PoolSet backward_pass(const Instance& inst, const std::vector<Vector>& states,
                      const PoolSet& pools_km1, int born, const SolveConfig& config);

/// Backward phase of the single-scenario method: one cut per stage.
PoolSet ddp_backward(const Instance& inst, const ForwardPath& path,
                     const PoolSet& pools_km1, int born, const SolveConfig& config);

struct DdpState {
  PoolSet pools;
  double ub = 0.0;  ///< best path cost so far, nonincreasing
  double lb = 0.0;  ///< latest first-stage model value, nondecreasing
  std::vector<IterationRecord> history;
};

struct DdpResult {
  DdpState state;
  RunStatus status = RunStatus::IterationLimit;
};

/// Runs forward/backward iterations until the computable gap
///   (current path cost) - (first-stage model value)
/// drops to the schedule threshold sum_t lambda^(t-1) eps(t-1) (or
/// config.gap_override when nonnegative), or the budget runs out. With
/// config.stop == StopRule::Budget the gap test is skipped entirely.
DdpResult ddp_solve(const Instance& inst, const SolveConfig& config);

}  // namespace msddp
