#include "msddp/ddp.hpp"

#include <cmath>

#include "msddp/eddp.hpp"
#include "msddp/log.hpp"
#include "msddp/parallel.hpp"
#include "msddp/subproblem.hpp"

namespace msddp {

ForwardPath ddp_forward(const Instance& inst, const PoolSet& pools_km1,
                        const SolveConfig& config) {
  MSDDP_REQUIRE(inst.single_scenario(),
                "ddp_forward: instance must have one scenario per stage");
  const LpOptions opts{config.lp_tolerance};
  ForwardPath path;
  path.stage_costs.resize(inst.T);
  path.model_values.resize(inst.T);
  Vector chi = Vector::Zero(inst.dim(0));
  for (int t = 1; t <= inst.T; ++t) {
    const StageSolution sol = solve_stage(inst, t, 0, chi, pools_km1.at(t + 1), opts);
    if (t == 1) path.first_stage_value = sol.value;
    path.stage_costs(t - 1) = inst.stage_scenarios(t).front().c.dot(sol.x);
    path.model_values(t - 1) = sol.theta;
    path.states.push_back(sol.x);
    chi = sol.x;
  }
  return path;
}

PoolSet backward_pass(const Instance& inst, const std::vector<Vector>& states,
                      const PoolSet& pools_km1, int born, const SolveConfig& config) {
  MSDDP_REQUIRE(static_cast<int>(states.size()) == inst.T,
                "backward_pass: need one visited state per stage");
  const LpOptions opts{config.lp_tolerance};
  PoolSet pools = pools_km1;
  for (int t = inst.T; t >= 2; --t) {
    const Vector& anchor = states[static_cast<size_t>(t - 2)];
    const int n_scen = inst.num_scenarios(t);
    std::vector<StageSolution> sols(static_cast<size_t>(n_scen));
    parallel_for(n_scen, config.threads, [&](int i) {
      sols[static_cast<size_t>(i)] =
          solve_stage(inst, t, i, anchor, pools.at(t + 1), opts);
    });
    double intercept = 0.0;
    Vector gradient = Vector::Zero(anchor.size());
    for (int i = 0; i < n_scen; ++i) {
      const Cut piece = cut_from_solution(
          sols[static_cast<size_t>(i)],
          inst.stage_scenarios(t)[static_cast<size_t>(i)], anchor, born);
      intercept += piece.intercept;
      gradient += piece.gradient;
    }
    Cut cut;
    cut.anchor = anchor;
    cut.intercept = intercept / n_scen;
    cut.gradient = gradient / n_scen;
    cut.born = born;
    pools.at(t) = add_cut(std::move(pools.at(t)), std::move(cut));
  }
  return pools;
}

PoolSet ddp_backward(const Instance& inst, const ForwardPath& path,
                     const PoolSet& pools_km1, int born, const SolveConfig& config) {
  MSDDP_REQUIRE(inst.single_scenario(),
                "ddp_backward: instance must have one scenario per stage");
  return backward_pass(inst, path.states, pools_km1, born, config);
}

namespace {

Vector flatten(const std::vector<Vector>& states) {
  Eigen::Index total = 0;
  for (const Vector& s : states) total += s.size();
  Vector out(total);
  Eigen::Index at = 0;
  for (const Vector& s : states) {
    out.segment(at, s.size()) = s;
    at += s.size();
  }
  return out;
}

}  // namespace

DdpResult ddp_solve(const Instance& inst, const SolveConfig& config) {
  require_valid(inst);
  MSDDP_REQUIRE(inst.single_scenario(),
                "ddp_solve: instance must have one scenario per stage");
  MSDDP_REQUIRE(config.stop != StopRule::Statistical,
                "ddp_solve: statistical stopping is not defined here");
  MSDDP_REQUIRE(config.schedule.horizon() == inst.T,
                "ddp_solve: schedule horizon does not match the instance");

  const double threshold = config.gap_override >= 0.0
                               ? config.gap_override
                               : config.schedule.gap_threshold(inst.lambda);

  DdpResult res;
  res.state.pools = initial_pools(inst);
  res.state.ub = std::numeric_limits<double>::infinity();
  res.state.lb = -std::numeric_limits<double>::infinity();
  // Saturation bookkeeping is pure telemetry here; the gap rule terminates.
  std::vector<SaturatedSet> sets = make_saturated_sets(inst, config.schedule);

  for (int k = 1; k <= config.max_iterations; ++k) {
    const ForwardPath path = ddp_forward(inst, res.state.pools, config);
    const double path_cost = path.cost(inst.lambda);
    res.state.lb = path.first_stage_value;
    res.state.ub = std::min(res.state.ub, path_cost);
    const double gap = path_cost - path.first_stage_value;

    IterationRecord rec;
    rec.k = k;
    rec.lb = res.state.lb;
    rec.ub = res.state.ub;
    rec.gap = gap;
    rec.path = flatten(path.states);

    const bool stop = config.stop != StopRule::Budget && gap <= threshold;
    if (!stop) {
      // Same admission rule as the explorative method, driven by the
      // single candidate per stage.
      Vector g(inst.T + 1);
      for (int t = 1; t <= inst.T; ++t) {
        g(t) = t == inst.T ? 0.0
                           : distance_to_saturated(
                                 sets[static_cast<size_t>(t)],
                                 path.states[static_cast<size_t>(t - 1)]);
      }
      for (int t = inst.T; t >= 2; --t) {
        if (g(t) <= (t == inst.T ? 0.0 : config.schedule.delta(t))) {
          if (g(t - 1) > config.schedule.delta(t - 1)) {
            admit_saturated(sets[static_cast<size_t>(t - 1)],
                            path.states[static_cast<size_t>(t - 2)],
                            config.schedule.eps(t - 1), k);
          }
        }
      }
      res.state.pools = ddp_backward(inst, path, res.state.pools, k, config);
    }
    for (int t = 1; t <= inst.T - 1; ++t)
      rec.saturation_counts.push_back(sets[static_cast<size_t>(t)].size());
    res.state.history.push_back(std::move(rec));
    if (stop) {
      res.status = RunStatus::Converged;
      log_info("ddp: gap " + format_double(gap) + " <= " + format_double(threshold) +
               " at iteration " + std::to_string(k));
      return res;
    }
    log_debug("ddp k=" + std::to_string(k) + " lb=" + format_double(res.state.lb) +
              " ub=" + format_double(res.state.ub));
  }
  res.status = RunStatus::IterationLimit;
  return res;
}

}  // namespace msddp
