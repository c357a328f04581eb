#include "msddp/eddp.hpp"

#include <cmath>

#include "msddp/log.hpp"
#include "msddp/parallel.hpp"
#include "msddp/subproblem.hpp"

namespace msddp {

double distance_to_saturated(const SaturatedSet& set,
                             const Eigen::Ref<const Vector>& x) {
  if (set.terminal) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const SaturatedPoint& sp : set.points)
    best = std::min(best, (sp.state - x).lpNorm<Eigen::Infinity>());
  return best;
}

bool admit_saturated(SaturatedSet& set, const Eigen::Ref<const Vector>& x,
                     double eps, int iteration) {
  if (set.terminal) return false;
  if (distance_to_saturated(set, x) <= set.radius) return false;
  set.points.push_back(SaturatedPoint{x, eps, iteration});
  return true;
}

std::vector<SaturatedSet> make_saturated_sets(const Instance& inst,
                                              const ToleranceSchedule& schedule) {
  std::vector<SaturatedSet> sets(static_cast<size_t>(inst.T) + 1);
  for (int t = 1; t <= inst.T; ++t) {
    SaturatedSet& set = sets[static_cast<size_t>(t)];
    set.stage = t;
    set.terminal = t == inst.T;
    set.radius = t == inst.T ? 0.0 : schedule.delta(t);
  }
  return sets;
}

EddpForward eddp_forward(const Instance& inst, const PoolSet& pools_km1,
                         const std::vector<SaturatedSet>& sets_km1,
                         const SolveConfig& config) {
  const LpOptions opts{config.lp_tolerance};
  EddpForward fwd;
  fwd.steps.resize(static_cast<size_t>(inst.T) + 1);
  fwd.path.stage_costs.resize(inst.T);
  fwd.path.model_values.resize(inst.T);

  Vector chi = Vector::Zero(inst.dim(0));
  for (int t = 1; t <= inst.T; ++t) {
    const int n_scen = inst.num_scenarios(t);
    ExplorativeStep step;
    step.stage = t;
    step.candidates.resize(static_cast<size_t>(n_scen));
    step.values.resize(n_scen);
    step.distances.resize(n_scen);
    std::vector<double> thetas(static_cast<size_t>(n_scen));
    parallel_for(n_scen, config.threads, [&](int i) {
      const StageSolution sol = solve_stage(inst, t, i, chi, pools_km1.at(t + 1), opts);
      step.candidates[static_cast<size_t>(i)] = sol.x;
      step.values(i) = sol.value;
      thetas[static_cast<size_t>(i)] = sol.theta;
    });
    for (int i = 0; i < n_scen; ++i) {
      step.distances(i) =
          distance_to_saturated(sets_km1[static_cast<size_t>(t)],
                                step.candidates[static_cast<size_t>(i)]);
    }
    step.chosen = 0;
    for (int i = 1; i < n_scen; ++i)
      if (step.distances(i) > step.distances(step.chosen)) step.chosen = i;

    const Vector& x = step.candidates[static_cast<size_t>(step.chosen)];
    if (t == 1) {
      fwd.path.first_stage_value = step.values(0);
      fwd.first_stage_distance = step.distances(0);
    }
    fwd.path.stage_costs(t - 1) =
        inst.stage_scenarios(t)[static_cast<size_t>(step.chosen)].c.dot(x);
    fwd.path.model_values(t - 1) = thetas[static_cast<size_t>(step.chosen)];
    fwd.path.states.push_back(x);
    chi = x;
    fwd.steps[static_cast<size_t>(t)] = std::move(step);
  }
  return fwd;
}

EddpBackward eddp_backward(const Instance& inst, const EddpForward& forward,
                           const PoolSet& pools_km1,
                           const std::vector<SaturatedSet>& sets_km1, int born,
                           const SolveConfig& config) {
  EddpBackward out;
  out.sets = sets_km1;
  out.grew = false;
  // Saturation rule first: the chosen stage-t point sitting within delta_t
  // of the saturated set certifies x_{t-1}; it joins S_{t-1} only when it
  // is distinguishable from the members recorded before this iteration.
  for (int t = inst.T; t >= 2; --t) {
    const double g_t = forward.steps[static_cast<size_t>(t)].chosen_distance();
    const double delta_t = t == inst.T ? 0.0 : config.schedule.delta(t);
    if (g_t <= delta_t) {
      out.grew |= admit_saturated(out.sets[static_cast<size_t>(t - 1)],
                                  forward.path.states[static_cast<size_t>(t - 2)],
                                  config.schedule.eps(t - 1), born);
    }
  }
  out.pools = backward_pass(inst, forward.path.states, pools_km1, born, config);
  return out;
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

EddpResult eddp_solve(const Instance& inst, const SolveConfig& config) {
  require_valid(inst);
  MSDDP_REQUIRE(config.schedule.horizon() == inst.T,
                "eddp_solve: schedule horizon does not match the instance");
  MSDDP_REQUIRE(config.stop != StopRule::Statistical,
                "eddp_solve: statistical stopping is not defined here");

  EddpResult res;
  res.state.pools = initial_pools(inst);
  res.state.sets = make_saturated_sets(inst, config.schedule);
  res.state.lb = -std::numeric_limits<double>::infinity();
  const double delta0 = config.schedule.delta(0);

  for (int k = 1; k <= config.max_iterations; ++k) {
    const EddpForward fwd = eddp_forward(inst, res.state.pools, res.state.sets, config);
    res.state.lb = fwd.path.first_stage_value;
    res.state.first_stage = fwd.path.states.front();

    IterationRecord rec;
    rec.k = k;
    rec.lb = res.state.lb;
    rec.g1 = fwd.first_stage_distance;
    rec.path = flatten(fwd.path.states);
    for (int t = 1; t <= inst.T; ++t)
      rec.chosen.push_back(fwd.steps[static_cast<size_t>(t)].chosen);

    const bool stop =
        config.stop != StopRule::Budget && fwd.first_stage_distance <= delta0;
    if (!stop) {
      EddpBackward back =
          eddp_backward(inst, fwd, res.state.pools, res.state.sets, k, config);
      if (!back.grew) {
        // Growth is guaranteed whenever some stage is still distinguishable;
        // a stall with a distinguishable stage is a bookkeeping bug. (All
        // distances small without stopping happens only in budget mode.)
        bool all_small = true;
        for (int t = 1; t <= inst.T - 1; ++t) {
          if (fwd.steps[static_cast<size_t>(t)].chosen_distance() >
              config.schedule.delta(t))
            all_small = false;
        }
        if (!all_small)
          throw Error("eddp_solve: no saturated point admitted at iteration " +
                      std::to_string(k));
      }
      res.state.pools = std::move(back.pools);
      res.state.sets = std::move(back.sets);
    }
    for (int t = 1; t <= inst.T - 1; ++t)
      rec.saturation_counts.push_back(res.state.sets[static_cast<size_t>(t)].size());
    res.state.history.push_back(std::move(rec));
    if (stop) {
      res.status = RunStatus::Converged;
      log_info("eddp: first-stage distance " + format_double(fwd.first_stage_distance) +
               " <= " + format_double(delta0) + " at iteration " + std::to_string(k));
      return res;
    }
    log_debug("eddp k=" + std::to_string(k) + " lb=" + format_double(res.state.lb));
  }
  res.status = RunStatus::IterationLimit;
  return res;
}

}  // namespace msddp
