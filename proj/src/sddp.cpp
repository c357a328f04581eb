#include "msddp/sddp.hpp"

#include <cmath>

#include "msddp/log.hpp"
#include "msddp/parallel.hpp"
#include "msddp/rng.hpp"
#include "msddp/subproblem.hpp"

namespace msddp {

int SelectionStream::pick(int k, int t, int n_scenarios) const {
  if (t == 1 || n_scenarios <= 1) return 0;
  Rng rng = Rng(seed_)
                .child(0x5DD9)
                .child(static_cast<std::uint64_t>(replica_))
                .child(static_cast<std::uint64_t>(k))
                .child(static_cast<std::uint64_t>(t));
  return rng.next_index(n_scenarios);
}

int ReplayStream::pick(int k, int t, int n_scenarios) const {
  MSDDP_REQUIRE(k >= 1 && k <= static_cast<int>(indices_.size()),
                "replay stream: iteration out of recorded range");
  const auto& row = indices_[static_cast<size_t>(k - 1)];
  MSDDP_REQUIRE(t >= 1 && t <= static_cast<int>(row.size()),
                "replay stream: stage out of recorded range");
  const int idx = row[static_cast<size_t>(t - 1)];
  MSDDP_REQUIRE(idx >= 0 && idx < n_scenarios, "replay stream: index out of range");
  return idx;
}

SddpPath sddp_forward(const Instance& inst, const PoolSet& pools_km1,
                      const ScenarioPicker& picker, int k,
                      const SolveConfig& config) {
  const LpOptions opts{config.lp_tolerance};
  SddpPath out;
  out.path.stage_costs.resize(inst.T);
  out.path.model_values.resize(inst.T);
  Vector chi = Vector::Zero(inst.dim(0));
  for (int t = 1; t <= inst.T; ++t) {
    const int i = picker.pick(k, t, inst.num_scenarios(t));
    const StageSolution sol = solve_stage(inst, t, i, chi, pools_km1.at(t + 1), opts);
    if (t == 1) out.path.first_stage_value = sol.value;
    out.path.stage_costs(t - 1) =
        inst.stage_scenarios(t)[static_cast<size_t>(i)].c.dot(sol.x);
    out.path.model_values(t - 1) = sol.theta;
    out.path.states.push_back(sol.x);
    out.indices.push_back(i);
    chi = sol.x;
  }
  return out;
}

PoolSet sddp_backward(const Instance& inst, const ForwardPath& path,
                      const PoolSet& pools_km1, int born,
                      const SolveConfig& config) {
  return backward_pass(inst, path.states, pools_km1, born, config);
}

ForwardBatch estimate_upper_bound(const Instance& inst, const PoolSet& pools_km1,
                                  std::uint64_t seed, int L,
                                  const SolveConfig& config, int k,
                                  const ScenarioPicker* override_first) {
  MSDDP_REQUIRE(L >= 1, "estimate_upper_bound: needs at least one replica");
  ForwardBatch batch;
  batch.paths.resize(static_cast<size_t>(L));
  parallel_for(L, config.threads, [&](int l) {
    if (l == 0 && override_first) {
      batch.paths[0] = sddp_forward(inst, pools_km1, *override_first, k, config);
    } else {
      const SelectionStream stream(seed, l);
      batch.paths[static_cast<size_t>(l)] =
          sddp_forward(inst, pools_km1, stream, k, config);
    }
  });
  batch.estimate.replicas.resize(L);
  for (int l = 0; l < L; ++l)
    batch.estimate.replicas(l) = batch.paths[static_cast<size_t>(l)].path.cost(inst.lambda);
  batch.estimate.mean = batch.estimate.replicas.mean();
  if (L > 1) {
    const double sq =
        (batch.estimate.replicas.array() - batch.estimate.mean).square().sum();
    batch.estimate.sample_std = std::sqrt(sq / (L - 1));
  } else {
    batch.estimate.sample_std = 0.0;
  }
  return batch;
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

/// Cuts of one backward sweep computed against a private copy of the base
/// pools, so replica batches are independent and can be merged in order.
std::vector<Cut> backward_cut_batch(const Instance& inst,
                                    const std::vector<Vector>& states,
                                    const PoolSet& base, int born,
                                    const SolveConfig& config) {
  PoolSet pools = backward_pass(inst, states, base, born, config);
  std::vector<Cut> cuts;
  for (int t = 2; t <= inst.T; ++t) cuts.push_back(pools.at(t).cuts.back());
  return cuts;
}

}  // namespace

SddpResult sddp_solve(const Instance& inst, const SolveConfig& config,
                      const ScenarioPicker* override_picker) {
  require_valid(inst);
  MSDDP_REQUIRE(config.schedule.horizon() == inst.T,
                "sddp_solve: schedule horizon does not match the instance");
  MSDDP_REQUIRE(config.forward_replicas >= 1,
                "sddp_solve: forward_replicas must be at least 1");
  if (config.stop == StopRule::Distance) {
    MSDDP_REQUIRE(config.audit,
                  "sddp_solve: the distance stopping rule requires audit mode");
  }
  const LpOptions opts{config.lp_tolerance};

  SddpResult res;
  res.state.pools = initial_pools(inst);
  res.state.sets = make_saturated_sets(inst, config.schedule);
  res.state.lb = -std::numeric_limits<double>::infinity();

  for (int k = 1; k <= config.max_iterations; ++k) {
    ForwardBatch batch =
        estimate_upper_bound(inst, res.state.pools, config.seed,
                             config.forward_replicas, config, k, override_picker);
    const SddpPath& lead = batch.paths.front();
    res.state.lb = lead.path.first_stage_value;
    res.state.first_stage = lead.path.states.front();

    IterationRecord rec;
    rec.k = k;
    rec.lb = res.state.lb;
    rec.ub_mean = batch.estimate.mean;
    rec.ub_std = batch.estimate.sample_std;
    rec.path = flatten(lead.path.states);
    rec.chosen = lead.indices;

    bool stop = false;
    bool grew = false;
    if (config.audit) {
      // Average candidate distance per stage along the replica-0 path
      // (all candidates solved), plus the same admission rule as the
      // explorative method driven by those averages.
      Vector gbar(inst.T + 1);
      Vector chi = Vector::Zero(inst.dim(0));
      for (int t = 1; t <= inst.T; ++t) {
        const int n_scen = inst.num_scenarios(t);
        if (t == inst.T) {
          gbar(t) = 0.0;
        } else {
          std::vector<Vector> cands(static_cast<size_t>(n_scen));
          parallel_for(n_scen, config.threads, [&](int i) {
            cands[static_cast<size_t>(i)] =
                solve_stage(inst, t, i, chi, res.state.pools.at(t + 1), opts).x;
          });
          double sum = 0.0;
          for (int i = 0; i < n_scen; ++i)
            sum += distance_to_saturated(res.state.sets[static_cast<size_t>(t)],
                                         cands[static_cast<size_t>(i)]);
          gbar(t) = sum / n_scen;
        }
        chi = lead.path.states[static_cast<size_t>(t - 1)];
      }
      bool all_small = true;
      for (int t = 1; t <= inst.T - 1; ++t)
        if (!(gbar(t) <= config.schedule.delta(t))) all_small = false;
      stop = config.stop == StopRule::Distance && all_small;
      if (!stop) {
        for (int t = inst.T; t >= 2; --t) {
          const double delta_t = t == inst.T ? 0.0 : config.schedule.delta(t);
          if (gbar(t) <= delta_t) {
            grew |= admit_saturated(res.state.sets[static_cast<size_t>(t - 1)],
                                    lead.path.states[static_cast<size_t>(t - 2)],
                                    config.schedule.eps(t - 1), k);
          }
        }
      }
      rec.g1 = gbar(1);
      rec.q = grew ? 1 : 0;
      for (int t = 1; t <= inst.T - 1; ++t)
        rec.saturation_counts.push_back(res.state.sets[static_cast<size_t>(t)].size());
    }
    if (config.stop == StopRule::Statistical) {
      const double upper = batch.estimate.mean +
                           config.stat_z * batch.estimate.sample_std /
                               std::sqrt(static_cast<double>(config.forward_replicas));
      stop = upper - res.state.lb <= config.stat_gap;
    }

    if (!stop) {
      // Replica batches are computed against the common base pools and
      // merged in replica order.
      std::vector<std::vector<Cut>> batches(batch.paths.size());
      parallel_for(static_cast<int>(batch.paths.size()), config.threads, [&](int l) {
        batches[static_cast<size_t>(l)] = backward_cut_batch(
            inst, batch.paths[static_cast<size_t>(l)].path.states, res.state.pools,
            k, config);
      });
      for (const auto& cuts : batches)
        for (int t = 2; t <= inst.T; ++t)
          res.state.pools.at(t) =
              add_cut(std::move(res.state.pools.at(t)), cuts[static_cast<size_t>(t - 2)]);
    }
    res.state.history.push_back(std::move(rec));
    if (stop) {
      res.status = RunStatus::Converged;
      log_info("sddp: stopped at iteration " + std::to_string(k));
      return res;
    }
    log_debug("sddp k=" + std::to_string(k) + " lb=" + format_double(res.state.lb) +
              " ub_mean=" + format_double(batch.estimate.mean));
  }
  res.status = RunStatus::IterationLimit;
  return res;
}

}  // namespace msddp
