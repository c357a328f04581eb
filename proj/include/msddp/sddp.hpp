#pragma once

#include <cstdint>
#include <vector>

#include "msddp/eddp.hpp"

namespace msddp {

/// Source of the forward-phase scenario choices. pick() must be a pure
/// function of (iteration, stage) so runs replay exactly.
class ScenarioPicker {
 public:
  virtual ~ScenarioPicker() = default;
  virtual int pick(int k, int t, int n_scenarios) const = 0;
};

/// Seeded selection stream: independent uniform draws per (iteration,
/// stage, replica), derived counter-style so replicas can run concurrently
/// without changing results. The first stage always picks index 0.
class SelectionStream final : public ScenarioPicker {
 public:
  explicit SelectionStream(std::uint64_t seed, int replica = 0)
      : seed_(seed), replica_(replica) {}
  int pick(int k, int t, int n_scenarios) const override;

 private:
  std::uint64_t seed_;
  int replica_;
};

/// Replays recorded indices; used by the record/replay tests.
class ReplayStream final : public ScenarioPicker {
 public:
  explicit ReplayStream(std::vector<std::vector<int>> per_iteration)
      : indices_(std::move(per_iteration)) {}
  int pick(int k, int t, int n_scenarios) const override;

 private:
  std::vector<std::vector<int>> indices_;  ///< [k-1][t-1]
};

struct SddpPath {
  ForwardPath path;
  std::vector<int> indices;  ///< sampled scenario per stage, 0-based
};

/// Forward phase: one subproblem per stage along the sampled scenario.
SddpPath sddp_forward(const Instance& inst, const PoolSet& pools_km1,
                      const ScenarioPicker& picker, int k,
                      const SolveConfig& config);

/// Backward phase; identical cut construction to the explorative method.
PoolSet sddp_backward(const Instance& inst, const ForwardPath& path,
                      const PoolSet& pools_km1, int born,
                      const SolveConfig& config);

struct UpperBoundEstimate {
  Eigen::VectorXd replicas;  ///< discounted path costs, one per replica
  double mean = 0.0;
  double sample_std = 0.0;  ///< 0 when only one replica
};

struct ForwardBatch {
  UpperBoundEstimate estimate;
  std::vector<SddpPath> paths;
};

/// Runs L independent forward replicas against the same pools and averages
/// their discounted costs. Replica r uses the derived stream
/// SelectionStream(seed, r); passing `override_first` substitutes replica 0.
ForwardBatch estimate_upper_bound(const Instance& inst, const PoolSet& pools_km1,
                                  std::uint64_t seed, int L,
                                  const SolveConfig& config, int k = 1,
                                  const ScenarioPicker* override_first = nullptr);

struct SddpState {
  PoolSet pools;
  std::vector<SaturatedSet> sets;  ///< populated in audit mode
  double lb = 0.0;
  Vector first_stage;
  std::vector<IterationRecord> history;
};

struct SddpResult {
  SddpState state;
  RunStatus status = RunStatus::IterationLimit;
};

/// Randomized forward selection with aggregate backward cuts.
///
/// Stopping (config.stop):
///  - Distance: requires config.audit; stops once the average candidate
///    distance to the saturated sets is at most delta_t at every stage.
///  - Statistical: stops once ub_mean + z * std / sqrt(L) - lb <= stat_gap.
///  - Budget: runs max_iterations.
/// Audit mode solves every stage candidate along the replica-0 path to
/// measure distances and maintains the same saturation bookkeeping as the
/// explorative method.
SddpResult sddp_solve(const Instance& inst, const SolveConfig& config,
                      const ScenarioPicker* override_picker = nullptr);

}  // namespace msddp
