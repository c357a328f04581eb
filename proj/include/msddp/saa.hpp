#pragma once

#include <cstdint>
#include <vector>

#include "msddp/instance.hpp"
#include "msddp/rng.hpp"
#include "msddp/subproblem.hpp"

namespace msddp {

/// Source of stage data for sample average approximation. Implementations
/// define the horizon, discount, per-stage shapes and a stage-conditional
/// draw; draws must be dimension-consistent with the shapes.
class ScenarioSampler {
 public:
  virtual ~ScenarioSampler() = default;
  virtual int horizon() const = 0;
  virtual double discount() const = 0;
  virtual StageShape shape(int t) const = 0;
  virtual Realization sample(int t, Rng& rng) const = 0;
};

/// Draws counts[t-1] i.i.d. realizations per stage from per-stage derived
/// streams, so stages are independent and the result is bit-reproducible
/// for a fixed seed. counts[0] must be 1.
Instance build_saa(const ScenarioSampler& sampler, const std::vector<int>& counts,
                   std::uint64_t seed);

/// Empirical per-stage Lipschitz estimates (size T+1, stage-indexed, entry 0
/// zero): the largest observed |F(x) - F(x')| / ||x - x'||_inf over sampled
/// probe pairs, where F is the stage cost plus the discounted exact
/// cost-to-go. A lower estimate of the true constant; on instances beyond
/// the oracle size guard the cost-to-go is taken from a scenario-subsampled
/// copy of the instance.
Eigen::VectorXd estimate_lipschitz(const Instance& inst, int probe_count,
                                   const LpOptions& opts = {});

}  // namespace msddp
