#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace msddp {

/// Saturation tolerances and distinguishability radii driving termination
/// and the iteration-count bounds.
///
/// Index conventions, fixed across the toolkit:
///  - delta(i) and eps(i) carry subscript i in 0..T-1. delta(0) is the
///    first-stage termination radius; delta(t) for t >= 1 is the
///    distinguishability radius applied to stage-t states. eps(T-1) == 0.
///  - lipschitz(t) and model_lipschitz(t) carry the 1-based stage number t
///    in 1..T; entry 0 is unused.
///
/// The defining recursion is
///   eps(t-1) = (lipschitz(t) + model_lipschitz(t)) * delta(t) + lambda * eps(t)
/// with eps(T-1) = 0. All distances are max-norm distances.
struct ToleranceSchedule {
  Eigen::VectorXd delta;            ///< size T
  Eigen::VectorXd eps;              ///< size T
  Eigen::VectorXd lipschitz;        ///< size T+1, true cost-to-go constants M_t
  Eigen::VectorXd model_lipschitz;  ///< size T+1, model constants for the cut functions

  int horizon() const { return static_cast<int>(delta.size()); }

  /// Computable gap threshold: sum over stages t = 1..T of
  /// lambda^(t-1) * eps(t-1).
  double gap_threshold(double lambda) const;
};

/// Evaluates the saturation tolerances from the radii and Lipschitz bounds.
/// `delta` has size T (entries 0..T-1 as above); `lipschitz` and
/// `model_lipschitz` have size T+1 (stage-indexed). Returns eps of size T
/// with eps(T-1) == 0. Rejects negative entries, T < 2 and lambda outside
/// (0, 1].
Eigen::VectorXd epsilon_schedule(const Eigen::VectorXd& delta,
                                 const Eigen::VectorXd& lipschitz,
                                 const Eigen::VectorXd& model_lipschitz,
                                 double lambda, int T);

/// Uniform-parameter schedule: delta(i) = radius for all i, both Lipschitz
/// vectors constant.
ToleranceSchedule make_uniform_schedule(int T, double lambda, double radius,
                                        double lipschitz_bound,
                                        double model_lipschitz_bound);

/// General schedule from explicit vectors; eps is derived.
ToleranceSchedule make_schedule(const Eigen::VectorXd& delta,
                                const Eigen::VectorXd& lipschitz,
                                const Eigen::VectorXd& model_lipschitz,
                                double lambda);

enum class StopRule {
  Distance,     ///< ddp: computable gap; eddp: first-stage distance; sddp: audit distances
  Statistical,  ///< sddp only: replica upper-bound estimate against lb
  Budget,       ///< run max_iterations, never stop early
};

struct SolveConfig {
  ToleranceSchedule schedule;
  int max_iterations = 200;
  double lp_tolerance = 1e-8;
  std::uint64_t seed = 0;
  int forward_replicas = 1;  ///< L forward paths per iteration (sddp)
  int threads = 1;
  StopRule stop = StopRule::Distance;
  double gap_override = -1.0;  ///< >= 0 replaces the schedule gap threshold (ddp)
  bool audit = false;          ///< sddp: track candidate distances and saturation
  double stat_gap = 1e-3;      ///< sddp statistical stop threshold
  double stat_z = 1.96;        ///< sddp statistical stop z-score
};

}  // namespace msddp
