#pragma once

#include <limits>
#include <vector>

#include "msddp/ddp.hpp"

namespace msddp {

struct SaturatedPoint {
  Vector state;
  double eps = 0.0;   ///< saturation tolerance carried by the point
  int iteration = 0;  ///< iteration that admitted it
};

/// Saturated search points of one stage. Admission keeps members pairwise
/// more than `radius` apart in the max norm, so the size never exceeds
/// (D/radius + 1)^n for a stage of diameter D.
struct SaturatedSet {
  int stage = 0;
  bool terminal = false;  ///< last-stage set: distances are identically zero
  double radius = 0.0;    ///< delta for this stage
  std::vector<SaturatedPoint> points;

  int size() const { return static_cast<int>(points.size()); }
};

/// Max-norm distance from x to the set: 0 for terminal sets, +inf for an
/// empty non-terminal set.
double distance_to_saturated(const SaturatedSet& set,
                             const Eigen::Ref<const Vector>& x);

/// Appends x when it is more than `radius` away from every member; returns
/// whether the point was admitted.
bool admit_saturated(SaturatedSet& set, const Eigen::Ref<const Vector>& x,
                     double eps, int iteration);

/// Fresh per-stage sets, indexed by stage 1..T ([0] unused, [T] terminal).
std::vector<SaturatedSet> make_saturated_sets(const Instance& inst,
                                              const ToleranceSchedule& schedule);

/// Candidate solutions of one forward stage and their distances to the
/// saturated set; `chosen` attains the largest distance, ties resolved by
/// the lowest scenario index. Distances are +inf while the set is empty.
struct ExplorativeStep {
  int stage = 0;
  std::vector<Vector> candidates;
  Vector values;     ///< subproblem values per candidate
  Vector distances;  ///< g at each candidate
  int chosen = 0;

  double chosen_distance() const { return distances(chosen); }
};

struct EddpForward {
  ForwardPath path;
  std::vector<ExplorativeStep> steps;  ///< index by stage 1..T ([0] unused)
  double first_stage_distance = std::numeric_limits<double>::infinity();
};

/// Solves all N_t candidates per stage, picks the most distinguishable one
/// and reports the first-stage distance used for termination.
EddpForward eddp_forward(const Instance& inst, const PoolSet& pools_km1,
                         const std::vector<SaturatedSet>& sets_km1,
                         const SolveConfig& config);

struct EddpBackward {
  PoolSet pools;
  std::vector<SaturatedSet> sets;
  bool grew = false;  ///< some stage admitted a new point
};

/// Saturation bookkeeping plus the aggregate-cut backward pass. A stage-t
/// distance at or below delta_t marks x_{t-1} as saturated; it joins
/// S_{t-1} when it is also distinguishable from the existing members.
EddpBackward eddp_backward(const Instance& inst, const EddpForward& forward,
                           const PoolSet& pools_km1,
                           const std::vector<SaturatedSet>& sets_km1, int born,
                           const SolveConfig& config);

struct EddpState {
  PoolSet pools;
  std::vector<SaturatedSet> sets;
  double lb = 0.0;
  Vector first_stage;  ///< x_1 of the final iteration
  std::vector<IterationRecord> history;
};

struct EddpResult {
  EddpState state;
  RunStatus status = RunStatus::IterationLimit;
};

/// Explorative loop; terminates once the first-stage distance drops to
/// delta_0 (schedule.delta(0)). Every non-terminating iteration grows the
/// total number of saturated points by at least one.
EddpResult eddp_solve(const Instance& inst, const SolveConfig& config);

}  // namespace msddp
