#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "msddp/subproblem.hpp"

namespace msddp {

/// Static convex problem min f(x) over a box, accessed through a
/// value-plus-subgradient oracle. At kinks any valid subgradient is
/// acceptable.
struct StaticProblem {
  std::function<std::pair<double, Vector>(const Vector&)> oracle;
  Vector lower;
  Vector upper;
  double lipschitz = 0.0;  ///< max-norm Lipschitz constant of f on the box
};

enum class KelleyStatus { Converged, IterationLimit };

struct KelleyResult {
  KelleyStatus status = KelleyStatus::IterationLimit;
  int iterations = 0;          ///< loop iterations performed
  Vector best_point;
  double upper = 0.0;          ///< best objective value seen
  double lower = 0.0;          ///< final model minimum
  std::vector<Vector> iterates;      ///< every generated search point
  std::vector<double> values;        ///< f at each iterate
  std::vector<double> lb_history;    ///< per iteration
  std::vector<double> ub_history;    ///< per iteration
};

/// Cutting-plane loop: add the cut at the current point, minimize the model
/// over the box (an epigraph LP through the stage-subproblem engine), then
/// stop once best-seen minus model minimum is at most eps. While the gap
/// stays above eps every new point lands more than eps/lipschitz away from
/// all previous ones, so iterates.size() - 1 points are pairwise separated.
KelleyResult kelley_solve(const StaticProblem& prob, const Vector& start,
                          double eps, int max_iter, const LpOptions& opts = {});

/// Minimum pairwise max-norm distance; rejects fewer than two points.
double min_pairwise_distance(const std::vector<Vector>& points);

}  // namespace msddp
