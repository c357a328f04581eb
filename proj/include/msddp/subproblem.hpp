#pragma once

#include <Eigen/Core>

#include "msddp/cutmodel.hpp"
#include "msddp/instance.hpp"

namespace msddp {

struct LpOptions {
  double tolerance = 1e-8;  ///< feasibility/optimality tolerance
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

/// Solution of one stage subproblem
///   minimize c'x + lambda * theta
///   subject to A x = B chi + b,  G x <= Q chi + q,
///              theta >= cut_j(x) for every cut, theta >= floor,
///              lower <= x <= upper.
///
/// Dual sign convention: under the Lagrangian
///   L = c'x + lambda*theta + y'(Ax - B chi - b) + mu'(Gx - Q chi - q)
/// with mu >= 0, the subgradient of the stage value with respect to chi is
/// -(B'y + Q'mu). The convention is pinned by the finite-difference tests.
struct StageSolution {
  SolveStatus status = SolveStatus::Optimal;
  Vector x;
  double theta = 0.0;
  double value = 0.0;       ///< c'x + lambda*theta
  Vector y;                 ///< equality duals, size m
  Vector mu;                ///< inequality duals, size p, >= 0 at optimum
  Vector cut_duals;         ///< nonnegative weights on the cut rows
  double dual_value = 0.0;  ///< certified bound; |value - dual_value| <= tol
  int pivots = 0;
};

/// Solves the stage subproblem; never throws on infeasible or unbounded
/// subproblems, the status field reports them instead.
StageSolution try_solve_stage(int t, const Realization& real,
                              const StageShape& shape,
                              const Eigen::Ref<const Vector>& chi,
                              const CutPool& next_pool, double lambda,
                              const LpOptions& opts);

/// Like try_solve_stage but converts infeasibility into RecourseViolation
/// and an unbounded status into UnboundedSubproblem.
StageSolution solve_stage(int t, const Realization& real, const StageShape& shape,
                          const Eigen::Ref<const Vector>& chi,
                          const CutPool& next_pool, double lambda,
                          const LpOptions& opts);

/// Convenience overload pulling shape, scenario and discount from the
/// instance. The scenario index is 0-based.
StageSolution solve_stage(const Instance& inst, int t, int scenario,
                          const Eigen::Ref<const Vector>& chi,
                          const CutPool& next_pool, const LpOptions& opts);

/// Builds the supporting cut of the stage value function at chi from an
/// optimal solution: intercept = optimal value, gradient = -(B'y + Q'mu).
Cut cut_from_solution(const StageSolution& sol, const Realization& real,
                      const Eigen::Ref<const Vector>& chi, int born);

/// Residuals certifying optimality; all should be at most a small multiple
/// of the LP tolerance on an optimal solve.
struct SolutionCheck {
  double primal_residual = 0.0;  ///< equality violation and inequality excess
  double box_violation = 0.0;
  double dual_gap = 0.0;          ///< |value - dual_value|
  double complementarity = 0.0;   ///< max |dual * slack| over inequality and cut rows
  double dual_sign = 0.0;         ///< max(0, -min mu, -min cut_duals)
  double theta_gap = 0.0;         ///< |theta - pool_eval(x)|
};

SolutionCheck check_stage_solution(const StageSolution& sol, const Realization& real,
                                   const StageShape& shape,
                                   const Eigen::Ref<const Vector>& chi,
                                   const CutPool& next_pool, double lambda);

}  // namespace msddp
