#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "msddp/cutmodel.hpp"
#include "msddp/instance.hpp"
#include "msddp/subproblem.hpp"

namespace msddp {

struct ExtensiveSolution {
  double value = 0.0;     ///< exact optimal value within the LP tolerance
  Vector first_stage;     ///< optimal first-stage decision
};

/// Deterministic-equivalent LP over the whole scenario tree, one variable
/// block per node, so nonanticipativity holds by construction. Guarded to
/// at most 1e5 decision variables.
ExtensiveSolution extensive_form_value(const Instance& inst,
                                       const LpOptions& opts = {});

/// Exact cost-to-go V_t(chi) via the tail scenario tree rooted at stage t.
/// t may be T+1, which yields 0. Same size guard as extensive_form_value.
double exact_value_at(const Instance& inst, int t,
                      const Eigen::Ref<const Vector>& chi,
                      const LpOptions& opts = {});

/// First-stage objective c_1'x1 + lambda * V_2(x1) of a candidate decision.
double first_stage_objective(const Instance& inst,
                             const Eigen::Ref<const Vector>& x1,
                             const LpOptions& opts = {});

/// Exact values of V_t on a dense lattice over the stage-(t-1) box.
/// Node values never undershoot V_t and exceed it by at most error_bound
/// (plus LP tolerance); eval() interpolates multilinearly between nodes,
/// which for convex values also errs on the high side only.
struct GridValueFunction {
  int stage = 0;
  std::vector<Vector> axes;  ///< per-dimension sorted coordinates
  Vector values;             ///< row-major over the lattice, first axis slowest
  double error_bound = 0.0;

  Eigen::Index size() const { return values.size(); }
  Vector node(Eigen::Index flat) const;
  double eval(const Eigen::Ref<const Vector>& x) const;
};

/// Computes the stage-t grid by backward recursion. When every intermediate
/// state dimension between t and T-1 equals one, continuation functions are
/// piecewise-linear chord models of the sampled values and the reported
/// error_bound is the accumulated interpolation slack; otherwise each node
/// is solved exactly through a tail scenario tree and error_bound is 0.
///
/// `lipschitz`, when given (size T+1, stage-indexed), scales the reported
/// interpolation bound; otherwise the largest sampled chord slope is used,
/// which is an empirical lower estimate of the true constant.
GridValueFunction exact_value_grid(const Instance& inst, int t, int resolution,
                                   const LpOptions& opts = {},
                                   const Eigen::VectorXd* lipschitz = nullptr,
                                   int threads = 1);

/// Largest pool overshoot max(pool_eval(x) - grid value) over `probes`
/// uniform points in the grid box. Valid pools keep this below
/// error_bound + (iterations) * lp_tolerance.
double audit_cut_validity(const CutPool& pool, const GridValueFunction& grid,
                          int probes, std::uint64_t seed = 1234);

}  // namespace msddp
