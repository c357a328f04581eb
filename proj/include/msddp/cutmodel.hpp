#pragma once

#include <Eigen/Core>
#include <limits>
#include <vector>

#include "msddp/instance.hpp"

namespace msddp {

/// An affine minorant of a cost-to-go function: value_at(x) never exceeds
/// the function it supports and is tight near the anchor.
struct Cut {
  Vector anchor;
  double intercept = 0.0;  ///< model value at the anchor
  Vector gradient;
  int born = 0;  ///< iteration that produced the cut

  double value_at(const Eigen::Ref<const Vector>& x) const {
    return intercept + gradient.dot(x - anchor);
  }
};

/// Piecewise-linear under-approximation of V_stage, a function of the
/// previous-stage state. Evaluation is the maximum of a constant floor and
/// every cut; the cut list is append-only, so evaluations are pointwise
/// nondecreasing across versions.
struct CutPool {
  int stage = 0;
  Eigen::Index dim = 0;  ///< expected argument dimension
  double floor = 0.0;    ///< constant initial lower bound
  std::vector<Cut> cuts;
};

double pool_eval(const CutPool& pool, const Eigen::Ref<const Vector>& x);

/// Evaluates the snapshot containing only cuts with born <= version.
double pool_eval_version(const CutPool& pool, const Eigen::Ref<const Vector>& x,
                         int version);

/// Returns a new pool extended by one cut; the argument pool is untouched.
CutPool add_cut(CutPool pool, Cut cut);

/// Largest cut-gradient l1 norm; an empirical stand-in for the model
/// Lipschitz constant. Zero for a cut-free pool.
double max_gradient_l1(const CutPool& pool);

/// A finite constant lower bound on V_t over the whole box, valid for every
/// argument: the discounted sum of per-stage box minima of the cost vectors,
/// minimized across scenarios. t may be T+1, which yields 0.
double initial_floor(const Instance& inst, int t);

/// Fresh stage-t pool (t in 2..T+1) with the computed floor and no cuts.
CutPool make_pool(const Instance& inst, int t);

/// Pools for every stage, indexed by the 1-based stage number of the value
/// function they approximate. Slots 0 and 1 are unused; slot T+1 is the
/// identically-zero terminal pool.
struct PoolSet {
  std::vector<CutPool> pools;  ///< size T+2

  const CutPool& at(int t) const { return pools[static_cast<size_t>(t)]; }
  CutPool& at(int t) { return pools[static_cast<size_t>(t)]; }
  int horizon() const { return static_cast<int>(pools.size()) - 2; }
};

PoolSet initial_pools(const Instance& inst);

}  // namespace msddp
