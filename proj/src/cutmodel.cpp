#include "msddp/cutmodel.hpp"

#include <cmath>

#include "msddp/errors.hpp"

namespace msddp {

double pool_eval(const CutPool& pool, const Eigen::Ref<const Vector>& x) {
  MSDDP_REQUIRE(x.size() == pool.dim,
                "pool_eval: argument dimension does not match the pool");
  double best = pool.floor;
  for (const Cut& cut : pool.cuts) best = std::max(best, cut.value_at(x));
  return best;
}

double pool_eval_version(const CutPool& pool, const Eigen::Ref<const Vector>& x,
                         int version) {
  MSDDP_REQUIRE(x.size() == pool.dim,
                "pool_eval_version: argument dimension does not match the pool");
  double best = pool.floor;
  for (const Cut& cut : pool.cuts)
    if (cut.born <= version) best = std::max(best, cut.value_at(x));
  return best;
}

CutPool add_cut(CutPool pool, Cut cut) {
  MSDDP_REQUIRE(cut.anchor.size() == pool.dim && cut.gradient.size() == pool.dim,
                "add_cut: cut dimension does not match the pool");
  MSDDP_REQUIRE(cut.anchor.allFinite() && cut.gradient.allFinite() &&
                    std::isfinite(cut.intercept),
                "add_cut: cut has non-finite entries");
  pool.cuts.push_back(std::move(cut));
  return pool;
}

double max_gradient_l1(const CutPool& pool) {
  double best = 0.0;
  for (const Cut& cut : pool.cuts)
    best = std::max(best, cut.gradient.lpNorm<1>());
  return best;
}

namespace {

/// Minimum of c'x over the stage box.
double box_min(const Vector& c, const Vector& lower, const Vector& upper) {
  double value = 0.0;
  for (Eigen::Index j = 0; j < c.size(); ++j)
    value += c(j) >= 0.0 ? c(j) * lower(j) : c(j) * upper(j);
  return value;
}

}  // namespace

double initial_floor(const Instance& inst, int t) {
  MSDDP_REQUIRE(t >= 2 && t <= inst.T + 1, "initial_floor: stage out of range");
  double floor = 0.0;
  for (int tau = inst.T; tau >= t; --tau) {
    const StageShape& shape = inst.shape(tau);
    MSDDP_REQUIRE(shape.lower.allFinite() && shape.upper.allFinite(),
                  "initial_floor: unbounded box at stage " + std::to_string(tau));
    double stage_min = std::numeric_limits<double>::infinity();
    for (const Realization& r : inst.stage_scenarios(tau))
      stage_min = std::min(stage_min, box_min(r.c, shape.lower, shape.upper));
    floor = stage_min + inst.lambda * floor;
  }
  return floor;
}

CutPool make_pool(const Instance& inst, int t) {
  CutPool pool;
  pool.stage = t;
  pool.dim = inst.dim(t - 1);
  pool.floor = t == inst.T + 1 ? 0.0 : initial_floor(inst, t);
  return pool;
}

PoolSet initial_pools(const Instance& inst) {
  PoolSet set;
  set.pools.resize(static_cast<size_t>(inst.T) + 2);
  for (int t = 2; t <= inst.T + 1; ++t) set.at(t) = make_pool(inst, t);
  return set;
}

}  // namespace msddp
