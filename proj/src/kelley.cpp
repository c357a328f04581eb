#include "msddp/kelley.hpp"

#include <cmath>
#include <limits>

#include "msddp/errors.hpp"

namespace msddp {

namespace {

/// Valid constant lower bound for the current model over the box: the
/// smallest box-minimum of any cut, so the epigraph floor never cuts into
/// the model minimum.
double model_floor(const std::vector<Cut>& cuts, const Vector& lower,
                   const Vector& upper) {
  double best = std::numeric_limits<double>::infinity();
  for (const Cut& cut : cuts) {
    double v = cut.intercept;
    for (Eigen::Index d = 0; d < cut.gradient.size(); ++d) {
      const double g = cut.gradient(d);
      v += g >= 0 ? g * (lower(d) - cut.anchor(d)) : g * (upper(d) - cut.anchor(d));
    }
    best = std::min(best, v);
  }
  return best;
}

}  // namespace

KelleyResult kelley_solve(const StaticProblem& prob, const Vector& start,
                          double eps, int max_iter, const LpOptions& opts) {
  MSDDP_REQUIRE(eps > 0, "kelley_solve: eps must be positive");
  MSDDP_REQUIRE(max_iter >= 1, "kelley_solve: max_iter must be positive");
  const Eigen::Index n = prob.lower.size();
  MSDDP_REQUIRE(start.size() == n && prob.upper.size() == n,
                "kelley_solve: dimension mismatch");
  MSDDP_REQUIRE(((start - prob.lower).array() >= -1e-12).all() &&
                    ((prob.upper - start).array() >= -1e-12).all(),
                "kelley_solve: start point outside the box");

  // The model minimization reuses the stage LP: zero stage cost, unit
  // discount, the cut list as the pool. Its optimal value is the model
  // minimum and its optimizer the next iterate.
  Realization shellr;
  shellr.A.resize(0, n);
  shellr.B.resize(0, n);
  shellr.b.resize(0);
  shellr.c = Vector::Zero(n);
  shellr.G.resize(0, n);
  shellr.Q.resize(0, n);
  shellr.q.resize(0);
  StageShape shell;
  shell.n = n;
  shell.m = 0;
  shell.p = 0;
  shell.lower = prob.lower;
  shell.upper = prob.upper;
  const Vector chi = Vector::Zero(n);

  KelleyResult res;
  Vector x = start;
  auto [fx, gx] = prob.oracle(x);
  res.iterates.push_back(x);
  res.values.push_back(fx);
  res.upper = fx;
  res.best_point = x;
  res.lower = -std::numeric_limits<double>::infinity();

  CutPool model;
  model.stage = 0;
  model.dim = n;

  for (int k = 1; k <= max_iter; ++k) {
    Cut cut;
    cut.anchor = x;
    cut.intercept = fx;
    cut.gradient = gx;
    cut.born = k;
    model.cuts.push_back(std::move(cut));
    model.floor = model_floor(model.cuts, prob.lower, prob.upper);

    const StageSolution sol = solve_stage(0, shellr, shell, chi, model, 1.0, opts);
    x = sol.x;
    res.lower = sol.value;
    std::tie(fx, gx) = prob.oracle(x);
    res.iterates.push_back(x);
    res.values.push_back(fx);
    if (fx < res.upper) {
      res.upper = fx;
      res.best_point = x;
    }
    res.lb_history.push_back(res.lower);
    res.ub_history.push_back(res.upper);
    res.iterations = k;
    if (res.upper - res.lower <= eps) {
      res.status = KelleyStatus::Converged;
      return res;
    }
  }
  res.status = KelleyStatus::IterationLimit;
  return res;
}

double min_pairwise_distance(const std::vector<Vector>& points) {
  MSDDP_REQUIRE(points.size() >= 2,
                "min_pairwise_distance: needs at least 2 points");
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      best = std::min(best, (points[i] - points[j]).lpNorm<Eigen::Infinity>());
  return best;
}

}  // namespace msddp
