#include "msddp/subproblem.hpp"

#include <cmath>

#include "msddp/simplex.hpp"

namespace msddp {

namespace {

// Standard-form layout, after shifting x = lower + u and theta = floor + t:
// columns [u (n) | t (1) | s_in (p) | s_cut (J) | s_ub (n)], rows
// [equalities (m) | inequalities (p) | cuts (J) | upper bounds (n)].
struct StandardForm {
  Matrix A;
  Vector b;
  Vector c;
  double constant = 0.0;
  Eigen::Index n = 0, m = 0, p = 0, J = 0;
};

StandardForm build(const Realization& real, const StageShape& shape,
                   const Eigen::Ref<const Vector>& chi, const CutPool& pool,
                   double lambda) {
  StandardForm f;
  f.n = shape.n;
  f.m = shape.m;
  f.p = shape.p;
  f.J = static_cast<Eigen::Index>(pool.cuts.size());
  const Eigen::Index nv = 2 * f.n + 1 + f.p + f.J;
  const Eigen::Index nr = f.m + f.p + f.J + f.n;
  const Eigen::Index theta_col = f.n;
  const Eigen::Index sin_col = f.n + 1;
  const Eigen::Index scut_col = sin_col + f.p;
  const Eigen::Index sub_col = scut_col + f.J;

  f.A = Matrix::Zero(nr, nv);
  f.b = Vector::Zero(nr);
  f.c = Vector::Zero(nv);

  const Vector& lo = shape.lower;
  f.c.head(f.n) = real.c;
  f.c(theta_col) = lambda;
  f.constant = real.c.dot(lo) + lambda * pool.floor;

  // A u = B chi + b - A lo
  if (f.m > 0) {
    f.A.block(0, 0, f.m, f.n) = real.A;
    f.b.head(f.m) = real.B * chi + real.b - real.A * lo;
  }
  // G u + s_in = Q chi + q - G lo
  for (Eigen::Index i = 0; i < f.p; ++i) {
    f.A.block(f.m + i, 0, 1, f.n) = real.G.row(i);
    f.A(f.m + i, sin_col + i) = 1.0;
    f.b(f.m + i) = real.Q.row(i).dot(chi) + real.q(i) - real.G.row(i).dot(lo);
  }
  // g_j' u - t + s_j = floor - alpha_j - g_j' lo,  alpha_j = intercept - g_j' anchor
  for (Eigen::Index j = 0; j < f.J; ++j) {
    const Cut& cut = pool.cuts[static_cast<size_t>(j)];
    const Eigen::Index row = f.m + f.p + j;
    f.A.block(row, 0, 1, f.n) = cut.gradient.transpose();
    f.A(row, theta_col) = -1.0;
    f.A(row, scut_col + j) = 1.0;
    const double alpha = cut.intercept - cut.gradient.dot(cut.anchor);
    f.b(row) = pool.floor - alpha - cut.gradient.dot(lo);
  }
  // u_i + s_ub_i = upper_i - lower_i
  for (Eigen::Index i = 0; i < f.n; ++i) {
    const Eigen::Index row = f.m + f.p + f.J + i;
    f.A(row, i) = 1.0;
    f.A(row, sub_col + i) = 1.0;
    f.b(row) = shape.upper(i) - shape.lower(i);
  }
  return f;
}

}  // namespace

StageSolution try_solve_stage(int t, const Realization& real,
                              const StageShape& shape,
                              const Eigen::Ref<const Vector>& chi,
                              const CutPool& next_pool, double lambda,
                              const LpOptions& opts) {
  MSDDP_REQUIRE(chi.size() == real.B.cols(),
                "solve_stage: incoming state dimension mismatch at stage " +
                    std::to_string(t));
  MSDDP_REQUIRE(next_pool.dim == shape.n,
                "solve_stage: pool dimension mismatch at stage " + std::to_string(t));

  const StandardForm f = build(real, shape, chi, next_pool, lambda);
  const auto lp = Simplex::solve(f.A, f.b, f.c, opts.tolerance);

  StageSolution sol;
  sol.pivots = lp.pivots;
  if (lp.status == Simplex::Status::Infeasible) {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }
  if (lp.status == Simplex::Status::Unbounded) {
    sol.status = SolveStatus::Unbounded;
    return sol;
  }
  sol.status = SolveStatus::Optimal;
  sol.x = shape.lower + lp.z.head(f.n);
  sol.theta = next_pool.floor + lp.z(f.n);
  sol.value = lp.value + f.constant;
  sol.dual_value = lp.dual_value + f.constant;
  sol.y = -lp.duals.head(f.m);
  sol.mu = -lp.duals.segment(f.m, f.p);
  sol.cut_duals = -lp.duals.segment(f.m + f.p, f.J);
  return sol;
}

StageSolution solve_stage(int t, const Realization& real, const StageShape& shape,
                          const Eigen::Ref<const Vector>& chi,
                          const CutPool& next_pool, double lambda,
                          const LpOptions& opts) {
  StageSolution sol = try_solve_stage(t, real, shape, chi, next_pool, lambda, opts);
  if (sol.status == SolveStatus::Infeasible) throw RecourseViolation(t, chi);
  if (sol.status == SolveStatus::Unbounded) throw UnboundedSubproblem(t);
  return sol;
}

StageSolution solve_stage(const Instance& inst, int t, int scenario,
                          const Eigen::Ref<const Vector>& chi,
                          const CutPool& next_pool, const LpOptions& opts) {
  const Realization& real = inst.stage_scenarios(t)[static_cast<size_t>(scenario)];
  StageSolution sol =
      try_solve_stage(t, real, inst.shape(t), chi, next_pool, inst.lambda, opts);
  if (sol.status == SolveStatus::Infeasible)
    throw RecourseViolation(t, chi, scenario);
  if (sol.status == SolveStatus::Unbounded) throw UnboundedSubproblem(t);
  return sol;
}

Cut cut_from_solution(const StageSolution& sol, const Realization& real,
                      const Eigen::Ref<const Vector>& chi, int born) {
  MSDDP_REQUIRE(sol.status == SolveStatus::Optimal,
                "cut_from_solution: solution is not optimal");
  Cut cut;
  cut.anchor = chi;
  cut.intercept = sol.value;
  cut.gradient = -(real.B.transpose() * sol.y + real.Q.transpose() * sol.mu);
  cut.born = born;
  return cut;
}

SolutionCheck check_stage_solution(const StageSolution& sol, const Realization& real,
                                   const StageShape& shape,
                                   const Eigen::Ref<const Vector>& chi,
                                   const CutPool& next_pool, double lambda) {
  SolutionCheck out;
  if (sol.status != SolveStatus::Optimal) return out;
  if (real.A.rows() > 0) {
    out.primal_residual =
        (real.A * sol.x - real.B * chi - real.b).cwiseAbs().maxCoeff();
  }
  Vector slack_in;
  if (real.G.rows() > 0) {
    slack_in = real.Q * chi + real.q - real.G * sol.x;
    out.primal_residual = std::max(out.primal_residual, -slack_in.minCoeff());
  }
  out.box_violation = std::max(
      0.0, std::max((shape.lower - sol.x).maxCoeff(), (sol.x - shape.upper).maxCoeff()));
  out.dual_gap = std::abs(sol.value - sol.dual_value);
  double compl_max = 0.0;
  if (slack_in.size() > 0) {
    for (Eigen::Index i = 0; i < slack_in.size(); ++i)
      compl_max = std::max(compl_max, std::abs(sol.mu(i) * slack_in(i)));
  }
  for (Eigen::Index j = 0; j < sol.cut_duals.size(); ++j) {
    const Cut& cut = next_pool.cuts[static_cast<size_t>(j)];
    const double slack = sol.theta - cut.value_at(sol.x);
    compl_max = std::max(compl_max, std::abs(sol.cut_duals(j) * slack));
  }
  out.complementarity = compl_max;
  double sign = 0.0;
  if (sol.mu.size() > 0) sign = std::max(sign, -sol.mu.minCoeff());
  if (sol.cut_duals.size() > 0) sign = std::max(sign, -sol.cut_duals.minCoeff());
  out.dual_sign = std::max(0.0, sign);
  out.theta_gap = lambda > 0.0 ? std::abs(sol.theta - pool_eval(next_pool, sol.x)) : 0.0;
  return out;
}

}  // namespace msddp
