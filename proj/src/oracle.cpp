#include "msddp/oracle.hpp"

#include <cmath>

#include "msddp/parallel.hpp"
#include "msddp/rng.hpp"
#include "msddp/simplex.hpp"

namespace msddp {

namespace {

struct TreeNode {
  int t = 0;
  int scenario = 0;
  int parent = -1;
  double weight = 0.0;        ///< lambda^(t-t0) * product of 1/N_tau
  Eigen::Index var_offset = 0;
};

/// Builds the deterministic equivalent of the tail problem rooted at stage
/// t0 with fixed incoming state chi and solves it.
double solve_tree(const Instance& inst, int t0,
                  const Eigen::Ref<const Vector>& chi, const LpOptions& opts,
                  Vector* root_decision) {
  const int T = inst.T;
  std::vector<TreeNode> nodes;
  std::vector<std::vector<int>> by_stage(static_cast<size_t>(T + 1));

  Eigen::Index total_vars = 0;
  Eigen::Index total_rows = 0;
  {
    const int n_roots = inst.num_scenarios(t0);
    for (int i = 0; i < n_roots; ++i) {
      TreeNode node;
      node.t = t0;
      node.scenario = i;
      node.parent = -1;
      node.weight = 1.0 / n_roots;
      nodes.push_back(node);
      by_stage[static_cast<size_t>(t0)].push_back(static_cast<int>(nodes.size()) - 1);
    }
    for (int t = t0 + 1; t <= T; ++t) {
      const int n_scen = inst.num_scenarios(t);
      for (int parent : by_stage[static_cast<size_t>(t - 1)]) {
        for (int i = 0; i < n_scen; ++i) {
          TreeNode node;
          node.t = t;
          node.scenario = i;
          node.parent = parent;
          node.weight = nodes[static_cast<size_t>(parent)].weight * inst.lambda / n_scen;
          nodes.push_back(node);
          by_stage[static_cast<size_t>(t)].push_back(static_cast<int>(nodes.size()) - 1);
        }
      }
    }
    for (TreeNode& node : nodes) {
      const StageShape& s = inst.shape(node.t);
      node.var_offset = total_vars;
      total_vars += s.n;
      total_rows += s.m + s.p + s.n;
    }
  }
  if (total_vars > 100000)
    throw SizeGuard("scenario tree needs " + std::to_string(total_vars) +
                    " decision variables, limit is 100000");

  // Columns: per node [u (n)], then all slack columns appended afterwards
  // (one per inequality row and one per box row).
  const Eigen::Index slack_count = total_rows -
      [&] {
        Eigen::Index eq = 0;
        for (const TreeNode& node : nodes) eq += inst.shape(node.t).m;
        return eq;
      }();
  const Eigen::Index nv = total_vars + slack_count;
  Matrix A = Matrix::Zero(total_rows, nv);
  Vector b = Vector::Zero(total_rows);
  Vector c = Vector::Zero(nv);
  double constant = 0.0;

  Eigen::Index row = 0;
  Eigen::Index slack = total_vars;
  for (const TreeNode& node : nodes) {
    const StageShape& shape = inst.shape(node.t);
    const Realization& real =
        inst.stage_scenarios(node.t)[static_cast<size_t>(node.scenario)];
    const Vector& lo = shape.lower;
    const bool root = node.parent < 0;
    const TreeNode* parent = root ? nullptr : &nodes[static_cast<size_t>(node.parent)];
    const Vector parent_lo =
        root ? Vector() : inst.shape(parent->t).lower;

    c.segment(node.var_offset, shape.n) += node.weight * real.c;
    constant += node.weight * real.c.dot(lo);

    // A u - B u_parent = B * (chi or parent_lo) + b - A lo
    if (shape.m > 0) {
      A.block(row, node.var_offset, shape.m, shape.n) = real.A;
      Vector rhs = real.b - real.A * lo;
      if (root) {
        rhs += real.B * chi;
      } else {
        A.block(row, parent->var_offset, shape.m, real.B.cols()) -= real.B;
        rhs += real.B * parent_lo;
      }
      b.segment(row, shape.m) = rhs;
      row += shape.m;
    }
    // G u - Q u_parent + s = Q * (chi or parent_lo) + q - G lo
    for (Eigen::Index i = 0; i < shape.p; ++i) {
      A.block(row, node.var_offset, 1, shape.n) = real.G.row(i);
      double rhs = real.q(i) - real.G.row(i).dot(lo);
      if (root) {
        rhs += real.Q.row(i).dot(chi);
      } else {
        A.block(row, parent->var_offset, 1, real.Q.cols()) -= real.Q.row(i);
        rhs += real.Q.row(i).dot(parent_lo);
      }
      A(row, slack) = 1.0;
      b(row) = rhs;
      ++slack;
      ++row;
    }
    // u_i + s = upper_i - lower_i
    for (Eigen::Index i = 0; i < shape.n; ++i) {
      A(row, node.var_offset + i) = 1.0;
      A(row, slack) = 1.0;
      b(row) = shape.upper(i) - shape.lower(i);
      ++slack;
      ++row;
    }
  }

  const auto lp = Simplex::solve(A, b, c, opts.tolerance);
  if (lp.status == Simplex::Status::Infeasible)
    throw Error("scenario tree LP infeasible from stage " + std::to_string(t0));
  if (lp.status == Simplex::Status::Unbounded)
    throw Error("scenario tree LP unbounded from stage " + std::to_string(t0));

  if (root_decision) {
    const TreeNode& root = nodes.front();
    const StageShape& shape = inst.shape(root.t);
    *root_decision = shape.lower + lp.z.segment(root.var_offset, shape.n);
  }
  return lp.value + constant;
}

CutPool trivial_pool(Eigen::Index dim, int stage) {
  CutPool pool;
  pool.stage = stage;
  pool.dim = dim;
  pool.floor = 0.0;
  return pool;
}

/// Chord model of convex samples on a 1-D grid: the interpolant equals the
/// maximum of the segment lines, so it is exactly representable as a pool.
CutPool chord_pool(const Vector& grid, const Vector& values, int stage) {
  CutPool pool;
  pool.stage = stage;
  pool.dim = 1;
  pool.floor = values.minCoeff();
  for (Eigen::Index j = 0; j + 1 < grid.size(); ++j) {
    const double slope = (values(j + 1) - values(j)) / (grid(j + 1) - grid(j));
    Cut cut;
    cut.anchor = Vector::Constant(1, grid(j));
    cut.intercept = values(j);
    cut.gradient = Vector::Constant(1, slope);
    cut.born = 0;
    pool.cuts.push_back(std::move(cut));
  }
  return pool;
}

double max_chord_slope(const Vector& grid, const Vector& values) {
  double best = 0.0;
  for (Eigen::Index j = 0; j + 1 < grid.size(); ++j)
    best = std::max(best, std::abs((values(j + 1) - values(j)) /
                                   (grid(j + 1) - grid(j))));
  return best;
}

Vector linspace(double lo, double hi, int count) {
  Vector v(count);
  if (count == 1) {
    v(0) = lo;
    return v;
  }
  for (int i = 0; i < count; ++i)
    v(i) = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return v;
}

/// Mean stage value over all stage-t scenarios at incoming state chi,
/// against a fixed continuation pool.
double stage_average(const Instance& inst, int t,
                     const Eigen::Ref<const Vector>& chi, const CutPool& pool,
                     const LpOptions& opts) {
  double sum = 0.0;
  const int n_scen = inst.num_scenarios(t);
  for (int i = 0; i < n_scen; ++i)
    sum += solve_stage(inst, t, i, chi, pool, opts).value;
  return sum / n_scen;
}

}  // namespace

ExtensiveSolution extensive_form_value(const Instance& inst, const LpOptions& opts) {
  ExtensiveSolution out;
  const Vector chi0 = Vector::Zero(inst.dim(0));
  out.value = solve_tree(inst, 1, chi0, opts, &out.first_stage);
  return out;
}

double exact_value_at(const Instance& inst, int t,
                      const Eigen::Ref<const Vector>& chi, const LpOptions& opts) {
  MSDDP_REQUIRE(t >= 2 && t <= inst.T + 1, "exact_value_at: stage out of range");
  if (t == inst.T + 1) return 0.0;
  return solve_tree(inst, t, chi, opts, nullptr);
}

double first_stage_objective(const Instance& inst,
                             const Eigen::Ref<const Vector>& x1,
                             const LpOptions& opts) {
  const Realization& real = inst.stage_scenarios(1).front();
  return real.c.dot(x1) + inst.lambda * exact_value_at(inst, 2, x1, opts);
}

Vector GridValueFunction::node(Eigen::Index flat) const {
  Vector out(static_cast<Eigen::Index>(axes.size()));
  Eigen::Index rest = flat;
  for (Eigen::Index d = static_cast<Eigen::Index>(axes.size()) - 1; d >= 0; --d) {
    const Eigen::Index len = axes[static_cast<size_t>(d)].size();
    out(d) = axes[static_cast<size_t>(d)](rest % len);
    rest /= len;
  }
  return out;
}

double GridValueFunction::eval(const Eigen::Ref<const Vector>& x) const {
  MSDDP_REQUIRE(x.size() == static_cast<Eigen::Index>(axes.size()),
                "grid eval: dimension mismatch");
  const Eigen::Index dims = x.size();
  // Locate the cell and interpolation weight per dimension.
  std::vector<Eigen::Index> cell(static_cast<size_t>(dims));
  std::vector<double> w(static_cast<size_t>(dims));
  for (Eigen::Index d = 0; d < dims; ++d) {
    const Vector& axis = axes[static_cast<size_t>(d)];
    const Eigen::Index len = axis.size();
    double v = std::min(std::max(x(d), axis(0)), axis(len - 1));
    Eigen::Index j = 0;
    while (j + 2 < len && axis(j + 1) <= v) ++j;
    cell[static_cast<size_t>(d)] = j;
    const double span = axis(j + 1) - axis(j);
    w[static_cast<size_t>(d)] = span > 0 ? (v - axis(j)) / span : 0.0;
  }
  // Multilinear blend over the 2^dims cell corners.
  double result = 0.0;
  const int corners = 1 << dims;
  for (int mask = 0; mask < corners; ++mask) {
    double weight = 1.0;
    Eigen::Index flat = 0;
    for (Eigen::Index d = 0; d < dims; ++d) {
      const Eigen::Index len = axes[static_cast<size_t>(d)].size();
      const bool hi = (mask >> d) & 1;
      weight *= hi ? w[static_cast<size_t>(d)] : 1.0 - w[static_cast<size_t>(d)];
      flat = flat * len + cell[static_cast<size_t>(d)] + (hi ? 1 : 0);
    }
    if (weight > 0.0) result += weight * values(flat);
  }
  return result;
}

GridValueFunction exact_value_grid(const Instance& inst, int t, int resolution,
                                   const LpOptions& opts,
                                   const Eigen::VectorXd* lipschitz, int threads) {
  MSDDP_REQUIRE(t >= 2 && t <= inst.T, "exact_value_grid: stage out of range");
  MSDDP_REQUIRE(resolution >= 2, "exact_value_grid: resolution must be at least 2");
  const Eigen::Index dims = inst.dim(t - 1);
  MSDDP_REQUIRE(dims <= 2, "exact_value_grid: incoming state dimension above 2");

  GridValueFunction grid;
  grid.stage = t;
  const StageShape& prev = inst.shape(t - 1);
  for (Eigen::Index d = 0; d < dims; ++d)
    grid.axes.push_back(linspace(prev.lower(d), prev.upper(d), resolution));
  Eigen::Index count = 1;
  for (const auto& axis : grid.axes) count *= axis.size();
  grid.values.resize(count);

  bool chain_1d = true;
  for (int tau = t; tau <= inst.T - 1; ++tau)
    if (inst.dim(tau) != 1) chain_1d = false;

  if (!chain_1d) {
    // Exact node values through tail scenario trees; no interpolation error.
    std::vector<double> vals(static_cast<size_t>(count));
    parallel_for(static_cast<int>(count), threads, [&](int idx) {
      vals[static_cast<size_t>(idx)] = exact_value_at(inst, t, grid.node(idx), opts);
    });
    for (Eigen::Index i = 0; i < count; ++i) grid.values(i) = vals[static_cast<size_t>(i)];
    grid.error_bound = 0.0;
    return grid;
  }

  // Backward sweep with piecewise-linear chord continuations.
  CutPool continuation = trivial_pool(inst.dim(inst.T), inst.T + 1);
  double err = 0.0;
  for (int tau = inst.T; tau >= t + 1; --tau) {
    const StageShape& domain = inst.shape(tau - 1);
    const Vector axis = linspace(domain.lower(0), domain.upper(0), resolution);
    Vector vals(axis.size());
    std::vector<double> slot(static_cast<size_t>(axis.size()));
    parallel_for(static_cast<int>(axis.size()), threads, [&](int idx) {
      const Vector chi = Vector::Constant(1, axis(idx));
      slot[static_cast<size_t>(idx)] = stage_average(inst, tau, chi, continuation, opts);
    });
    for (Eigen::Index i = 0; i < axis.size(); ++i) vals(i) = slot[static_cast<size_t>(i)];
    const double step =
        axis.size() > 1 ? (axis(axis.size() - 1) - axis(0)) / (axis.size() - 1) : 0.0;
    const double slope =
        lipschitz ? (*lipschitz)(tau) : max_chord_slope(axis, vals);
    err = inst.lambda * (slope * step + err);
    continuation = chord_pool(axis, vals, tau);
  }

  std::vector<double> slot(static_cast<size_t>(count));
  parallel_for(static_cast<int>(count), threads, [&](int idx) {
    slot[static_cast<size_t>(idx)] = stage_average(inst, t, grid.node(idx), continuation, opts);
  });
  for (Eigen::Index i = 0; i < count; ++i) grid.values(i) = slot[static_cast<size_t>(i)];
  grid.error_bound = err;
  return grid;
}

double audit_cut_validity(const CutPool& pool, const GridValueFunction& grid,
                          int probes, std::uint64_t seed) {
  MSDDP_REQUIRE(pool.stage == grid.stage, "audit_cut_validity: stage mismatch");
  MSDDP_REQUIRE(pool.dim == static_cast<Eigen::Index>(grid.axes.size()),
                "audit_cut_validity: dimension mismatch");
  Rng rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  Vector x(pool.dim);
  for (int k = 0; k < probes; ++k) {
    for (Eigen::Index d = 0; d < pool.dim; ++d) {
      const Vector& axis = grid.axes[static_cast<size_t>(d)];
      x(d) = rng.next_range(axis(0), axis(axis.size() - 1));
    }
    worst = std::max(worst, pool_eval(pool, x) - grid.eval(x));
  }
  return worst;
}

}  // namespace msddp
