#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace msddp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Static shape of one stage: decision dimension, constraint row counts and
/// the box that bounds every feasible decision.
struct StageShape {
  Eigen::Index n = 0;  ///< decision/state dimension
  Eigen::Index m = 0;  ///< equality rows
  Eigen::Index p = 0;  ///< inequality rows
  Vector lower;        ///< box lower bounds, size n
  Vector upper;        ///< box upper bounds, size n

  /// Largest box side length; an upper bound on the stage diameter in the
  /// max norm.
  double diameter() const { return (upper - lower).maxCoeff(); }
};

/// One scenario of the stage data. The subproblem reads
///   minimize  c'x            subject to
///   A x = B chi + b,  G x <= Q chi + q,  lower <= x <= upper,
/// where chi is the previous-stage state. B and Q have one column per
/// previous-stage dimension; at stage 1 they are all-zero by convention
/// (the solvers pass chi = 0 there).
struct Realization {
  Matrix A;  ///< m x n
  Matrix B;  ///< m x n_prev
  Vector b;  ///< m
  Vector c;  ///< n, stage cost
  Matrix G;  ///< p x n
  Matrix Q;  ///< p x n_prev
  Vector q;  ///< p
};

/// A full multi-stage problem with finitely many stage-wise independent
/// scenarios per stage. Stage numbers are 1-based throughout the toolkit.
struct Instance {
  int T = 0;
  double lambda = 1.0;                             ///< discount factor in (0, 1]
  std::vector<StageShape> stages;                  ///< size T, stage t at [t-1]
  std::vector<std::vector<Realization>> scenarios; ///< size T; N_1 == 1

  const StageShape& shape(int t) const { return stages[static_cast<size_t>(t - 1)]; }
  const std::vector<Realization>& stage_scenarios(int t) const {
    return scenarios[static_cast<size_t>(t - 1)];
  }
  int num_scenarios(int t) const {
    return static_cast<int>(scenarios[static_cast<size_t>(t - 1)].size());
  }

  /// Decision dimension of stage t; dim(0) is the dimension used for the
  /// artificial pre-first state (equal to dim(1), always multiplied by a
  /// zero matrix).
  Eigen::Index dim(int t) const { return stages[static_cast<size_t>(t < 1 ? 0 : t - 1)].n; }

  bool single_scenario() const {
    for (const auto& list : scenarios)
      if (list.size() != 1) return false;
    return true;
  }
};

/// Checks every structural invariant and returns one message per violation.
/// An empty result means the instance is well formed. Violations are data,
/// not errors; nothing throws here.
std::vector<std::string> validate_instance(const Instance& inst);

/// Throws InvalidInput listing all violations when the instance is malformed.
void require_valid(const Instance& inst);

}  // namespace msddp
