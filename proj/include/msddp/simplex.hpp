#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "msddp/errors.hpp"

namespace msddp {

/// Dense two-phase primal simplex for
///   minimize c'z   subject to   A z = b,  z >= 0.
///
/// Pivoting follows Bland's rule in both phases (smallest eligible column
/// index enters; ratio ties leave by smallest basic variable index), which
/// guarantees termination and makes every solve deterministic. On success
/// the row duals pi satisfy A_B' pi = c_B for the final basis, recomputed
/// from the original data so they are not polluted by tableau drift.
template <typename Scalar = double>
class DenseSimplex {
 public:
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  enum class Status { Optimal, Infeasible, Unbounded };

  struct Result {
    Status status = Status::Optimal;
    Vec z;          ///< primal solution, size n
    Vec duals;      ///< row duals, size m (0 on redundant rows)
    Scalar value = Scalar(0);
    Scalar dual_value = Scalar(0);
    int pivots = 0;
  };

  static Result solve(const Mat& A, const Vec& b, const Vec& c,
                      Scalar feas_tol = Scalar(1e-8)) {
    MSDDP_REQUIRE(A.rows() == b.size() && A.cols() == c.size(),
                  "simplex: inconsistent problem dimensions");
    const Eigen::Index m = A.rows();
    const Eigen::Index n = A.cols();

    Result res;
    res.z = Vec::Zero(n);
    res.duals = Vec::Zero(m);

    if (m == 0) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (c(j) < -kPivotTol) {
          res.status = Status::Unbounded;
          return res;
        }
      }
      res.status = Status::Optimal;
      return res;
    }

    // Normalize to nonnegative right-hand sides; row signs are undone when
    // the duals are reported.
    Mat A0 = A;
    Vec b0 = b;
    Vec sign = Vec::Ones(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (b0(i) < Scalar(0)) {
        A0.row(i) = -A0.row(i);
        b0(i) = -b0(i);
        sign(i) = Scalar(-1);
      }
    }

    // Phase 1 tableau: [A | I], artificial basis.
    Mat W(m, n + m);
    W.leftCols(n) = A0;
    W.rightCols(m) = Mat::Identity(m, m);
    Vec rhs = b0;
    std::vector<Eigen::Index> basis(static_cast<size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = n + i;

    Vec cost1 = Vec::Zero(n + m);
    cost1.tail(m).setOnes();
    int pivots = 0;
    if (!run(W, rhs, basis, cost1, n + m, pivots)) {
      throw Error("simplex: pivot limit exceeded in phase 1");
    }
    Scalar phase1 = Scalar(0);
    for (Eigen::Index i = 0; i < m; ++i)
      if (basis[static_cast<size_t>(i)] >= n) phase1 += rhs(i);
    if (phase1 > feas_tol) {
      res.status = Status::Infeasible;
      res.pivots = pivots;
      return res;
    }

    // Drive surviving artificials out of the basis; rows they cannot leave
    // are redundant and get dropped (their duals are zero).
    std::vector<Eigen::Index> kept_rows;
    kept_rows.reserve(static_cast<size_t>(m));
    std::vector<char> drop(static_cast<size_t>(m), 0);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (basis[static_cast<size_t>(i)] < n) continue;
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (std::abs(W(i, j)) > kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter >= 0) {
        pivot(W, rhs, basis, i, enter);
        ++pivots;
      } else {
        drop[static_cast<size_t>(i)] = 1;
      }
    }
    for (Eigen::Index i = 0; i < m; ++i)
      if (!drop[static_cast<size_t>(i)]) kept_rows.push_back(i);

    const Eigen::Index mk = static_cast<Eigen::Index>(kept_rows.size());
    Mat W2(mk, n);
    Vec rhs2(mk);
    std::vector<Eigen::Index> basis2(static_cast<size_t>(mk));
    for (Eigen::Index r = 0; r < mk; ++r) {
      const Eigen::Index i = kept_rows[static_cast<size_t>(r)];
      W2.row(r) = W.row(i).head(n);
      rhs2(r) = rhs(i);
      basis2[static_cast<size_t>(r)] = basis[static_cast<size_t>(i)];
    }

    // Phase 2 on the original objective.
    if (!run(W2, rhs2, basis2, c, n, pivots)) {
      if (pivots < 0) {
        res.status = Status::Unbounded;
        res.pivots = -pivots;
        return res;
      }
      throw Error("simplex: pivot limit exceeded in phase 2");
    }

    // Primal values from the final tableau.
    for (Eigen::Index r = 0; r < mk; ++r) {
      const Eigen::Index j = basis2[static_cast<size_t>(r)];
      if (j < n) res.z(j) = rhs2(r);
    }
    res.value = c.dot(res.z);

    // Duals from a fresh factorization of the final basis.
    Mat basis_cols(mk, mk);
    Vec cb(mk);
    for (Eigen::Index r = 0; r < mk; ++r) {
      const Eigen::Index j = basis2[static_cast<size_t>(r)];
      for (Eigen::Index r2 = 0; r2 < mk; ++r2)
        basis_cols(r2, r) = A0(kept_rows[static_cast<size_t>(r2)], j);
      cb(r) = c(j);
    }
    Vec pik = Vec::Zero(mk);
    if (mk > 0) {
      Eigen::FullPivLU<Mat> lu(basis_cols.transpose());
      pik = lu.solve(cb);
    }
    for (Eigen::Index r = 0; r < mk; ++r) {
      const Eigen::Index i = kept_rows[static_cast<size_t>(r)];
      res.duals(i) = sign(i) * pik(r);
    }
    res.dual_value = b.dot(res.duals);
    res.pivots = pivots;
    res.status = Status::Optimal;
    return res;
  }

 private:
  static constexpr Scalar kPivotTol = Scalar(1e-9);
  static constexpr Scalar kReducedCostTol = Scalar(1e-9);
  static constexpr int kPivotLimit = 200000;

  static void pivot(Mat& W, Vec& rhs, std::vector<Eigen::Index>& basis,
                    Eigen::Index r, Eigen::Index s) {
    const Scalar piv = W(r, s);
    W.row(r) /= piv;
    rhs(r) /= piv;
    for (Eigen::Index i = 0; i < W.rows(); ++i) {
      if (i == r) continue;
      const Scalar f = W(i, s);
      if (f != Scalar(0)) {
        W.row(i) -= f * W.row(r);
        rhs(i) -= f * rhs(r);
        if (rhs(i) < Scalar(0) && rhs(i) > Scalar(-1e-11)) rhs(i) = Scalar(0);
      }
    }
    basis[static_cast<size_t>(r)] = s;
  }

  /// Runs Bland-rule pivoting to optimality over the first `ncols` columns.
  /// Returns false with `pivots` negated on unboundedness, or false with
  /// `pivots` positive when the pivot cap is hit.
  static bool run(Mat& W, Vec& rhs, std::vector<Eigen::Index>& basis,
                  const Vec& cost, Eigen::Index ncols, int& pivots) {
    const Eigen::Index m = W.rows();
    for (;;) {
      if (pivots > kPivotLimit) return false;
      Vec cb(m);
      for (Eigen::Index i = 0; i < m; ++i) cb(i) = cost(basis[static_cast<size_t>(i)]);
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < ncols; ++j) {
        const Scalar rc = cost(j) - cb.dot(W.col(j));
        if (rc < -kReducedCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;  // optimal

      Scalar best = std::numeric_limits<Scalar>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        if (W(i, enter) > kPivotTol) {
          best = std::min(best, std::max(rhs(i), Scalar(0)) / W(i, enter));
        }
      }
      if (!std::isfinite(best)) {
        pivots = -pivots - 1;
        return false;  // unbounded
      }
      Eigen::Index leave = -1;
      Eigen::Index leave_var = -1;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (W(i, enter) <= kPivotTol) continue;
        const Scalar ratio = std::max(rhs(i), Scalar(0)) / W(i, enter);
        if (ratio <= best + Scalar(1e-12)) {
          const Eigen::Index var = basis[static_cast<size_t>(i)];
          if (leave < 0 || var < leave_var) {
            leave = i;
            leave_var = var;
          }
        }
      }
      pivot(W, rhs, basis, leave, enter);
      ++pivots;
    }
  }
};

using Simplex = DenseSimplex<double>;

}  // namespace msddp
