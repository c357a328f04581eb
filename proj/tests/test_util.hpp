#pragma once

#include <Eigen/Core>

#include "msddp/instance.hpp"

namespace msddp::testutil {

inline Matrix mat1(double v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return m;
}

inline Vector vec1(double v) { return Vector::Constant(1, v); }

inline Realization free_stage_1d(double cost, Eigen::Index n_prev = 1) {
  Realization r;
  r.A.resize(0, 1);
  r.B.resize(0, n_prev);
  r.b.resize(0);
  r.c = vec1(cost);
  r.G.resize(0, 1);
  r.Q.resize(0, n_prev);
  r.q.resize(0);
  return r;
}

/// Stage linked by the equality x = chi + shift.
inline Realization linked_stage_1d(double cost, double shift = 0.0) {
  Realization r;
  r.A = mat1(1.0);
  r.B = mat1(1.0);
  r.b = vec1(shift);
  r.c = vec1(cost);
  r.G.resize(0, 1);
  r.Q.resize(0, 1);
  r.q.resize(0);
  return r;
}

inline StageShape box_shape_1d(double lo, double hi, Eigen::Index m = 0,
                               Eigen::Index p = 0) {
  StageShape s;
  s.n = 1;
  s.m = m;
  s.p = p;
  s.lower = vec1(lo);
  s.upper = vec1(hi);
  return s;
}

/// Two-stage chain: free first stage on [0, 2], second stage pinned to
/// x2 = x1 (+ shift). Value functions are linear, so one cut is exact.
inline Instance chain_instance(double c1, double c2, double lambda = 1.0,
                               double shift = 0.0, double hi2 = 2.0) {
  Instance inst;
  inst.T = 2;
  inst.lambda = lambda;
  inst.stages.push_back(box_shape_1d(0.0, 2.0));
  inst.stages.push_back(box_shape_1d(0.0, hi2, 1));
  inst.scenarios.push_back({free_stage_1d(c1)});
  inst.scenarios.push_back({linked_stage_1d(c2, shift)});
  return inst;
}

/// One-dimensional inventory stage: sell at most the demand, order at most
/// order_cap. Gives piecewise-linear value functions with a kink.
inline Realization inventory_stage_1d(double cost, double demand,
                                      double order_cap) {
  Realization r;
  r.A.resize(0, 1);
  r.B.resize(0, 1);
  r.b.resize(0);
  r.c = vec1(cost);
  r.G.resize(2, 1);
  r.Q.resize(2, 1);
  r.q.resize(2);
  r.G << -1.0, 1.0;
  r.Q << -1.0, 1.0;
  r.q << demand, order_cap - demand;
  return r;
}

}  // namespace msddp::testutil
