#include <doctest.h>

#include "msddp/rng.hpp"
#include "msddp/simplex.hpp"

using namespace msddp;

namespace {

Simplex::Result solve(const Matrix& A, const Vector& b, const Vector& c) {
  return Simplex::solve(A, b, c, 1e-8);
}

}  // namespace

TEST_CASE("simplex solves a one-row program with duals") {
  // min -x1 s.t. x1 + x2 = 1
  Matrix A(1, 2);
  A << 1, 1;
  Vector b = Vector::Constant(1, 1.0);
  Vector c(2);
  c << -1, 0;
  const auto r = solve(A, b, c);
  REQUIRE(r.status == Simplex::Status::Optimal);
  CHECK(r.z(0) == doctest::Approx(1.0));
  CHECK(r.z(1) == doctest::Approx(0.0));
  CHECK(r.value == doctest::Approx(-1.0));
  CHECK(r.duals(0) == doctest::Approx(-1.0));
  CHECK(r.dual_value == doctest::Approx(r.value));
}

TEST_CASE("simplex reports infeasibility") {
  Matrix A(2, 1);
  A << 1, 1;
  Vector b(2);
  b << 1, 2;
  Vector c = Vector::Zero(1);
  CHECK(solve(A, b, c).status == Simplex::Status::Infeasible);
}

TEST_CASE("simplex reports unboundedness") {
  SUBCASE("no rows") {
    Matrix A(0, 1);
    Vector b(0);
    Vector c = Vector::Constant(1, -1.0);
    CHECK(solve(A, b, c).status == Simplex::Status::Unbounded);
  }
  SUBCASE("free direction") {
    Matrix A(1, 2);
    A << 0, 1;
    Vector b = Vector::Constant(1, 1.0);
    Vector c(2);
    c << -1, 0;
    CHECK(solve(A, b, c).status == Simplex::Status::Unbounded);
  }
}

TEST_CASE("simplex handles redundant rows and negative rhs") {
  // x1 + x2 = 1 duplicated, plus -x1 - x2 = -1.
  Matrix A(3, 2);
  A << 1, 1, 1, 1, -1, -1;
  Vector b(3);
  b << 1, 1, -1;
  Vector c(2);
  c << 2, 1;
  const auto r = solve(A, b, c);
  REQUIRE(r.status == Simplex::Status::Optimal);
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.z(1) == doctest::Approx(1.0));
  CHECK(r.dual_value == doctest::Approx(r.value));
}

TEST_CASE("simplex strong duality and feasibility on random feasible programs") {
  Rng rng(99);
  int optimal_count = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + rng.next_index(4);
    const int n = m + 1 + rng.next_index(5);
    Matrix A(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.next_range(-1.0, 1.0);
    Vector x0(n);
    for (int j = 0; j < n; ++j) x0(j) = rng.next_range(0.0, 2.0);
    const Vector b = A * x0;  // feasible by construction
    Vector c(n);
    for (int j = 0; j < n; ++j) c(j) = rng.next_range(-1.0, 1.0);
    const auto r = solve(A, b, c);
    if (r.status != Simplex::Status::Optimal) continue;
    ++optimal_count;
    CHECK((A * r.z - b).cwiseAbs().maxCoeff() <= 1e-7);
    CHECK(r.z.minCoeff() >= -1e-9);
    CHECK(r.value <= c.dot(x0) + 1e-7);  // no worse than the known point
    CHECK(std::abs(r.value - r.dual_value) <= 1e-6);
  }
  CHECK(optimal_count >= 10);
}

TEST_CASE("simplex is deterministic") {
  Rng rng(7);
  Matrix A(3, 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 6; ++j) A(i, j) = rng.next_range(-1.0, 1.0);
  Vector x0(6);
  for (int j = 0; j < 6; ++j) x0(j) = rng.next_range(0.0, 1.0);
  const Vector b = A * x0;
  Vector c(6);
  for (int j = 0; j < 6; ++j) c(j) = rng.next_range(-1.0, 1.0);
  const auto r1 = solve(A, b, c);
  const auto r2 = solve(A, b, c);
  REQUIRE(r1.status == Simplex::Status::Optimal);
  CHECK(r1.z == r2.z);
  CHECK(r1.duals == r2.duals);
  CHECK(r1.value == r2.value);
}
