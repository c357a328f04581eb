#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace msddp {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed caller input: bad file, bad flag, inconsistent dimensions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A stage subproblem was infeasible at a reachable state.
class RecourseViolation : public Error {
 public:
  RecourseViolation(int stage, Eigen::VectorXd state, int scenario = -1);
  int stage() const { return stage_; }
  int scenario() const { return scenario_; }
  const Eigen::VectorXd& state() const { return state_; }

 private:
  int stage_;
  int scenario_;
  Eigen::VectorXd state_;
};

/// A stage subproblem had no finite optimum (missing epigraph floor or
/// unbounded box).
class UnboundedSubproblem : public Error {
 public:
  explicit UnboundedSubproblem(int stage);
  int stage() const { return stage_; }

 private:
  int stage_;
};

/// Problem exceeds the hard size limit of a brute-force routine.
class SizeGuard : public Error {
 public:
  using Error::Error;
};

namespace detail {
[[noreturn]] void fail_require(const char* what, const std::string& message);
}

/// Throws InvalidInput when `cond` is false.
#define MSDDP_REQUIRE(cond, message)                                   \
  do {                                                                 \
    if (!(cond)) ::msddp::detail::fail_require(#cond, (message));      \
  } while (0)

}  // namespace msddp
