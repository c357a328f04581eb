#include "msddp/errors.hpp"

#include <sstream>

namespace msddp {

namespace {

std::string recourse_message(int stage, const Eigen::VectorXd& state, int scenario) {
  std::ostringstream os;
  os << "stage " << stage;
  if (scenario >= 0) os << " scenario " << scenario;
  os << " infeasible at incoming state [";
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    if (i) os << ", ";
    os << state(i);
  }
  os << "]";
  return os.str();
}

}  // namespace

RecourseViolation::RecourseViolation(int stage, Eigen::VectorXd state, int scenario)
    : Error(recourse_message(stage, state, scenario)),
      stage_(stage),
      scenario_(scenario),
      state_(std::move(state)) {}

UnboundedSubproblem::UnboundedSubproblem(int stage)
    : Error("stage " + std::to_string(stage) +
            " subproblem unbounded below; check epigraph floor and box bounds"),
      stage_(stage) {}

namespace detail {

void fail_require(const char* what, const std::string& message) {
  throw InvalidInput(message.empty() ? std::string(what) : message);
}

}  // namespace detail

}  // namespace msddp
