#include "msddp/schedule.hpp"

#include <cmath>

#include "msddp/errors.hpp"

namespace msddp {

double ToleranceSchedule::gap_threshold(double lambda) const {
  double sum = 0.0;
  double weight = 1.0;
  for (int i = 0; i < eps.size(); ++i) {
    sum += weight * eps(i);
    weight *= lambda;
  }
  return sum;
}

Eigen::VectorXd epsilon_schedule(const Eigen::VectorXd& delta,
                                 const Eigen::VectorXd& lipschitz,
                                 const Eigen::VectorXd& model_lipschitz,
                                 double lambda, int T) {
  MSDDP_REQUIRE(T >= 2, "epsilon_schedule: T must be at least 2");
  MSDDP_REQUIRE(lambda > 0.0 && lambda <= 1.0,
                "epsilon_schedule: lambda must lie in (0, 1]");
  MSDDP_REQUIRE(delta.size() == T, "epsilon_schedule: delta must have size T");
  MSDDP_REQUIRE(lipschitz.size() == T + 1 && model_lipschitz.size() == T + 1,
                "epsilon_schedule: Lipschitz vectors must have size T+1");
  MSDDP_REQUIRE((delta.array() >= 0.0).all(),
                "epsilon_schedule: negative distinguishability radius");
  MSDDP_REQUIRE((lipschitz.array() >= 0.0).all() &&
                    (model_lipschitz.array() >= 0.0).all(),
                "epsilon_schedule: negative Lipschitz bound");

  Eigen::VectorXd eps = Eigen::VectorXd::Zero(T);
  eps(T - 1) = 0.0;
  for (int t = T - 1; t >= 1; --t) {
    eps(t - 1) = (lipschitz(t) + model_lipschitz(t)) * delta(t) + lambda * eps(t);
  }
  return eps;
}

ToleranceSchedule make_schedule(const Eigen::VectorXd& delta,
                                const Eigen::VectorXd& lipschitz,
                                const Eigen::VectorXd& model_lipschitz,
                                double lambda) {
  const int T = static_cast<int>(delta.size());
  ToleranceSchedule s;
  s.delta = delta;
  s.lipschitz = lipschitz;
  s.model_lipschitz = model_lipschitz;
  s.eps = epsilon_schedule(delta, lipschitz, model_lipschitz, lambda, T);
  return s;
}

ToleranceSchedule make_uniform_schedule(int T, double lambda, double radius,
                                        double lipschitz_bound,
                                        double model_lipschitz_bound) {
  MSDDP_REQUIRE(T >= 2, "make_uniform_schedule: T must be at least 2");
  Eigen::VectorXd delta = Eigen::VectorXd::Constant(T, radius);
  Eigen::VectorXd lip = Eigen::VectorXd::Constant(T + 1, lipschitz_bound);
  Eigen::VectorXd lip_model = Eigen::VectorXd::Constant(T + 1, model_lipschitz_bound);
  lip(0) = 0.0;
  lip_model(0) = 0.0;
  return make_schedule(delta, lip, lip_model, lambda);
}

}  // namespace msddp
