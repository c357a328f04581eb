#include "msddp/saa.hpp"

#include <cmath>
#include <sstream>

#include "msddp/errors.hpp"
#include "msddp/oracle.hpp"

namespace msddp {

namespace {

void check_realization(const Realization& r, const StageShape& shape,
                       Eigen::Index n_prev, int t) {
  const bool ok = r.A.rows() == shape.m && r.A.cols() == shape.n &&
                  r.B.rows() == shape.m && r.B.cols() == n_prev &&
                  r.b.size() == shape.m && r.c.size() == shape.n &&
                  r.G.rows() == shape.p && r.G.cols() == shape.n &&
                  r.Q.rows() == shape.p && r.Q.cols() == n_prev &&
                  r.q.size() == shape.p;
  if (!ok) {
    std::ostringstream os;
    os << "build_saa: sampler produced dimension-inconsistent realization at stage "
       << t;
    throw InvalidInput(os.str());
  }
}

}  // namespace

Instance build_saa(const ScenarioSampler& sampler, const std::vector<int>& counts,
                   std::uint64_t seed) {
  const int T = sampler.horizon();
  MSDDP_REQUIRE(T >= 2, "build_saa: horizon must be at least 2");
  MSDDP_REQUIRE(static_cast<int>(counts.size()) == T,
                "build_saa: counts must have one entry per stage");
  MSDDP_REQUIRE(counts.front() == 1, "build_saa: first-stage count must be 1");

  Instance inst;
  inst.T = T;
  inst.lambda = sampler.discount();
  for (int t = 1; t <= T; ++t) inst.stages.push_back(sampler.shape(t));

  const Rng root(seed);
  for (int t = 1; t <= T; ++t) {
    const int count = counts[static_cast<size_t>(t - 1)];
    MSDDP_REQUIRE(count >= 1, "build_saa: scenario count must be positive");
    Rng stage_rng = root.child(0x5AA0).child(static_cast<std::uint64_t>(t));
    std::vector<Realization> list;
    list.reserve(static_cast<size_t>(count));
    const Eigen::Index n_prev = inst.dim(t - 1);
    for (int i = 0; i < count; ++i) {
      Realization r = sampler.sample(t, stage_rng);
      check_realization(r, inst.shape(t), n_prev, t);
      list.push_back(std::move(r));
    }
    inst.scenarios.push_back(std::move(list));
  }
  return inst;
}

Eigen::VectorXd estimate_lipschitz(const Instance& inst, int probe_count,
                                   const LpOptions& opts) {
  MSDDP_REQUIRE(probe_count >= 2, "estimate_lipschitz: needs at least 2 probes");
  require_valid(inst);

  // Fall back to a scenario-subsampled copy when the tail trees would blow
  // past the oracle size guard; the result is still a lower estimate.
  Instance work = inst;
  {
    double tree_vars = 0.0;
    double paths = 1.0;
    for (int t = 1; t <= inst.T; ++t) {
      paths *= inst.num_scenarios(t);
      tree_vars += paths * static_cast<double>(inst.shape(t).n);
    }
    if (tree_vars > 100000.0) {
      for (auto& list : work.scenarios)
        if (list.size() > 2) list.resize(2);
    }
  }

  Eigen::VectorXd est = Eigen::VectorXd::Zero(inst.T + 1);
  const int cap = std::min(probe_count, 24);
  for (int t = 1; t <= work.T; ++t) {
    const StageShape& shape = work.shape(t);
    Rng rng = Rng(0xE57).child(static_cast<std::uint64_t>(t));
    std::vector<Vector> probes;
    probes.reserve(static_cast<size_t>(cap));
    for (int i = 0; i < cap; ++i) {
      Vector x(shape.n);
      for (Eigen::Index d = 0; d < shape.n; ++d)
        x(d) = rng.next_range(shape.lower(d), shape.upper(d));
      probes.push_back(std::move(x));
    }
    std::vector<double> tails(probes.size());
    for (size_t i = 0; i < probes.size(); ++i)
      tails[i] = work.lambda * exact_value_at(work, t + 1, probes[i], opts);

    double best = 0.0;
    for (const Realization& real : work.stage_scenarios(t)) {
      for (size_t i = 0; i < probes.size(); ++i) {
        const double fi = real.c.dot(probes[i]) + tails[i];
        for (size_t j = i + 1; j < probes.size(); ++j) {
          const double fj = real.c.dot(probes[j]) + tails[j];
          const double dist = (probes[i] - probes[j]).lpNorm<Eigen::Infinity>();
          if (dist > 1e-12) best = std::max(best, std::abs(fi - fj) / dist);
        }
      }
    }
    est(t) = best;
  }
  return est;
}

}  // namespace msddp
