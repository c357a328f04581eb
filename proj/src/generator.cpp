#include "msddp/generator.hpp"

#include <cmath>
#include <memory>

#include "msddp/errors.hpp"

namespace msddp {

Family family_from_name(const std::string& name) {
  if (name == "inventory") return Family::Inventory;
  if (name == "hydro-toy") return Family::HydroToy;
  if (name == "random-lp") return Family::RandomLp;
  throw InvalidInput("unknown instance family: " + name);
}

std::string family_name(Family family) {
  switch (family) {
    case Family::Inventory: return "inventory";
    case Family::HydroToy: return "hydro-toy";
    case Family::RandomLp: return "random-lp";
  }
  return "?";
}

namespace {

void check_spec(const GeneratorSpec& spec) {
  MSDDP_REQUIRE(spec.T >= 2, "generator: T must be at least 2");
  MSDDP_REQUIRE(spec.n >= 1, "generator: n must be at least 1");
  MSDDP_REQUIRE(spec.capacity > 0.0,
                "generator: capacity must be positive; a zero-width box cannot "
                "certify recourse");
  MSDDP_REQUIRE(spec.demand_max >= 0.0, "generator: demand_max must be nonnegative");
  MSDDP_REQUIRE(spec.cost_lo <= spec.cost_hi, "generator: empty cost range");
  if (!spec.counts.empty()) {
    MSDDP_REQUIRE(static_cast<int>(spec.counts.size()) == spec.T,
                  "generator: counts must have one entry per stage");
    MSDDP_REQUIRE(spec.counts.front() == 1, "generator: first-stage count must be 1");
    for (int c : spec.counts)
      MSDDP_REQUIRE(c >= 1, "generator: scenario counts must be positive");
  }
}

class InventorySampler final : public ScenarioSampler {
 public:
  explicit InventorySampler(const GeneratorSpec& spec) : spec_(spec) {}

  int horizon() const override { return spec_.T; }
  double discount() const override { return 1.0; }

  StageShape shape(int t) const override {
    const Eigen::Index n = spec_.n;
    StageShape s;
    s.n = n;
    s.m = 0;
    s.p = t == 1 ? 0 : 2 * n;
    s.lower = Vector::Zero(n);
    s.upper = Vector::Constant(n, spec_.capacity);
    return s;
  }

  Realization sample(int t, Rng& rng) const override {
    const Eigen::Index n = spec_.n;
    Realization r;
    r.A.resize(0, n);
    r.B.resize(0, n);
    r.b.resize(0);
    r.c.resize(n);
    for (Eigen::Index j = 0; j < n; ++j)
      r.c(j) = rng.next_range(spec_.cost_lo, spec_.cost_hi);
    if (t == 1) {
      r.G.resize(0, n);
      r.Q.resize(0, n);
      r.q.resize(0);
      return r;
    }
    // Stock after sales and ordering: x >= chi - d (sell at most the
    // demand) and x <= chi - d + order_cap. order_cap = capacity +
    // demand_max keeps both rows satisfiable from any box state.
    Vector d(n);
    for (Eigen::Index j = 0; j < n; ++j) d(j) = rng.next_range(0.0, spec_.demand_max);
    const double order_cap = spec_.capacity + spec_.demand_max;
    r.G.resize(2 * n, n);
    r.Q.resize(2 * n, n);
    r.q.resize(2 * n);
    r.G.topRows(n) = -Matrix::Identity(n, n);
    r.Q.topRows(n) = -Matrix::Identity(n, n);
    r.q.head(n) = d;
    r.G.bottomRows(n) = Matrix::Identity(n, n);
    r.Q.bottomRows(n) = Matrix::Identity(n, n);
    r.q.tail(n) = Vector::Constant(n, order_cap) - d;
    return r;
  }

 private:
  GeneratorSpec spec_;
};

class HydroToySampler final : public ScenarioSampler {
 public:
  explicit HydroToySampler(const GeneratorSpec& spec) : spec_(spec) {}

  int horizon() const override { return spec_.T; }
  double discount() const override { return 0.9; }

  StageShape shape(int) const override {
    StageShape s;
    s.n = 2;  // (reservoir level, release)
    s.m = 1;
    s.p = 0;
    s.lower = Vector::Zero(2);
    s.upper = Vector::Constant(2, spec_.capacity);
    return s;
  }

  Realization sample(int t, Rng& rng) const override {
    Realization r;
    r.A.resize(1, 2);
    r.A << 1.0, 1.0;  // level + release = previous level + inflow
    r.B = Matrix::Zero(1, 2);
    r.b.resize(1);
    r.c.resize(2);
    r.G.resize(0, 2);
    r.Q.resize(0, 2);
    r.q.resize(0);
    const double price = rng.next_range(0.5, 1.5);
    r.c << rng.next_range(0.0, 0.1), -price;
    if (t == 1) {
      r.b(0) = rng.next_range(0.4, 0.6) * spec_.capacity;  // initial water
    } else {
      r.B(0, 0) = 1.0;
      // Inflow capped by the release bound so recourse holds from any level.
      const double inflow_max = std::min(spec_.demand_max, spec_.capacity);
      r.b(0) = rng.next_range(0.0, inflow_max);
    }
    return r;
  }

 private:
  GeneratorSpec spec_;
};

class RandomLpSampler final : public ScenarioSampler {
 public:
  explicit RandomLpSampler(const GeneratorSpec& spec) : spec_(spec) {}

  int horizon() const override { return spec_.T; }
  double discount() const override { return 1.0; }

  StageShape shape(int t) const override {
    const Eigen::Index n = spec_.n;
    StageShape s;
    s.n = n;
    s.m = 0;
    s.p = t == 1 ? 0 : n;
    s.lower = Vector::Zero(n);
    s.upper = Vector::Constant(n, spec_.capacity);
    return s;
  }

  Realization sample(int t, Rng& rng) const override {
    const Eigen::Index n = spec_.n;
    Realization r;
    r.A.resize(0, n);
    r.B.resize(0, n);
    r.b.resize(0);
    r.c.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) r.c(j) = rng.next_range(-1.0, 1.0);
    if (t == 1) {
      r.G.resize(0, n);
      r.Q.resize(0, n);
      r.q.resize(0);
      return r;
    }
    // Nonnegative G, Q and strictly positive offsets keep x = 0 feasible
    // for every box state, certifying recourse.
    r.G.resize(n, n);
    r.Q.resize(n, n);
    r.q.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        r.G(i, j) = rng.next_range(0.0, 1.0);
        r.Q(i, j) = rng.next_range(0.0, 1.0);
      }
      r.q(i) = rng.next_range(0.1, 0.6) * spec_.capacity;
    }
    return r;
  }

 private:
  GeneratorSpec spec_;
};

}  // namespace

std::unique_ptr<ScenarioSampler> make_sampler(const GeneratorSpec& spec) {
  check_spec(spec);
  switch (spec.family) {
    case Family::Inventory: return std::make_unique<InventorySampler>(spec);
    case Family::HydroToy: return std::make_unique<HydroToySampler>(spec);
    case Family::RandomLp: return std::make_unique<RandomLpSampler>(spec);
  }
  throw InvalidInput("generator: unknown family");
}

Instance generate_instance(const GeneratorSpec& spec) {
  check_spec(spec);
  std::vector<int> counts = spec.counts;
  if (counts.empty()) counts.assign(static_cast<size_t>(spec.T), 1);
  const auto sampler = make_sampler(spec);
  Instance inst = build_saa(*sampler, counts, spec.seed);
  require_valid(inst);
  return inst;
}

Eigen::VectorXd conservative_lipschitz(const Instance& inst) {
  Eigen::VectorXd lip = Eigen::VectorXd::Zero(inst.T + 1);
  double tail = 0.0;
  for (int t = inst.T; t >= 1; --t) {
    double c_norm = 0.0;
    for (const Realization& r : inst.stage_scenarios(t))
      c_norm = std::max(c_norm, r.c.lpNorm<1>());
    lip(t) = c_norm + inst.lambda * tail;
    tail = lip(t);
  }
  return lip;
}

}  // namespace msddp
