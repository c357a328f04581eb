#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "msddp/instance.hpp"
#include "msddp/saa.hpp"

namespace msddp {

enum class Family { Inventory, HydroToy, RandomLp };

Family family_from_name(const std::string& name);
std::string family_name(Family family);

/// Parameters of the built-in instance families. Every family certifies
/// recourse by construction: boxes and constraint offsets are sized so each
/// stage subproblem is feasible from any box state.
///
///  - inventory: n independent products, state = stock level in [0, cap];
///    sell at most the demand, order at most cap + demand_max.
///  - hydro-toy: one reservoir, state = (level, release); release generates
///    reward, water balance is an equality row. n is fixed at 2.
///  - random-lp: n variables in [0, cap] with n random always-satisfiable
///    linking inequalities.
struct GeneratorSpec {
  Family family = Family::Inventory;
  int T = 3;
  std::vector<int> counts;  ///< N_t per stage; empty means all ones
  int n = 1;
  std::uint64_t seed = 0;
  double capacity = 1.0;    ///< box width (state units)
  double demand_max = 0.5;  ///< inventory demand range, hydro inflow range
  double cost_lo = 0.2;     ///< stage-cost coefficient range
  double cost_hi = 1.0;
};

/// Deterministic per seed; the result always passes validate_instance.
/// Rejects parameter ranges that cannot certify recourse (non-positive
/// capacity, negative demand, inverted cost range).
Instance generate_instance(const GeneratorSpec& spec);

/// The sampler behind generate_instance, exposed for SAA construction.
std::unique_ptr<ScenarioSampler> make_sampler(const GeneratorSpec& spec);

/// Stage-indexed Lipschitz bounds (size T+1) from the cost recursion
///   M_t = max_i |c_ti|_1 + lambda * M_{t+1}.
/// Valid for unit-gain linking, where shifting the incoming state by d
/// moves the feasible set by at most d per coordinate; the inventory and
/// hydro-toy families satisfy this.
Eigen::VectorXd conservative_lipschitz(const Instance& inst);

}  // namespace msddp
