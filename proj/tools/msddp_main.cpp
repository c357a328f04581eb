#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "msddp/ddp.hpp"
#include "msddp/eddp.hpp"
#include "msddp/generator.hpp"
#include "msddp/json_io.hpp"
#include "msddp/kelley.hpp"
#include "msddp/log.hpp"
#include "msddp/oracle.hpp"
#include "msddp/saa.hpp"
#include "msddp/sddp.hpp"
#include "msddp/suite.hpp"
#include "msddp/telemetry.hpp"

namespace {

using namespace msddp;

constexpr int kExitOk = 0;
constexpr int kExitBudget = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitBadInput = 4;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

Eigen::VectorXd parse_double_list(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) vals.push_back(std::stod(item));
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) out(static_cast<Eigen::Index>(i)) = vals[i];
  return out;
}

StopRule parse_stop(const std::string& mode) {
  if (mode == "distance") return StopRule::Distance;
  if (mode == "statistical") return StopRule::Statistical;
  if (mode == "budget") return StopRule::Budget;
  throw InvalidInput("unknown stop mode: " + mode);
}

/// Loads, validates and returns the instance; validation violations are bad
/// input.
Instance load_checked(const std::string& path) {
  Instance inst = load_instance(path);
  const auto violations = validate_instance(inst);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "instance fails validation:";
    for (const auto& v : violations) os << "\n  - " << v;
    throw InvalidInput(os.str());
  }
  return inst;
}

SolveConfig build_config(const Instance& inst, double delta, double lip,
                         int max_iter, double lp_tol, std::uint64_t seed,
                         int replicas, int threads) {
  SolveConfig config;
  Eigen::VectorXd lip_vec;
  if (lip > 0) {
    lip_vec = Eigen::VectorXd::Constant(inst.T + 1, lip);
    lip_vec(0) = 0.0;
  } else {
    lip_vec = estimate_lipschitz(inst, 16, LpOptions{lp_tol});
    log_info("estimated per-stage Lipschitz bounds (lower estimates); override "
             "with --lip");
  }
  config.schedule = make_schedule(Eigen::VectorXd::Constant(inst.T, delta), lip_vec,
                                  lip_vec, inst.lambda);
  config.max_iterations = max_iter;
  config.lp_tolerance = lp_tol;
  config.seed = seed;
  config.forward_replicas = replicas;
  config.threads = threads;
  return config;
}

struct CommonFlags {
  std::string instance;
  std::string out;
  std::string format = "csv";
  std::string stop = "distance";
  double delta = 0.1;
  double lip = -1.0;
  double lp_tol = 1e-8;
  int max_iter = 200;
  int threads = 1;
  std::uint64_t seed = 0;
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_instance = true) {
  if (with_instance)
    cmd->add_option("--instance", f.instance, "instance JSON file")->required();
  cmd->add_option("--out", f.out, "output path (default stdout)");
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--delta", f.delta, "uniform distinguishability radius");
  cmd->add_option("--lip", f.lip,
                  "uniform Lipschitz bound; omitted means estimate empirically");
  cmd->add_option("--lp-tolerance", f.lp_tol, "LP feasibility/optimality tolerance");
  cmd->add_option("--max-iter", f.max_iter, "iteration budget");
  cmd->add_option("--threads", f.threads, "worker threads");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_flag("--timing", f.timing, "append wall-clock columns to CSV output");
}

std::string solver_output(const std::vector<IterationRecord>& records,
                          const std::string& format,
                          const std::function<void(std::ostream&)>& csv_writer) {
  if (format == "json") return dump_json(records_to_json(records));
  std::ostringstream os;
  csv_writer(os);
  return os.str();
}

int run_ddp(const CommonFlags& f, double gap_override) {
  const Instance inst = load_checked(f.instance);
  SolveConfig config =
      build_config(inst, f.delta, f.lip, f.max_iter, f.lp_tol, f.seed, 1, f.threads);
  config.stop = parse_stop(f.stop);
  config.gap_override = gap_override;
  const DdpResult res = ddp_solve(inst, config);
  emit(f.out, solver_output(res.state.history, f.format, [&](std::ostream& os) {
         write_ddp_csv(os, res.state.history, f.timing);
       }));
  return res.status == RunStatus::Converged ? kExitOk : kExitBudget;
}

int run_eddp(const CommonFlags& f, double delta0) {
  const Instance inst = load_checked(f.instance);
  SolveConfig config =
      build_config(inst, f.delta, f.lip, f.max_iter, f.lp_tol, f.seed, 1, f.threads);
  config.stop = parse_stop(f.stop);
  if (delta0 >= 0) config.schedule.delta(0) = delta0;
  const EddpResult res = eddp_solve(inst, config);
  emit(f.out, solver_output(res.state.history, f.format, [&](std::ostream& os) {
         write_eddp_csv(os, res.state.history, inst.T, f.timing);
       }));
  return res.status == RunStatus::Converged ? kExitOk : kExitBudget;
}

int run_sddp(const CommonFlags& f, int replicas, bool audit, double stat_gap,
             double stat_z) {
  const Instance inst = load_checked(f.instance);
  SolveConfig config = build_config(inst, f.delta, f.lip, f.max_iter, f.lp_tol,
                                    f.seed, replicas, f.threads);
  config.stop = parse_stop(f.stop);
  config.audit = audit;
  config.stat_gap = stat_gap;
  config.stat_z = stat_z;
  const SddpResult res = sddp_solve(inst, config);
  emit(f.out, solver_output(res.state.history, f.format, [&](std::ostream& os) {
         write_sddp_csv(os, res.state.history, inst.T, audit, f.timing);
       }));
  return res.status == RunStatus::Converged ? kExitOk : kExitBudget;
}

StaticProblem named_problem(const std::string& name, Eigen::VectorXd* start,
                            double* suggested_eps) {
  StaticProblem prob;
  (void)suggested_eps;
  if (name == "abs1") {
    prob.lower = Eigen::VectorXd::Constant(1, -1.0);
    prob.upper = Eigen::VectorXd::Constant(1, 1.0);
    prob.lipschitz = 1.0;
    prob.oracle = [](const Eigen::VectorXd& x) {
      return std::make_pair(std::abs(x(0)),
                            Eigen::VectorXd::Constant(1, x(0) >= 0 ? 1.0 : -1.0)
                                .eval());
    };
  } else if (name == "linf2") {
    prob.lower = Eigen::VectorXd::Constant(2, -1.0);
    prob.upper = Eigen::VectorXd::Constant(2, 1.0);
    prob.lipschitz = 1.0;
    prob.oracle = [](const Eigen::VectorXd& x) {
      const int j = std::abs(x(0)) >= std::abs(x(1)) ? 0 : 1;
      Eigen::VectorXd g = Eigen::VectorXd::Zero(2);
      g(j) = x(j) >= 0 ? 1.0 : -1.0;
      return std::make_pair(x.cwiseAbs().maxCoeff(), g);
    };
  } else if (name == "asym1") {
    prob.lower = Eigen::VectorXd::Constant(1, -1.0);
    prob.upper = Eigen::VectorXd::Constant(1, 1.0);
    prob.lipschitz = 2.0;
    prob.oracle = [](const Eigen::VectorXd& x) {
      const double f = std::max(x(0), -2.0 * x(0));
      return std::make_pair(
          f, Eigen::VectorXd::Constant(1, x(0) >= 0 ? 1.0 : -2.0).eval());
    };
  } else if (name == "quad1") {
    prob.lower = Eigen::VectorXd::Constant(1, -1.0);
    prob.upper = Eigen::VectorXd::Constant(1, 1.0);
    prob.lipschitz = 2.0;
    prob.oracle = [](const Eigen::VectorXd& x) {
      return std::make_pair(x(0) * x(0),
                            Eigen::VectorXd::Constant(1, 2.0 * x(0)).eval());
    };
  } else {
    throw InvalidInput("unknown test function: " + name +
                       " (expected abs1, linf2, asym1 or quad1)");
  }
  *start = prob.upper;
  return prob;
}

int run_kelley(const std::string& fn, double eps, int max_iter,
               const std::string& x0_text, const std::string& out,
               double lp_tol) {
  Eigen::VectorXd start;
  StaticProblem prob = named_problem(fn, &start, nullptr);
  if (!x0_text.empty()) start = parse_double_list(x0_text);
  const KelleyResult res =
      kelley_solve(prob, start, eps, max_iter, LpOptions{lp_tol});
  std::ostringstream os;
  write_kelley_csv(os, res.iterates, res.values, res.lb_history, res.ub_history);
  emit(out, os.str());
  return res.status == KelleyStatus::Converged ? kExitOk : kExitBudget;
}

int run_oracle(const std::string& instance, const std::string& mode, int stage,
               int res_points, const std::string& out, double lp_tol) {
  const Instance inst = load_checked(instance);
  const LpOptions opts{lp_tol};
  nlohmann::json j;
  if (mode == "extensive") {
    const ExtensiveSolution sol = extensive_form_value(inst, opts);
    j["value"] = sol.value;
    std::vector<double> x(sol.first_stage.data(),
                          sol.first_stage.data() + sol.first_stage.size());
    j["first_stage"] = x;
  } else if (mode == "grid") {
    const GridValueFunction grid = exact_value_grid(inst, stage, res_points, opts);
    j["stage"] = grid.stage;
    j["error_bound"] = grid.error_bound;
    nlohmann::json axes = nlohmann::json::array();
    for (const auto& axis : grid.axes) {
      std::vector<double> a(axis.data(), axis.data() + axis.size());
      axes.push_back(a);
    }
    j["axes"] = std::move(axes);
    std::vector<double> vals(grid.values.data(),
                             grid.values.data() + grid.values.size());
    j["values"] = vals;
  } else {
    throw InvalidInput("oracle mode must be extensive or grid");
  }
  emit(out, dump_json(j));
  return kExitOk;
}

int run_gen(const GeneratorSpec& spec, const std::string& counts_text,
            const std::string& out) {
  GeneratorSpec full = spec;
  if (!counts_text.empty()) full.counts = parse_int_list(counts_text);
  const Instance inst = generate_instance(full);
  if (out.empty()) {
    std::cout << dump_json(instance_to_json(inst));
  } else {
    save_instance(inst, out);
  }
  return kExitOk;
}

int run_suite_cmd(const std::string& level, const std::string& out,
                  const std::string& self_path, int threads, bool emit_schema) {
  if (emit_schema) {
    emit(out, suite_report_schema());
    return kExitOk;
  }
  const SuiteReport report = run_suite(level, self_path, threads);
  for (const CriterionResult& c : report.criteria) {
    std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.name << ": "
              << c.detail << "\n";
  }
  emit(out, dump_json(report_to_json(report)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"msddp: multi-stage stochastic dual dynamic programming toolkit"};
  app.require_subcommand(1);

  CommonFlags ddp_f, eddp_f, sddp_f;
  double ddp_gap_override = -1.0;
  double eddp_delta0 = -1.0;
  int sddp_replicas = 1;
  bool sddp_audit = false;
  double sddp_stat_gap = 1e-3;
  double sddp_stat_z = 1.96;

  auto* ddp_cmd = app.add_subcommand("ddp", "single-scenario forward/backward solver");
  add_common(ddp_cmd, ddp_f);
  ddp_cmd->add_option("--gap", ddp_gap_override,
                      "absolute gap threshold overriding the schedule");
  ddp_f.stop = "distance";
  ddp_cmd->add_option("--stop", ddp_f.stop, "distance or budget")
      ->check(CLI::IsMember({"distance", "budget"}));

  auto* eddp_cmd = app.add_subcommand("eddp", "explorative solver for SAA instances");
  add_common(eddp_cmd, eddp_f);
  eddp_cmd->add_option("--delta0", eddp_delta0,
                       "first-stage termination radius (default: delta)");
  eddp_cmd->add_option("--stop", eddp_f.stop, "distance or budget")
      ->check(CLI::IsMember({"distance", "budget"}));

  auto* sddp_cmd = app.add_subcommand("sddp", "randomized solver for SAA instances");
  add_common(sddp_cmd, sddp_f);
  sddp_cmd->add_option("--replicas", sddp_replicas, "forward replicas per iteration");
  sddp_cmd->add_flag("--audit", sddp_audit,
                     "solve all candidates to track distances and saturation");
  sddp_cmd->add_option("--stop", sddp_f.stop, "distance, statistical or budget")
      ->check(CLI::IsMember({"distance", "statistical", "budget"}));
  sddp_f.stop = "statistical";
  sddp_cmd->add_option("--gap", sddp_stat_gap, "statistical stop gap threshold");
  sddp_cmd->add_option("--z", sddp_stat_z, "statistical stop z-score");

  std::string kelley_fn = "abs1", kelley_x0, kelley_out;
  double kelley_eps = 1e-6, kelley_lp_tol = 1e-8;
  int kelley_max_iter = 1000;
  auto* kelley_cmd = app.add_subcommand("kelley", "cutting-plane solver for built-in test functions");
  kelley_cmd->add_option("--fn", kelley_fn, "abs1, linf2, asym1 or quad1");
  kelley_cmd->add_option("--eps", kelley_eps, "target accuracy")->required();
  kelley_cmd->add_option("--max-iter", kelley_max_iter, "iteration budget");
  kelley_cmd->add_option("--x0", kelley_x0, "start point, comma separated");
  kelley_cmd->add_option("--out", kelley_out, "output path (default stdout)");
  kelley_cmd->add_option("--lp-tolerance", kelley_lp_tol, "LP tolerance");

  std::string oracle_instance, oracle_mode = "extensive", oracle_out;
  int oracle_stage = 2, oracle_res = 33;
  double oracle_lp_tol = 1e-8;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth");
  oracle_cmd->add_option("--instance", oracle_instance, "instance JSON file")->required();
  oracle_cmd->add_option("mode", oracle_mode, "extensive or grid");
  oracle_cmd->add_option("--stage", oracle_stage, "grid stage t");
  oracle_cmd->add_option("--res", oracle_res, "grid resolution per dimension");
  oracle_cmd->add_option("--out", oracle_out, "output path (default stdout)");
  oracle_cmd->add_option("--lp-tolerance", oracle_lp_tol, "LP tolerance");

  GeneratorSpec gen_spec;
  std::string gen_family = "inventory", gen_counts, gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate a benchmark instance");
  gen_cmd->add_option("--family", gen_family, "inventory, hydro-toy or random-lp");
  gen_cmd->add_option("--T", gen_spec.T, "stage count");
  gen_cmd->add_option("--counts", gen_counts, "per-stage scenario counts, e.g. 1,2,2");
  gen_cmd->add_option("--n", gen_spec.n, "state dimension / product count");
  gen_cmd->add_option("--seed", gen_spec.seed, "generator seed");
  gen_cmd->add_option("--capacity", gen_spec.capacity, "box width");
  gen_cmd->add_option("--demand-max", gen_spec.demand_max, "demand/inflow range");
  gen_cmd->add_option("--cost-lo", gen_spec.cost_lo, "cost range low");
  gen_cmd->add_option("--cost-hi", gen_spec.cost_hi, "cost range high");
  gen_cmd->add_option("--out", gen_out, "output path (default stdout)");

  std::string suite_level = "smoke", suite_out;
  int suite_threads = 1;
  bool suite_emit_schema = false;
  auto* suite_cmd = app.add_subcommand("suite", "run the verification battery");
  suite_cmd->add_option("--level", suite_level, "smoke or full")
      ->check(CLI::IsMember({"smoke", "full"}));
  suite_cmd->add_option("--out", suite_out, "report path (default stdout)");
  suite_cmd->add_option("--threads", suite_threads, "worker threads");
  suite_cmd->add_flag("--emit-schema", suite_emit_schema,
                      "print the report JSON schema and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (ddp_cmd->parsed()) return run_ddp(ddp_f, ddp_gap_override);
    if (eddp_cmd->parsed()) return run_eddp(eddp_f, eddp_delta0);
    if (sddp_cmd->parsed())
      return run_sddp(sddp_f, sddp_replicas, sddp_audit, sddp_stat_gap, sddp_stat_z);
    if (kelley_cmd->parsed())
      return run_kelley(kelley_fn, kelley_eps, kelley_max_iter, kelley_x0,
                        kelley_out, kelley_lp_tol);
    if (oracle_cmd->parsed())
      return run_oracle(oracle_instance, oracle_mode, oracle_stage, oracle_res,
                        oracle_out, oracle_lp_tol);
    if (gen_cmd->parsed()) {
      gen_spec.family = family_from_name(gen_family);
      return run_gen(gen_spec, gen_counts, gen_out);
    }
    if (suite_cmd->parsed()) {
      const std::string self =
          std::filesystem::absolute(std::filesystem::path(argv[0])).string();
      return run_suite_cmd(suite_level, suite_out, self, suite_threads,
                           suite_emit_schema);
    }
  } catch (const RecourseViolation& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InvalidInput& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const SizeGuard& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitBadInput;
}
