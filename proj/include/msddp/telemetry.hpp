#pragma once

#include <Eigen/Core>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace msddp {

/// One row of solver telemetry. Not every solver fills every field; the
/// writers below emit the fixed, versioned column set for each run kind.
struct IterationRecord {
  int k = 0;
  double lb = std::numeric_limits<double>::quiet_NaN();
  double ub = std::numeric_limits<double>::quiet_NaN();
  double ub_mean = std::numeric_limits<double>::quiet_NaN();
  double ub_std = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  double g1 = std::numeric_limits<double>::quiet_NaN();
  int q = -1;                           ///< new-saturation flag, -1 when untracked
  std::vector<int> saturation_counts;   ///< |S_t| for stages 1..T-1
  Eigen::VectorXd path;                 ///< states x_1..x_T flattened
  std::vector<int> chosen;              ///< 0-based scenario index per stage
  double wall_ms = 0.0;
};

/// Shortest round-trip decimal rendering; identical input bits give
/// identical text on every run.
std::string format_double(double v);

// CSV writers. Each emits a "# schema: <name>" comment, a header row and
// one line per record. wall-clock columns are only included when `timing`
// is set so that seeded runs stay byte-reproducible.
void write_kelley_csv(std::ostream& os, const std::vector<Eigen::VectorXd>& iterates,
                      const std::vector<double>& values,
                      const std::vector<double>& lb_history,
                      const std::vector<double>& ub_history);
void write_ddp_csv(std::ostream& os, const std::vector<IterationRecord>& records,
                   bool timing = false);
void write_eddp_csv(std::ostream& os, const std::vector<IterationRecord>& records,
                    int T, bool timing = false);
void write_sddp_csv(std::ostream& os, const std::vector<IterationRecord>& records,
                    int T, bool audit, bool timing = false);

nlohmann::json records_to_json(const std::vector<IterationRecord>& records);

}  // namespace msddp
