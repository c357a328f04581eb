#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace msddp {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  ///< measured quantities against their bounds
  double seconds = 0.0;
};

struct SuiteReport {
  std::string level;  ///< "smoke" or "full"
  std::vector<CriterionResult> criteria;
  bool all_pass = false;
  double total_seconds = 0.0;
};

/// Runs the verification battery. `level` is "smoke" (reduced workloads)
/// or "full". `cli_path` locates the command-line binary for the
/// reproducibility criterion; when empty that criterion fails with an
/// explanatory message. `threads` caps worker threads inside criteria.
SuiteReport run_suite(const std::string& level, const std::string& cli_path,
                      int threads = 1);

nlohmann::json report_to_json(const SuiteReport& report);

/// JSON schema describing the report document.
std::string suite_report_schema();

/// Structural validation of a report document against the shipped schema:
/// required fields present with the right types. Returns problems found.
std::vector<std::string> validate_report_document(const nlohmann::json& doc);

}  // namespace msddp
