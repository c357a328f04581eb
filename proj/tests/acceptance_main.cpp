#include <cstdlib>
#include <iostream>

#include "msddp/suite.hpp"

int main() {
  const char* cli = std::getenv("MSDDP_CLI");
  const msddp::SuiteReport report =
      msddp::run_suite("full", cli ? cli : "", 2);
  for (const msddp::CriterionResult& c : report.criteria) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << " ("
              << c.name << "): " << c.detail << "\n";
  }
  std::cout << (report.all_pass ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED")
            << " in " << report.total_seconds << " s\n";
  return report.all_pass ? 0 : 1;
}
