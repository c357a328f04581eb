#include "msddp/instance.hpp"

#include <cmath>
#include <sstream>

#include "msddp/errors.hpp"

namespace msddp {

namespace {

bool all_finite(const Matrix& m) { return m.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

void check_dims(std::vector<std::string>& out, const std::string& where,
                const Matrix& m, Eigen::Index rows, Eigen::Index cols,
                const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << where << ": " << name << " is " << m.rows() << "x" << m.cols()
       << ", expected " << rows << "x" << cols;
    out.push_back(os.str());
  } else if (!all_finite(m)) {
    out.push_back(where + ": " + name + " has non-finite entries");
  }
}

void check_dims(std::vector<std::string>& out, const std::string& where,
                const Vector& v, Eigen::Index size, const char* name) {
  if (v.size() != size) {
    std::ostringstream os;
    os << where << ": " << name << " has length " << v.size() << ", expected "
       << size;
    out.push_back(os.str());
  } else if (!all_finite(v)) {
    out.push_back(where + ": " + name + " has non-finite entries");
  }
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.T < 2) out.push_back("T must be at least 2");
  if (!(inst.lambda > 0.0) || !(inst.lambda <= 1.0) || !std::isfinite(inst.lambda))
    out.push_back("lambda must lie in (0, 1]");
  if (static_cast<int>(inst.stages.size()) != inst.T)
    out.push_back("stages list must have exactly T entries");
  if (static_cast<int>(inst.scenarios.size()) != inst.T)
    out.push_back("scenarios list must have exactly T entries");
  if (inst.stages.empty() || inst.scenarios.empty() ||
      static_cast<int>(inst.stages.size()) != inst.T ||
      static_cast<int>(inst.scenarios.size()) != inst.T)
    return out;  // shapes unusable, stop before indexing out of range

  for (int t = 1; t <= inst.T; ++t) {
    const StageShape& s = inst.shape(t);
    const std::string where = "stage " + std::to_string(t);
    if (s.n < 1) out.push_back(where + ": n must be at least 1");
    if (s.m < 0 || s.p < 0) out.push_back(where + ": negative row count");
    if (s.lower.size() != s.n || s.upper.size() != s.n) {
      out.push_back(where + ": box bounds must have length n");
      continue;
    }
    if (!all_finite(s.lower) || !all_finite(s.upper))
      out.push_back(where + ": box bounds must be finite");
    else if ((s.lower.array() > s.upper.array()).any())
      out.push_back(where + ": lower bound exceeds upper bound");
  }

  if (inst.num_scenarios(1) != 1)
    out.push_back("stage 1 must have exactly one scenario (N_1 = 1), found " +
                  std::to_string(inst.num_scenarios(1)));

  for (int t = 1; t <= inst.T; ++t) {
    if (inst.num_scenarios(t) < 1) {
      out.push_back("stage " + std::to_string(t) + ": empty scenario list");
      continue;
    }
    const StageShape& s = inst.shape(t);
    const Eigen::Index n_prev = inst.dim(t - 1);
    for (int i = 0; i < inst.num_scenarios(t); ++i) {
      const Realization& r = inst.stage_scenarios(t)[static_cast<size_t>(i)];
      std::ostringstream ws;
      ws << "stage " << t << " scenario " << i;
      const std::string where = ws.str();
      check_dims(out, where, r.A, s.m, s.n, "A");
      check_dims(out, where, r.B, s.m, n_prev, "B");
      check_dims(out, where, r.b, s.m, "b");
      check_dims(out, where, r.c, s.n, "c");
      check_dims(out, where, r.G, s.p, s.n, "G");
      check_dims(out, where, r.Q, s.p, n_prev, "Q");
      check_dims(out, where, r.q, s.p, "q");
    }
  }
  return out;
}

void require_valid(const Instance& inst) {
  const auto violations = validate_instance(inst);
  if (violations.empty()) return;
  std::ostringstream os;
  os << "invalid instance (" << violations.size() << " violation(s)):";
  for (const auto& v : violations) os << "\n  - " << v;
  throw InvalidInput(os.str());
}

}  // namespace msddp
