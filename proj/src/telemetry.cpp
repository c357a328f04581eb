#include "msddp/telemetry.hpp"

#include <charconv>
#include <cmath>

namespace msddp {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void put(std::ostream& os, double v, bool last = false) {
  os << format_double(v) << (last ? "\n" : ",");
}

}  // namespace

void write_kelley_csv(std::ostream& os, const std::vector<Eigen::VectorXd>& iterates,
                      const std::vector<double>& values,
                      const std::vector<double>& lb_history,
                      const std::vector<double>& ub_history) {
  os << "# schema: kelley-v1\n";
  const Eigen::Index n = iterates.empty() ? 0 : iterates.front().size();
  os << "k";
  for (Eigen::Index d = 0; d < n; ++d) os << ",x_" << (d + 1);
  os << ",f,lb,ub\n";
  for (size_t k = 0; k < iterates.size(); ++k) {
    os << (k + 1) << ",";
    for (Eigen::Index d = 0; d < n; ++d) put(os, iterates[k](d));
    put(os, values[k]);
    // lb/ub exist per iteration, not per point; the final generated point
    // reuses the last bounds.
    const size_t idx = std::min(k, lb_history.size() - 1);
    put(os, lb_history.empty() ? std::numeric_limits<double>::quiet_NaN()
                               : lb_history[idx]);
    put(os, ub_history.empty() ? std::numeric_limits<double>::quiet_NaN()
                               : ub_history[idx],
        true);
  }
}

void write_ddp_csv(std::ostream& os, const std::vector<IterationRecord>& records,
                   bool timing) {
  os << "# schema: ddp-v1\n";
  const Eigen::Index path_len = records.empty() ? 0 : records.front().path.size();
  os << "k,lb,ub,gap";
  for (Eigen::Index i = 0; i < path_len; ++i) os << ",x" << (i + 1);
  if (timing) os << ",wall_ms";
  os << "\n";
  for (const IterationRecord& r : records) {
    os << r.k << ",";
    put(os, r.lb);
    put(os, r.ub);
    put(os, r.gap, path_len == 0 && !timing);
    for (Eigen::Index i = 0; i < path_len; ++i)
      put(os, r.path(i), !timing && i + 1 == path_len);
    if (timing) put(os, r.wall_ms, true);
  }
}

void write_eddp_csv(std::ostream& os, const std::vector<IterationRecord>& records,
                    int T, bool timing) {
  os << "# schema: eddp-v1\n";
  os << "k";
  for (int t = 1; t <= T - 1; ++t) os << ",s_" << t;
  os << ",g1,lb";
  for (int t = 1; t <= T; ++t) os << ",i_" << t;
  if (timing) os << ",wall_ms";
  os << "\n";
  for (const IterationRecord& r : records) {
    os << r.k;
    for (int t = 0; t < T - 1; ++t) {
      os << ",";
      os << (t < static_cast<int>(r.saturation_counts.size())
                 ? r.saturation_counts[static_cast<size_t>(t)]
                 : 0);
    }
    os << ",";
    put(os, r.g1);
    put(os, r.lb);
    for (int t = 0; t < T; ++t) {
      os << (t < static_cast<int>(r.chosen.size()) ? r.chosen[static_cast<size_t>(t)]
                                                   : 0);
      if (t + 1 < T || timing) os << ",";
    }
    if (timing) {
      put(os, r.wall_ms, true);
    } else {
      os << "\n";
    }
  }
}

void write_sddp_csv(std::ostream& os, const std::vector<IterationRecord>& records,
                    int T, bool audit, bool timing) {
  os << "# schema: " << (audit ? "sddp-audit-v1" : "sddp-v1") << "\n";
  os << "k,lb,ub_mean,ub_std";
  if (audit) {
    os << ",q";
    for (int t = 1; t <= T - 1; ++t) os << ",s_" << t;
  }
  for (int t = 1; t <= T; ++t) os << ",i_" << t;
  if (timing) os << ",wall_ms";
  os << "\n";
  for (const IterationRecord& r : records) {
    os << r.k << ",";
    put(os, r.lb);
    put(os, r.ub_mean);
    put(os, r.ub_std);
    if (audit) {
      os << r.q;
      for (int t = 0; t < T - 1; ++t) {
        os << ",";
        os << (t < static_cast<int>(r.saturation_counts.size())
                   ? r.saturation_counts[static_cast<size_t>(t)]
                   : 0);
      }
      os << ",";
    }
    for (int t = 0; t < T; ++t) {
      os << (t < static_cast<int>(r.chosen.size()) ? r.chosen[static_cast<size_t>(t)]
                                                   : 0);
      if (t + 1 < T || timing) os << ",";
    }
    if (timing) {
      put(os, r.wall_ms, true);
    } else {
      os << "\n";
    }
  }
}

nlohmann::json records_to_json(const std::vector<IterationRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  auto number_or_null = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  for (const IterationRecord& r : records) {
    nlohmann::json j;
    j["k"] = r.k;
    j["lb"] = number_or_null(r.lb);
    j["ub"] = number_or_null(r.ub);
    j["ub_mean"] = number_or_null(r.ub_mean);
    j["ub_std"] = number_or_null(r.ub_std);
    j["gap"] = number_or_null(r.gap);
    j["g1"] = number_or_null(r.g1);
    j["q"] = r.q;
    j["saturation_counts"] = r.saturation_counts;
    std::vector<double> path(r.path.data(), r.path.data() + r.path.size());
    j["path"] = path;
    j["chosen"] = r.chosen;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace msddp
