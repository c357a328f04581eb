#include "msddp/json_io.hpp"

#include <fstream>

#include "msddp/errors.hpp"

namespace msddp {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw InvalidInput(where + ": expected an array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) throw InvalidInput(where + ": expected rows as arrays");
    cols = static_cast<Eigen::Index>(j[0].size());
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InvalidInput(where + ": ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& cell = row[static_cast<size_t>(c)];
      if (!cell.is_number()) throw InvalidInput(where + ": non-numeric entry");
      m(i, c) = cell.get<double>();
    }
  }
  return m;
}

Vector vector_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw InvalidInput(where + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const json& cell = j[static_cast<size_t>(i)];
    if (!cell.is_number()) throw InvalidInput(where + ": non-numeric entry");
    v(i) = cell.get<double>();
  }
  return v;
}

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end())
    throw InvalidInput(where + ": missing required field \"" + key + "\"");
  return *it;
}

}  // namespace

nlohmann::json instance_to_json(const Instance& inst) {
  json j;
  j["T"] = inst.T;
  j["lambda"] = inst.lambda;
  json stages = json::array();
  for (const StageShape& s : inst.stages) {
    json js;
    js["n"] = s.n;
    js["m"] = s.m;
    js["p"] = s.p;
    js["lower"] = vector_to_json(s.lower);
    js["upper"] = vector_to_json(s.upper);
    stages.push_back(std::move(js));
  }
  j["stages"] = std::move(stages);
  json scen = json::array();
  for (const auto& list : inst.scenarios) {
    json stage_list = json::array();
    for (const Realization& r : list) {
      json jr;
      jr["A"] = matrix_to_json(r.A);
      jr["B"] = matrix_to_json(r.B);
      jr["b"] = vector_to_json(r.b);
      jr["c"] = vector_to_json(r.c);
      if (r.G.rows() > 0) {
        jr["G"] = matrix_to_json(r.G);
        jr["Q"] = matrix_to_json(r.Q);
        jr["q"] = vector_to_json(r.q);
      }
      stage_list.push_back(std::move(jr));
    }
    scen.push_back(std::move(stage_list));
  }
  j["scenarios"] = std::move(scen);
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  Instance inst;
  inst.T = need(j, "T", "instance").get<int>();
  inst.lambda = need(j, "lambda", "instance").get<double>();

  const json& stages = need(j, "stages", "instance");
  if (!stages.is_array()) throw InvalidInput("instance: \"stages\" must be an array");
  for (size_t idx = 0; idx < stages.size(); ++idx) {
    const std::string where = "stages[" + std::to_string(idx) + "]";
    const json& js = stages[idx];
    StageShape s;
    s.n = need(js, "n", where).get<Eigen::Index>();
    s.m = need(js, "m", where).get<Eigen::Index>();
    s.p = need(js, "p", where).get<Eigen::Index>();
    s.lower = vector_from_json(need(js, "lower", where), where + ".lower");
    s.upper = vector_from_json(need(js, "upper", where), where + ".upper");
    inst.stages.push_back(std::move(s));
  }

  const json& scen = need(j, "scenarios", "instance");
  if (!scen.is_array()) throw InvalidInput("instance: \"scenarios\" must be an array");
  for (size_t t = 0; t < scen.size(); ++t) {
    const json& stage_list = scen[t];
    if (!stage_list.is_array())
      throw InvalidInput("scenarios[" + std::to_string(t) + "] must be an array");
    std::vector<Realization> list;
    for (size_t i = 0; i < stage_list.size(); ++i) {
      const std::string where =
          "scenarios[" + std::to_string(t) + "][" + std::to_string(i) + "]";
      const json& jr = stage_list[i];
      Realization r;
      r.A = matrix_from_json(need(jr, "A", where), where + ".A");
      r.B = matrix_from_json(need(jr, "B", where), where + ".B");
      r.b = vector_from_json(need(jr, "b", where), where + ".b");
      r.c = vector_from_json(need(jr, "c", where), where + ".c");
      const Eigen::Index n = r.c.size();
      const Eigen::Index n_prev = r.B.cols();
      if (jr.contains("G") || jr.contains("Q") || jr.contains("q")) {
        r.G = matrix_from_json(need(jr, "G", where), where + ".G");
        r.Q = matrix_from_json(need(jr, "Q", where), where + ".Q");
        r.q = vector_from_json(need(jr, "q", where), where + ".q");
      } else {
        r.G.resize(0, n);
        r.Q.resize(0, n_prev);
        r.q.resize(0);
      }
      list.push_back(std::move(r));
    }
    inst.scenarios.push_back(std::move(list));
  }
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open instance file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInput("malformed JSON in " + path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_text_file(path, dump_json(instance_to_json(inst)));
}

nlohmann::json pool_to_json(const CutPool& pool) {
  json j;
  j["stage"] = pool.stage;
  j["floor"] = pool.floor;
  json cuts = json::array();
  for (const Cut& c : pool.cuts) {
    json jc;
    jc["anchor"] = vector_to_json(c.anchor);
    jc["intercept"] = c.intercept;
    jc["gradient"] = vector_to_json(c.gradient);
    jc["born"] = c.born;
    cuts.push_back(std::move(jc));
  }
  j["cuts"] = std::move(cuts);
  return j;
}

CutPool pool_from_json(const nlohmann::json& j) {
  CutPool pool;
  pool.stage = need(j, "stage", "pool").get<int>();
  pool.floor = need(j, "floor", "pool").get<double>();
  const json& cuts = need(j, "cuts", "pool");
  if (!cuts.is_array()) throw InvalidInput("pool: \"cuts\" must be an array");
  for (size_t i = 0; i < cuts.size(); ++i) {
    const std::string where = "pool.cuts[" + std::to_string(i) + "]";
    const json& jc = cuts[i];
    Cut c;
    c.anchor = vector_from_json(need(jc, "anchor", where), where + ".anchor");
    c.intercept = need(jc, "intercept", where).get<double>();
    c.gradient = vector_from_json(need(jc, "gradient", where), where + ".gradient");
    c.born = need(jc, "born", where).get<int>();
    pool.cuts.push_back(std::move(c));
  }
  pool.dim = pool.cuts.empty() ? 0 : pool.cuts.front().anchor.size();
  return pool;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open output file: " + path.string());
  out << text;
}

}  // namespace msddp
