#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "msddp/cutmodel.hpp"
#include "msddp/instance.hpp"

namespace msddp {

// Instance documents use these exact fields:
//   {"T", "lambda", "stages": [{"n","m","p","lower","upper"}],
//    "scenarios": [[{"A","B","b","c","G","Q","q"}]]}
// Matrices are row-major arrays of arrays. Omitting G/Q/q means p = 0.

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

// Cut pools serialize as
//   {"stage", "floor", "cuts": [{"anchor","intercept","gradient","born"}]}
nlohmann::json pool_to_json(const CutPool& pool);
CutPool pool_from_json(const nlohmann::json& j);

/// Serializes with a trailing newline; output bytes depend only on the value.
std::string dump_json(const nlohmann::json& j);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace msddp
