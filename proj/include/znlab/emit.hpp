#pragma once

#include <string>
#include <vector>

#include "znlab/run_config.hpp"

#include "json.hpp"

namespace znlab {

/// 17 significant digits, locale-independent; round-trips the double exactly.
std::string format_double(double v);

/// Header + rows; byte-identical across runs for identical inputs.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// JSON document with schema_version and the fully resolved config attached.
void write_json(const std::string& path, nlohmann::json body, const RunConfig& config);

nlohmann::json config_metadata(const RunConfig& config);

}  // namespace znlab
