#include "znlab/emit.hpp"

#include <cstdio>
#include <fstream>

namespace znlab {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot open output file: " + path);
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    if (!os) throw DomainError("write failed: " + path);
}

nlohmann::json config_metadata(const RunConfig& config) {
    nlohmann::json meta;
    meta["subcommand"] = config.subcommand;
    for (const auto& [k, v] : config.values) meta["config"][k] = v;
    return meta;
}

void write_json(const std::string& path, nlohmann::json body, const RunConfig& config) {
    body["schema_version"] = "1";
    body["meta"] = config_metadata(config);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot open output file: " + path);
    os << body.dump(2) << "\n";
    if (!os) throw DomainError("write failed: " + path);
}

}  // namespace znlab
