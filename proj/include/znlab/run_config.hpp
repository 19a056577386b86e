#pragma once

#include <map>
#include <string>
#include <vector>

#include "znlab/errors.hpp"

namespace znlab {

/// Fully resolved run configuration: subcommand plus a flat key/value map in
/// which every default has been materialized, so the whole provenance of a
/// run is serializable.
struct RunConfig {
    std::string subcommand;
    std::map<std::string, std::string> values;

    const std::string& get(const std::string& key) const;
    int get_int(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;

    friend bool operator==(const RunConfig& a, const RunConfig& b) {
        return a.subcommand == b.subcommand && a.values == b.values;
    }
};

/// Key/value lines parsed from text; '#' starts a comment, blank lines are
/// skipped, whitespace-separated key=value pairs may share a line.
std::vector<std::pair<int, std::pair<std::string, std::string>>> parse_kv_text(
    const std::string& text);

/// Resolve a configuration: defaults for the subcommand, overlaid by file
/// entries, overlaid by flag entries (flags win). Unknown keys, unparsable
/// values, and violated preconditions raise ConfigError.
RunConfig resolve_config(const std::string& subcommand, const std::string& file_text,
                         const std::vector<std::pair<std::string, std::string>>& flag_entries);

/// Canonical key=value text of a resolved config; resolve_config on the
/// emitted text reproduces the config exactly.
std::string emit_config(const RunConfig& config);

std::vector<std::string> known_subcommands();

}  // namespace znlab
