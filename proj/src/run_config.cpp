#include "znlab/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace znlab {

namespace {

enum class KeyType { Int, UInt64, Double, String, Choice };

struct KeySpec {
    const char* name;
    KeyType type;
    const char* default_value;
    const char* choices = "";  // '|'-separated for Choice
};

// Shared numeric tolerances default to the values documented per module.
const std::vector<KeySpec> kCommon = {
    {"out", KeyType::String, ""},
    {"seed", KeyType::UInt64, "1"},
};

const std::vector<KeySpec> kLattice = {
    {"N", KeyType::Int, "2"},
    {"L", KeyType::Int, "2"},
    {"L1", KeyType::Int, "0"},  // 0: use L
    {"L2", KeyType::Int, "0"},
};

const std::vector<KeySpec> kRmftShared = {
    {"d", KeyType::Int, "3"},
    {"h", KeyType::Double, "0"},
    {"quad_order", KeyType::Int, "64"},
    {"rmft_tol", KeyType::Double, "1e-10"},
    {"damping", KeyType::Double, "0.5"},
    {"max_iter", KeyType::Int, "100000"},
    {"eps_order", KeyType::Double, "1e-4"},
};

std::map<std::string, std::vector<KeySpec>> registry() {
    std::map<std::string, std::vector<KeySpec>> r;
    auto add = [](std::vector<KeySpec> base, std::vector<KeySpec> extra) {
        base.insert(base.end(), extra.begin(), extra.end());
        return base;
    };
    const std::vector<KeySpec> gauge = add(
        kLattice, {{"lambda1", KeyType::Double, "0"},
                   {"lambda2", KeyType::Double, "1"},
                   {"eig_tol", KeyType::Double, "1e-10"},
                   {"degeneracy_tol", KeyType::Double, "0"},  // 0: 1e-8 * lambda2
                   {"max_iter", KeyType::Int, "2000"}});

    r["spectrum"] = add(add(kCommon, gauge),
                        {{"model", KeyType::Choice, "gauge", "gauge|clock"},
                         {"k", KeyType::Int, "0"},  // 0: N^2 + 4
                         {"tau", KeyType::Choice, "none", "none|random"},
                         {"ntau_obstruction", KeyType::Choice, "resample", "resample|keep"},
                         {"charges", KeyType::String, ""},
                         {"mass", KeyType::Double, "0"},
                         {"twist_a", KeyType::Int, "0"},
                         {"twist_b", KeyType::Int, "0"},
                         {"sector", KeyType::Int, "0"}});
    r["gap"] = add(add(kCommon, kLattice), {{"lambda2", KeyType::Double, "1"}});
    r["braid"] = add(add(kCommon, kLattice), {{"q", KeyType::Int, "1"},
                                              {"around_both", KeyType::Int, "0"}});
    r["duality-check"] = add(add(kCommon, gauge), {{"levels", KeyType::Int, "8"}});
    r["rgc-check"] =
        add(add(kCommon, gauge),
            {{"draws", KeyType::Int, "50"},
             {"ntau_obstruction", KeyType::Choice, "resample", "resample|keep"}});
    r["mft-scan"] = add(kCommon, {{"d", KeyType::Int, "3"},
                                  {"h", KeyType::Double, "0"},
                                  {"beta_min", KeyType::Double, "0.4"},
                                  {"beta_max", KeyType::Double, "10"},
                                  {"beta_steps", KeyType::Int, "1"}});
    r["rmft-solve"] = add(add(kCommon, kRmftShared), {{"T_over_J", KeyType::Double, "1"},
                                                      {"J0_over_J", KeyType::Double, "1"}});
    r["rmft-phase-diagram"] =
        add(add(kCommon, kRmftShared), {{"axes", KeyType::Choice, "TJ", "TJ|TJ0"},
                                        {"x_min", KeyType::Double, "0.1"},
                                        {"x_max", KeyType::Double, "3.2"},
                                        {"nx", KeyType::Int, "30"},
                                        {"y_min", KeyType::Double, "0"},
                                        {"y_max", KeyType::Double, "2"},
                                        {"ny", KeyType::Int, "30"}});
    return r;
}

void check_value(const KeySpec& spec, const std::string& value, int line) {
    try {
        std::size_t pos = 0;
        switch (spec.type) {
            case KeyType::Int: {
                (void)std::stoll(value, &pos);
                if (pos != value.size()) throw std::invalid_argument("trailing characters");
                break;
            }
            case KeyType::UInt64: {
                (void)std::stoull(value, &pos);
                if (pos != value.size()) throw std::invalid_argument("trailing characters");
                break;
            }
            case KeyType::Double: {
                const double v = std::stod(value, &pos);
                if (pos != value.size() || !std::isfinite(v))
                    throw std::invalid_argument("not a finite number");
                break;
            }
            case KeyType::String:
                break;
            case KeyType::Choice: {
                std::string choices(spec.choices);
                std::stringstream ss(choices);
                std::string c;
                bool ok = false;
                while (std::getline(ss, c, '|'))
                    if (c == value) ok = true;
                if (!ok)
                    throw std::invalid_argument("expected one of " + choices);
                break;
            }
        }
    } catch (const std::exception& e) {
        throw ConfigError("bad value for key '" + std::string(spec.name) + "': " + value + " (" +
                              e.what() + ")",
                          line);
    }
}

void semantic_checks(RunConfig& cfg) {
    auto has = [&cfg](const char* k) { return cfg.values.count(k) > 0; };
    if (has("N") && cfg.get_int("N") < 2) throw ConfigError("N must be >= 2");
    for (const char* k : {"L", "L1", "L2"})
        if (has(k) && cfg.get_int(k) != 0 && cfg.get_int(k) < 2)
            throw ConfigError(std::string(k) + " must be >= 2");
    if (has("lambda2") && !(cfg.get_double("lambda2") > 0.0))
        throw ConfigError("lambda2 must be > 0");
    if (has("lambda1") && cfg.get_double("lambda1") < 0.0)
        throw ConfigError("lambda1 must be >= 0");
    if (has("quad_order") && cfg.get_int("quad_order") < 16)
        throw ConfigError("quad_order must be >= 16");
    if (has("d") && cfg.get_int("d") < 2) throw ConfigError("d must be >= 2");
    // Resolve the L1/L2 shorthand so emitted configs are fully explicit.
    if (has("L1") && cfg.get_int("L1") == 0) cfg.values["L1"] = cfg.values["L"];
    if (has("L2") && cfg.get_int("L2") == 0) cfg.values["L2"] = cfg.values["L"];
}

}  // namespace

const std::string& RunConfig::get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
}

int RunConfig::get_int(const std::string& key) const {
    const long long v = std::stoll(get(key));
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ConfigError("value of '" + key + "' is out of range");
    return static_cast<int>(v);
}
double RunConfig::get_double(const std::string& key) const { return std::stod(get(key)); }
std::uint64_t RunConfig::get_u64(const std::string& key) const { return std::stoull(get(key)); }

std::vector<std::pair<int, std::pair<std::string, std::string>>> parse_kv_text(
    const std::string& text) {
    std::vector<std::pair<int, std::pair<std::string, std::string>>> out;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::stringstream ls(line);
        std::string token;
        while (ls >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ConfigError("expected key=value, got '" + token + "'", line_no);
            out.push_back({line_no, {token.substr(0, eq), token.substr(eq + 1)}});
        }
    }
    return out;
}

RunConfig resolve_config(const std::string& subcommand, const std::string& file_text,
                         const std::vector<std::pair<std::string, std::string>>& flag_entries) {
    const auto reg = registry();
    auto it = reg.find(subcommand);
    if (it == reg.end()) throw ConfigError("unknown subcommand '" + subcommand + "'");
    const auto& keys = it->second;

    RunConfig cfg;
    cfg.subcommand = subcommand;
    for (const auto& k : keys) cfg.values[k.name] = k.default_value;

    auto apply = [&keys, &cfg](const std::string& key, const std::string& value, int line) {
        auto spec = std::find_if(keys.begin(), keys.end(),
                                 [&key](const KeySpec& s) { return key == s.name; });
        if (spec == keys.end()) throw ConfigError("unknown key '" + key + "'", line);
        check_value(*spec, value, line);
        cfg.values[key] = value;
    };
    for (const auto& [line, kv] : parse_kv_text(file_text)) apply(kv.first, kv.second, line);
    for (const auto& [key, value] : flag_entries) apply(key, value, -1);

    semantic_checks(cfg);
    return cfg;
}

std::string emit_config(const RunConfig& config) {
    std::ostringstream os;
    for (const auto& [k, v] : config.values)
        if (!v.empty()) os << k << "=" << v << "\n";
    return os.str();
}

std::vector<std::string> known_subcommands() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

}  // namespace znlab
