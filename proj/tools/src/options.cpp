#include "options.hpp"

#include "csv.hpp"

#include <aoi/errors.hpp>

#include <algorithm>
#include <istream>
#include <sstream>

namespace aoi::tools {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "N",     "C",    "z",      "w",           "r",         "s",
        "lambda", "precision", "slots", "runs", "warmup", "batch_length",
        "base_seed", "policies", "w_grid"};
    return keys;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw invalid_parameter_error("config key '" + key + "' has non-numeric value '" +
                                      value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const long long parsed = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw invalid_parameter_error("config key '" + key + "' has non-integer value '" +
                                      value + "'");
    }
}

} // namespace

std::map<std::string, std::string> parse_config_file(std::istream& in) {
    std::map<std::string, std::string> values;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw invalid_parameter_error("config line " + std::to_string(line_number) +
                                          " is not 'key = value': " + stripped);
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
            throw invalid_parameter_error("unknown config key '" + key + "'");
        }
        values[key] = value;
    }
    return values;
}

void apply_config(ToolOptions& options, const std::map<std::string, std::string>& file_values,
                  const std::vector<std::string>& explicit_keys) {
    const auto overridden = [&explicit_keys](const std::string& key) {
        return std::find(explicit_keys.begin(), explicit_keys.end(), key) != explicit_keys.end();
    };
    for (const auto& [key, value] : file_values) {
        if (overridden(key)) continue;
        if (key == "N") {
            options.network.users_per_cluster = static_cast<int>(parse_int(key, value));
        } else if (key == "C") {
            options.network.clusters = static_cast<int>(parse_int(key, value));
        } else if (key == "z") {
            options.network.moment_order = static_cast<int>(parse_int(key, value));
        } else if (key == "w") {
            options.network.active_weight = parse_double(key, value);
        } else if (key == "r") {
            options.r = parse_double(key, value);
        } else if (key == "s") {
            options.s = parse_double(key, value);
        } else if (key == "lambda") {
            options.lambda = parse_double(key, value);
        } else if (key == "precision") {
            options.precision = parse_double(key, value);
        } else if (key == "slots") {
            options.sim.slots = parse_int(key, value);
        } else if (key == "runs") {
            options.sim.runs = static_cast<int>(parse_int(key, value));
        } else if (key == "warmup") {
            options.sim.warmup_slots = parse_int(key, value);
        } else if (key == "batch_length") {
            options.sim.batch_length = parse_int(key, value);
        } else if (key == "base_seed") {
            options.sim.base_seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "policies") {
            options.policies = parse_name_list(value);
        } else if (key == "w_grid") {
            options.w_grid = parse_double_list(value);
        }
    }
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const std::string stripped = trim(item);
        if (stripped.empty()) continue;
        values.push_back(parse_double("list entry", stripped));
    }
    return values;
}

std::vector<std::string> parse_name_list(const std::string& text) {
    std::vector<std::string> names;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const std::string stripped = trim(item);
        if (!stripped.empty()) names.push_back(stripped);
    }
    return names;
}

std::string canonical_manifest(const std::string& command, const ToolOptions& options) {
    std::ostringstream out;
    out << "cmd=" << command;
    out << ";N=" << options.network.users_per_cluster;
    out << ";C=" << options.network.clusters;
    out << ";z=" << options.network.moment_order;
    out << ";w=" << format_number(options.network.active_weight);
    if (options.r >= 0.0) out << ";r=" << format_number(options.r);
    if (options.s >= 0.0) out << ";s=" << format_number(options.s);
    if (options.lambda >= 0.0) out << ";lambda=" << format_number(options.lambda);
    out << ";precision=" << format_number(options.precision);
    out << ";slots=" << options.sim.slots;
    out << ";runs=" << options.sim.runs;
    out << ";warmup=" << options.sim.warmup_slots;
    out << ";batch_length=" << options.sim.batch_length;
    out << ";base_seed=" << options.sim.base_seed;
    if (!options.policies.empty()) {
        out << ";policies=";
        for (size_t i = 0; i < options.policies.size(); ++i) {
            if (i > 0) out << '+';
            out << options.policies[i];
        }
    }
    if (!options.w_grid.empty()) {
        out << ";w_grid=";
        for (size_t i = 0; i < options.w_grid.size(); ++i) {
            if (i > 0) out << '+';
            out << format_number(options.w_grid[i]);
        }
    }
    return out.str();
}

} // namespace aoi::tools
