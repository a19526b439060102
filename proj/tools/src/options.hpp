#ifndef AOI_TOOLS_OPTIONS_HPP
#define AOI_TOOLS_OPTIONS_HPP

#include <aoi/model.hpp>
#include <aoi/sim.hpp>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace aoi::tools {

/// Effective settings of one invocation, from defaults, then the config
/// file, then explicit flags, then the AOI_SEED environment variable.
struct ToolOptions {
    NetworkConfig network{7, 2, 1, 0.5};
    double r = -1.0;      ///< negative = not set
    double lambda = -1.0; ///< negative = not set
    double s = -1.0;      ///< negative = not set
    double precision = 0.01;
    SimParams sim;
    std::vector<std::string> policies;
    std::vector<double> w_grid;
    std::string output_path; ///< empty = CSV to stdout
    std::string trace_path;  ///< simulate only
};

/// Parses the line-oriented `key = value` format. Blank lines and lines
/// starting with '#' are skipped. Unknown keys are rejected.
std::map<std::string, std::string> parse_config_file(std::istream& in);

/// Applies config-file entries to options, skipping keys named in
/// `explicit_keys` (those were given as flags and take precedence).
void apply_config(ToolOptions& options, const std::map<std::string, std::string>& file_values,
                  const std::vector<std::string>& explicit_keys);

std::vector<double> parse_double_list(const std::string& text);
std::vector<std::string> parse_name_list(const std::string& text);

/// Canonical serialization of the effective options; hashed into output
/// provenance so identical manifests are recognizable.
std::string canonical_manifest(const std::string& command, const ToolOptions& options);

} // namespace aoi::tools

#endif
