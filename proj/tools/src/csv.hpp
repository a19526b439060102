#ifndef AOI_TOOLS_CSV_HPP
#define AOI_TOOLS_CSV_HPP

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <string_view>

namespace aoi::tools {

/// 12 significant digits, '.' decimal, no separators.
std::string format_number(double value);

std::uint64_t fnv1a64(std::string_view text);
std::string hex64(std::uint64_t value);

/// CSV destination: a file when a path is given, stdout otherwise.
/// Rows flush immediately so long sweeps leave partial results behind.
class CsvSink {
public:
    explicit CsvSink(const std::string& path);

    std::ostream& stream();
    void comment(const std::string& text);
    void line(const std::string& text);

private:
    std::ofstream file_;
    std::ostream* out_;
};

/// The `# tool version, seed, manifest hash` comment every CSV starts with.
std::string provenance_line(std::uint64_t seed, std::string_view manifest);
std::string provenance_line_unseeded(std::string_view manifest);

} // namespace aoi::tools

#endif
