#include "csv.hpp"

#include <aoi/errors.hpp>
#include <aoi/version.hpp>

#include <cstdio>

namespace aoi::tools {

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (const char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(value));
    return buffer;
}

CsvSink::CsvSink(const std::string& path) : out_(&std::cout) {
    if (!path.empty()) {
        file_.open(path, std::ios::trunc);
        if (!file_) {
            throw invalid_parameter_error("cannot open output file: " + path);
        }
        out_ = &file_;
    }
}

std::ostream& CsvSink::stream() { return *out_; }

void CsvSink::comment(const std::string& text) {
    *out_ << "# " << text << '\n';
    out_->flush();
}

void CsvSink::line(const std::string& text) {
    *out_ << text << '\n';
    out_->flush();
}

std::string provenance_line(std::uint64_t seed, std::string_view manifest) {
    return std::string("aoi ") + kVersion + " seed=" + std::to_string(seed) +
           " manifest_hash=" + hex64(fnv1a64(manifest)) + " generator=" + kGeneratorName;
}

std::string provenance_line_unseeded(std::string_view manifest) {
    return std::string("aoi ") + kVersion +
           " seed=- manifest_hash=" + hex64(fnv1a64(manifest)) + " generator=" + kGeneratorName;
}

} // namespace aoi::tools
