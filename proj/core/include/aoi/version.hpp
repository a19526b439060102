#ifndef AOI_VERSION_HPP
#define AOI_VERSION_HPP

namespace aoi {

inline constexpr const char* kVersion = "0.1.0";

/// Recorded in output provenance so result files identify their stream source.
inline constexpr const char* kGeneratorName = "philox4x64-10";

} // namespace aoi

#endif
