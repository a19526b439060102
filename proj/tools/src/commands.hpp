#ifndef AOI_TOOLS_COMMANDS_HPP
#define AOI_TOOLS_COMMANDS_HPP

#include "options.hpp"

#include <functional>
#include <iosfwd>
#include <string>

namespace aoi::tools {

/// Exit codes mandated by the tool's contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;         ///< usage / invalid parameter
inline constexpr int kExitNumericDomain = 3; ///< divergent series, degenerate process
inline constexpr int kExitInternal = 4;      ///< cross-check failure: a bug

/// Theoretical pipeline for one chain: prints the second-order statistics,
/// both AoI moments and F, and emits a one-row CSV.
void cmd_analyze(const ToolOptions& options, std::ostream& out);

/// Line search on the s = 1 curve; emits the full (lambda, F) trace CSV.
void cmd_optimize(const ToolOptions& options, std::ostream& out);

/// Monte Carlo run of one policy; emits one CSV row per run plus an
/// aggregate row.
void cmd_simulate(const ToolOptions& options, const std::string& policy, std::ostream& out);

/// Reproduces the ratio experiment: per (w, policy) the empirical F against
/// the theoretical F of the structural optimum, flushed row by row.
void cmd_experiment(const ToolOptions& options, std::ostream& out);

/// Smallest positive cubic roots alpha (active) and beta (passive).
void cmd_roots(const ToolOptions& options, std::ostream& out);

/// Maps a thrown error to the documented exit code, printing the message.
int run_guarded(const std::function<void()>& body, std::ostream& err);

} // namespace aoi::tools

#endif
