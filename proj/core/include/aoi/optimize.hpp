#ifndef AOI_OPTIMIZE_HPP
#define AOI_OPTIMIZE_HPP

#include <aoi/model.hpp>
#include <aoi/second_order.hpp>

#include <utility>
#include <vector>

namespace aoi {

/// Result of the structural line search: the best stationary transmit
/// probability on the s = 1 curve, with the full (lambda, F) trace.
struct OptimizationResult {
    double lambda_star;
    double r_star;
    double s_star;
    double objective_value;
    std::vector<std::pair<double, double>> search_trace;
};

/// Smallest positive roots of the two cubics gating where the s = 1
/// optimum is guaranteed; both lie in (0, 1/2).
struct CubicRoots {
    double alpha;
    double beta;
};

/// Full objective F = w E[AoI_a^z] + (1-w) E[AoI_p^z] for one chain.
/// lambda in {0,1} maps to an infinite objective when the corresponding
/// weight is positive (lambda = 0 keeps the passive moment at exactly 1).
AoIMoments objective(const NetworkConfig& config, const ChainParams& params,
                     const SeriesControl& ctrl = {});

/// Line search over lambda in {precision, 2 precision, ...} union {1/N}
/// with s = 1 fixed. Ties break toward smaller lambda so output is
/// reproducible. lambda = 0 is excluded (degenerate).
OptimizationResult optimize_structural(const NetworkConfig& config, double precision = 0.01,
                                       const SeriesControl& ctrl = {});

/// Brute-force verification oracle: evaluates F over the full product grid
/// r, s in {step, 2 step, ..., 1}, skipping |theta| >= 1, and returns the
/// grid argmin. Loops r-major so ties resolve deterministically.
std::pair<ChainParams, double> grid_search_oracle(const NetworkConfig& config, double step,
                                                  const SeriesControl& ctrl = {});

/// h_N(y) = -(N+8)y^3 - (N-13)y^2 - 6y + 1.
double cubic_h(double y, int users_per_cluster);

/// hbar_CN(y) = (CN-10)y^3 - (CN-13)y^2 - 6y + 1.
double cubic_hbar(double y, long long cn);

/// Smallest positive root of h_N. h_N is strictly decreasing on y >= 0
/// with h_N(0) = 1 and h_N(1) = -2N, so plain bisection on [0,1] finds it.
double cubic_alpha(int users_per_cluster, double tol = 1e-10);

/// Smallest positive root of hbar_CN on (0,1). A 1,000-point sign scan
/// brackets the first positive-to-negative crossing before bisection
/// (hbar may have up to three real roots, but only one inside (0,1)).
double cubic_beta(int clusters, int users_per_cluster, double tol = 1e-10);

/// Both roots for one network shape.
CubicRoots cubic_roots(int clusters, int users_per_cluster, double tol = 1e-10);

} // namespace aoi

#endif
