#ifndef AOI_MODEL_HPP
#define AOI_MODEL_HPP

#include <aoi/errors.hpp>

namespace aoi {

/// Slack applied when validating probabilities, to absorb floating-point
/// construction noise (e.g. 1.0000000000000002 from a division chain).
inline constexpr double kProbabilitySlack = 1e-12;

/// Two-state TX/Idle transmission chain of one active user.
///
/// r = Prob(Idle -> TX), s = Prob(TX -> Idle). The derived pair is stored,
/// not recomputed: lambda = r/(r+s) is the stationary TX probability and
/// theta = 1-r-s the memory parameter (theta = 0 is i.i.d. slotted ALOHA).
/// Keeping lambda exact makes lambda-parameterized searches exact at their
/// grid points.
struct ChainParams {
    double r;
    double s;
    double lambda;
    double theta;
};

/// Builds ChainParams from the transition probabilities.
/// Requires r, s in [0,1] and r+s > 0 (lambda is undefined at r=s=0).
ChainParams params_from_rs(double r, double s);

/// Builds ChainParams from (lambda, theta) via r = lambda(1-theta),
/// s = (1-lambda)(1-theta). Rejects pairs whose implied r or s leaves [0,1].
ChainParams params_from_lambda_theta(double lambda, double theta);

/// Chain with s = 1: the user goes Idle immediately after every
/// transmission attempt. Equivalent to theta = -lambda/(1-lambda),
/// constructed so that s == 1 and theta == -r hold exactly.
ChainParams one_shot_chain(double lambda);

/// Network shape and objective weights.
struct NetworkConfig {
    int users_per_cluster; ///< N, active users per cluster (N >= 2)
    int clusters;          ///< C >= 1
    int moment_order;      ///< z >= 1
    double active_weight;  ///< w in [0,1]
};

void validate(const NetworkConfig& config);

/// Long-run mean and temporal variance of a binary success process.
struct SecondOrderStats {
    double mean;
    double temporal_variance;
};

/// Moments of AoI for both user classes plus the weighted objective
/// F = w E[AoI_a^z] + (1-w) E[AoI_p^z].
struct AoIMoments {
    int order;
    double active_moment;
    double passive_moment;
    double objective;
};

} // namespace aoi

#endif
