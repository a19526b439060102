#ifndef AOI_SECOND_ORDER_HPP
#define AOI_SECOND_ORDER_HPP

#include <aoi/model.hpp>

namespace aoi {

/// Truncation policy for the covariance series. The sums themselves run to
/// infinity; evaluation stops once a geometric bound on the remaining tail
/// drops below `tolerance`, or after `max_terms` terms regardless.
struct SeriesControl {
    double tolerance = 1e-12;
    int max_terms = 100000;
};

void validate(const SeriesControl& ctrl);

/// Per-slot delivery rate of an active user: lambda (1-lambda)^(N-1).
double active_mean(double lambda, int users_per_cluster);

/// Per-slot detection rate of a passive user: (1-lambda)^(CN).
double passive_mean(double lambda, int clusters, int users_per_cluster);

/// Temporal variance of the delivery process.
///
/// Evaluated two ways on every call: the literal series truncated by `ctrl`,
/// and an exact finite closed form obtained by binomially expanding the
/// kernel and summing each geometric subseries. Disagreement beyond
/// 10 x tolerance raises internal_inconsistency_error; the closed-form
/// value is returned.
double active_temporal_variance(const ChainParams& params, int users_per_cluster,
                                const SeriesControl& ctrl = {});

/// Same dual-route scheme with the passive kernel (1-lambda+lambda theta^k)^(CN).
double passive_temporal_variance(const ChainParams& params, int clusters,
                                 int users_per_cluster, const SeriesControl& ctrl = {});

enum class ProcessKind { active, passive };

/// Prob(S(k+1)=1 | S(1)=1), computed by iterating the conditional-probability
/// recursion G(i) = r + theta G(i-1) rather than its closed form. Serves as
/// the independent oracle for the series kernels above.
double conditional_success_probability(const ChainParams& params, int users_per_cluster,
                                       int k, ProcessKind kind, int clusters = 1);

} // namespace aoi

#endif
