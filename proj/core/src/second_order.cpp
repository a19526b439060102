#include <aoi/second_order.hpp>

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

namespace aoi {

namespace {

long double ipow(long double base, int exponent) {
    long double acc = 1.0L;
    while (exponent > 0) {
        if (exponent & 1) acc *= base;
        base *= base;
        exponent >>= 1;
    }
    return acc;
}

void check_chain(const ChainParams& params) {
    if (std::abs(params.theta) >= 1.0) {
        throw divergent_series_error("covariance series requires |theta| < 1, got theta = " +
                                     std::to_string(params.theta));
    }
    if (params.lambda <= 0.0 || params.lambda >= 1.0) {
        throw degenerate_process_error("success process is constant at lambda = " +
                                       std::to_string(params.lambda));
    }
}

// Binomial weights C(n,j) (1-lambda)^(n-j) lambda^j for j = 0..n. Exact
// long-double products up to n = 64, log-space beyond (C(n,j) alone
// overflows well before n = 1030, and accuracy degrades earlier).
std::vector<long double> binomial_weights(int n, double lambda) {
    std::vector<long double> weights(static_cast<size_t>(n) + 1);
    if (n <= 64) {
        long double coeff = 1.0L;
        for (int j = 0; j <= n; ++j) {
            weights[j] = coeff * ipow(1.0L - lambda, n - j) * ipow(lambda, j);
            coeff = coeff * (n - j) / (j + 1);
        }
    } else {
        const long double log_lam = std::log(static_cast<long double>(lambda));
        const long double log_one_minus = std::log1p(static_cast<long double>(-lambda));
        for (int j = 0; j <= n; ++j) {
            const long double log_choose =
                std::lgamma(n + 1.0L) - std::lgamma(j + 1.0L) - std::lgamma(n - j + 1.0L);
            weights[j] = std::exp(log_choose + (n - j) * log_one_minus + j * log_lam);
        }
    }
    return weights;
}

// sum_{k>=1} (theta^p)^k = theta^p / (1 - theta^p), |theta| < 1, p >= 1.
long double geometric_tail(long double theta, int p) {
    const long double tp = ipow(theta, p);
    return tp / (1.0L - tp);
}

struct DualRoute {
    long double series;
    long double closed;
};

// Shared dual-route evaluation of sum_{k>=1} (kernel(theta^k) - m) where the
// kernel is (lam + (1-lam) t) (1-lam + lam t)^(N-1) for the active process
// and (1-lam + lam t)^(CN) for the passive one. The k-independent binomial
// term cancels against m exactly, leaving pure geometric series.
DualRoute covariance_sum(const ChainParams& params, int exponent, bool active,
                         long double mean, const SeriesControl& ctrl) {
    const long double lam = params.lambda;
    const long double theta = params.theta;
    const long double abs_theta = std::abs(theta);

    // (i) literal series. Term k is bounded by m |theta|^k (1+lam)^(n),
    //     n = exponent + (active ? 1 : 0), so after term k the remaining
    //     tail is below that bound times |theta|/(1-|theta|).
    const int bound_power = exponent + (active ? 1 : 0);
    const long double tail_factor =
        ipow(1.0L + lam, bound_power) * abs_theta / (1.0L - abs_theta);
    long double series = 0.0L;
    long double theta_k = theta;
    for (int k = 1; k <= ctrl.max_terms; ++k) {
        const long double base = 1.0L - lam + lam * theta_k;
        long double kernel = ipow(base, exponent);
        if (active) kernel *= lam + (1.0L - lam) * theta_k;
        series += kernel - mean;
        if (2.0L * mean * ipow(abs_theta, k) * tail_factor < ctrl.tolerance) break;
        theta_k *= theta;
    }

    // (ii) exact closed form from the binomial expansion.
    const std::vector<long double> weights = binomial_weights(exponent, params.lambda);
    long double closed = 0.0L;
    if (active) {
        long double inner = 0.0L;  // lam * sum_{j>=1} w_j g(j)
        long double outer = 0.0L;  // (1-lam) * sum_{j>=0} w_j g(j+1)
        for (int j = 0; j <= exponent; ++j) {
            if (j >= 1) inner += weights[j] * geometric_tail(theta, j);
            outer += weights[j] * geometric_tail(theta, j + 1);
        }
        closed = lam * inner + (1.0L - lam) * outer;
    } else {
        for (int j = 1; j <= exponent; ++j) {
            closed += weights[j] * geometric_tail(theta, j);
        }
    }
    return DualRoute{series, closed};
}

double finish_variance(long double mean, DualRoute routes, const SeriesControl& ctrl) {
    const long double v_series = 2.0L * routes.series * mean + mean - mean * mean;
    const long double v_closed = 2.0L * routes.closed * mean + mean - mean * mean;
    if (std::abs(static_cast<double>(v_series - v_closed)) > 10.0 * ctrl.tolerance) {
        throw internal_inconsistency_error(
            "temporal variance: series and closed form disagree (" +
            std::to_string(static_cast<double>(v_series)) + " vs " +
            std::to_string(static_cast<double>(v_closed)) + ")");
    }
    double result = static_cast<double>(v_closed);
    if (result < 0.0) {
        if (result < -1e-10) {
            throw internal_inconsistency_error("temporal variance came out negative: " +
                                               std::to_string(result));
        }
        result = 0.0;
    }
    return result;
}

} // namespace

void validate(const SeriesControl& ctrl) {
    if (!(ctrl.tolerance > 0.0)) {
        throw invalid_parameter_error("series tolerance must be positive");
    }
    if (ctrl.max_terms < 1) {
        throw invalid_parameter_error("series max_terms must be >= 1");
    }
}

double active_mean(double lambda, int users_per_cluster) {
    if (users_per_cluster < 2) {
        throw invalid_parameter_error("N must be >= 2");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw invalid_parameter_error("lambda must lie in [0,1]");
    }
    return static_cast<double>(lambda * ipow(1.0L - lambda, users_per_cluster - 1));
}

double passive_mean(double lambda, int clusters, int users_per_cluster) {
    if (users_per_cluster < 2) {
        throw invalid_parameter_error("N must be >= 2");
    }
    if (clusters < 1) {
        throw invalid_parameter_error("C must be >= 1");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw invalid_parameter_error("lambda must lie in [0,1]");
    }
    return static_cast<double>(ipow(1.0L - lambda, clusters * users_per_cluster));
}

double active_temporal_variance(const ChainParams& params, int users_per_cluster,
                                const SeriesControl& ctrl) {
    if (users_per_cluster < 2) {
        throw invalid_parameter_error("N must be >= 2");
    }
    validate(ctrl);
    check_chain(params);
    const long double mean = active_mean(params.lambda, users_per_cluster);
    return finish_variance(mean,
                           covariance_sum(params, users_per_cluster - 1, true, mean, ctrl),
                           ctrl);
}

double passive_temporal_variance(const ChainParams& params, int clusters,
                                 int users_per_cluster, const SeriesControl& ctrl) {
    if (users_per_cluster < 2 || clusters < 1) {
        throw invalid_parameter_error("need N >= 2 and C >= 1");
    }
    validate(ctrl);
    check_chain(params);
    const long double mean = passive_mean(params.lambda, clusters, users_per_cluster);
    return finish_variance(
        mean, covariance_sum(params, clusters * users_per_cluster, false, mean, ctrl), ctrl);
}

double conditional_success_probability(const ChainParams& params, int users_per_cluster,
                                       int k, ProcessKind kind, int clusters) {
    if (k < 1) {
        throw invalid_parameter_error("conditional probability needs k >= 1");
    }
    if (users_per_cluster < 2 || clusters < 1) {
        throw invalid_parameter_error("need N >= 2 and C >= 1");
    }
    if (std::abs(params.theta) >= 1.0) {
        throw divergent_series_error("recursion fixed point requires |theta| < 1");
    }
    // G(i) = r + theta G(i-1), from G(1) = 1 for the conditioning user's own
    // state and G(1) = 0 for everyone else.
    long double own = 1.0L;
    long double other = 0.0L;
    for (int i = 2; i <= k + 1; ++i) {
        own = params.r + params.theta * own;
        other = params.r + params.theta * other;
    }
    if (kind == ProcessKind::active) {
        return static_cast<double>(own * ipow(1.0L - other, users_per_cluster - 1));
    }
    return static_cast<double>(ipow(1.0L - other, clusters * users_per_cluster));
}

} // namespace aoi
