#include <aoi/optimize.hpp>

#include <aoi/moments.hpp>

#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <thread>

namespace aoi {

namespace {

double weighted_objective(double w, double active, double passive) {
    // Avoid 0 * inf = NaN at degenerate endpoints.
    if (w <= 0.0) return passive;
    if (w >= 1.0) return active;
    return w * active + (1.0 - w) * passive;
}

} // namespace

AoIMoments objective(const NetworkConfig& config, const ChainParams& params,
                     const SeriesControl& ctrl) {
    validate(config);
    validate(ctrl);
    if (std::abs(params.theta) >= 1.0) {
        throw divergent_series_error("objective needs |theta| < 1");
    }
    const int n = config.users_per_cluster;
    const int c = config.clusters;
    const int z = config.moment_order;
    const double inf = std::numeric_limits<double>::infinity();
    if (params.lambda <= 0.0) {
        // Silent network: passive AoI pinned at 1, active AoI unbounded.
        return AoIMoments{z, inf, 1.0, weighted_objective(config.active_weight, inf, 1.0)};
    }
    if (params.lambda >= 1.0) {
        return AoIMoments{z, inf, inf, inf};
    }
    const SecondOrderStats active{active_mean(params.lambda, n),
                                  active_temporal_variance(params, n, ctrl)};
    const SecondOrderStats passive{passive_mean(params.lambda, c, n),
                                   passive_temporal_variance(params, c, n, ctrl)};
    const double active_moment = aoi_moment(active, z);
    const double passive_moment = aoi_moment(passive, z);
    return AoIMoments{z, active_moment, passive_moment,
                      weighted_objective(config.active_weight, active_moment, passive_moment)};
}

OptimizationResult optimize_structural(const NetworkConfig& config, double precision,
                                       const SeriesControl& ctrl) {
    validate(config);
    const double lambda_max = 1.0 / config.users_per_cluster;
    if (!(precision > 0.0 && precision < lambda_max)) {
        throw invalid_parameter_error("precision must lie in (0, 1/N)");
    }
    std::vector<double> grid;
    for (int k = 1; k * precision <= lambda_max * (1.0 + 1e-12); ++k) {
        grid.push_back(k * precision);
    }
    if (grid.empty() || grid.back() < lambda_max * (1.0 - 1e-12)) {
        grid.push_back(lambda_max); // the interval is closed at 1/N
    }

    OptimizationResult result;
    result.search_trace.reserve(grid.size());
    result.objective_value = std::numeric_limits<double>::infinity();
    result.lambda_star = grid.front();
    for (const double lambda : grid) {
        const ChainParams params = one_shot_chain(lambda);
        const double value = objective(config, params, ctrl).objective;
        result.search_trace.emplace_back(lambda, value);
        if (value < result.objective_value) { // strict: ties keep smaller lambda
            result.objective_value = value;
            result.lambda_star = lambda;
        }
    }
    const ChainParams best = one_shot_chain(result.lambda_star);
    result.r_star = best.r;
    result.s_star = best.s;
    return result;
}

std::pair<ChainParams, double> grid_search_oracle(const NetworkConfig& config, double step,
                                                  const SeriesControl& ctrl) {
    validate(config);
    if (!(step > 0.0 && step <= 0.5)) {
        throw invalid_parameter_error("grid step must lie in (0, 0.5]");
    }
    std::vector<double> axis;
    for (int k = 1; k * step <= 1.0 + 1e-12; ++k) {
        axis.push_back(std::min(k * step, 1.0));
    }

    struct Cell {
        double value = std::numeric_limits<double>::infinity();
        double r = 0.0;
        double s = 0.0;
        // value first, then (r, s) lexicographic: same argmin regardless of
        // which worker saw which column.
        bool better_than(const Cell& other) const {
            if (value != other.value) return value < other.value;
            if (r != other.r) return r < other.r;
            return s < other.s;
        }
    };
    const auto column_best = [&](double r) {
        Cell best;
        for (const double s : axis) {
            if (std::abs(1.0 - r - s) >= 1.0) continue;
            const ChainParams params = params_from_rs(r, s);
            if (params.lambda <= 0.0 || params.lambda >= 1.0) continue;
            const double value = objective(config, params, ctrl).objective;
            const Cell cell{value, r, s};
            if (cell.better_than(best)) best = cell;
        }
        return best;
    };

    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(axis.size()));
    std::vector<std::future<Cell>> parts;
    parts.reserve(workers);
    for (unsigned part = 0; part < workers; ++part) {
        parts.push_back(std::async(std::launch::async, [&, part] {
            Cell best;
            for (size_t i = part; i < axis.size(); i += workers) {
                const Cell cell = column_best(axis[i]);
                if (cell.better_than(best)) best = cell;
            }
            return best;
        }));
    }
    Cell best;
    for (auto& fut : parts) {
        const Cell cell = fut.get();
        if (cell.better_than(best)) best = cell;
    }
    if (!std::isfinite(best.value)) {
        throw invalid_parameter_error("grid contained no feasible point");
    }
    return {params_from_rs(best.r, best.s), best.value};
}

double cubic_h(double y, int users_per_cluster) {
    const double n = users_per_cluster;
    return -(n + 8.0) * y * y * y - (n - 13.0) * y * y - 6.0 * y + 1.0;
}

double cubic_hbar(double y, long long cn) {
    const double m = static_cast<double>(cn);
    return (m - 10.0) * y * y * y - (m - 13.0) * y * y - 6.0 * y + 1.0;
}

namespace {

double bisect(double lo, double hi, double tol, const auto& f) {
    // invariant: f(lo) > 0 >= f(hi)
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double cubic_alpha(int users_per_cluster, double tol) {
    if (users_per_cluster < 2) {
        throw invalid_parameter_error("N must be >= 2");
    }
    if (!(tol > 0.0)) {
        throw invalid_parameter_error("root tolerance must be positive");
    }
    return bisect(0.0, 1.0, tol, [users_per_cluster](double y) {
        return cubic_h(y, users_per_cluster);
    });
}

double cubic_beta(int clusters, int users_per_cluster, double tol) {
    if (users_per_cluster < 2 || clusters < 1) {
        throw invalid_parameter_error("need N >= 2 and C >= 1");
    }
    if (!(tol > 0.0)) {
        throw invalid_parameter_error("root tolerance must be positive");
    }
    const long long cn = static_cast<long long>(clusters) * users_per_cluster;
    const auto f = [cn](double y) { return cubic_hbar(y, cn); };
    // hbar(0) = 1 > 0; scan density 1,000 cannot miss the smallest positive
    // root for CN <= 10^4 (at most three real roots, well separated).
    constexpr int kScanPoints = 1000;
    double prev = 0.0;
    for (int i = 1; i <= kScanPoints; ++i) {
        const double y = static_cast<double>(i) / kScanPoints;
        if (f(y) <= 0.0) {
            return bisect(prev, y, tol, f);
        }
        prev = y;
    }
    throw internal_inconsistency_error("no sign change of hbar found in (0,1) for CN = " +
                                       std::to_string(cn));
}

CubicRoots cubic_roots(int clusters, int users_per_cluster, double tol) {
    return CubicRoots{cubic_alpha(users_per_cluster, tol),
                      cubic_beta(clusters, users_per_cluster, tol)};
}

} // namespace aoi
