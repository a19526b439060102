#ifndef AOI_SIM_HPP
#define AOI_SIM_HPP

#include <aoi/model.hpp>
#include <aoi/policy.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace aoi {

/// Monte Carlo horizon and reproducibility knobs. Run i draws from Philox
/// substreams keyed on (base_seed, i, user), so runs are independent and
/// the outcome is bit-identical however runs are scheduled.
struct SimParams {
    long long slots = 100000;
    int runs = 10;
    std::uint64_t base_seed = 12345;
    long long warmup_slots = 1000;
    long long batch_length = 1000; ///< batch-means window for the variance estimator
};

void validate(const SimParams& params);

struct RunStats {
    double active_moment;
    double passive_moment;
    double objective;
    SecondOrderStats active_stats;
    SecondOrderStats passive_stats;
};

/// Empirical counterparts of the analytical quantities, averaged over runs.
/// Active moments average over every active user; second-order statistics
/// track one representative user per class (all are exchangeable).
struct SimOutcome {
    double empirical_active_moment;
    double empirical_passive_moment;
    double empirical_objective;
    double empirical_m_a;
    double empirical_v2_a;
    double empirical_m_p;
    double empirical_v2_p;
    std::vector<RunStats> per_run;
};

/// Sample mean and batch-means temporal variance of a binary sequence:
/// with B full batches of length L, vhat2 = sum_b (S_b - L mean)^2 / (L (B-1)).
/// Needs at least two full batches; a trailing partial batch is dropped.
SecondOrderStats estimate_second_order(std::span<const std::uint8_t> indicators,
                                       long long batch_length);

/// Simulates C clusters x N active users plus one representative passive
/// observer. A packet is delivered iff its sender is the unique transmitter
/// in its cluster; the passive user scores iff nobody transmits at all.
/// `trace`, when set, receives run 0 as CSV lines: slot, per-user transmit
/// bits, per-cluster success flags, passive success flag.
SimOutcome simulate(const NetworkConfig& config, const PolicySpec& policy,
                    const SimParams& params, std::ostream* trace = nullptr);

/// One lambda of the optimal-ALOHA sweep.
struct AlohaSweepPoint {
    double lambda;
    SimOutcome outcome;
};

/// Simulates theta = 0 chains for every lambda on the precision grid,
/// same seeds for every lambda.
std::vector<AlohaSweepPoint> aloha_sweep(const NetworkConfig& config, const SimParams& params,
                                         double precision = 0.01);

/// Picks the sweep lambda with the lowest empirical objective. This policy
/// cannot exist outside a simulator (its lambda is chosen in hindsight);
/// it serves as the strongest memoryless baseline.
PolicySpec select_optimal_aloha(const NetworkConfig& config, const SimParams& params,
                                double precision = 0.01);

} // namespace aoi

#endif
