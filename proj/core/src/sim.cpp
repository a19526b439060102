#include <aoi/sim.hpp>

#include <aoi/rng.hpp>

#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <string>
#include <thread>

namespace aoi {

namespace {

double int_pow_double(long long base, int exponent) {
    double acc = 1.0;
    double b = static_cast<double>(base);
    while (exponent > 0) {
        if (exponent & 1) acc *= b;
        b *= b;
        exponent >>= 1;
    }
    return acc;
}

RunStats run_once(const NetworkConfig& config, const PolicySpec& policy, const SimParams& params,
                  int run_index, std::ostream* trace) {
    const int n = config.users_per_cluster;
    const int c = config.clusters;
    const int z = config.moment_order;
    const int total_users = n * c;
    const bool ata = policy.kind == PolicyKind::age_threshold_aloha;

    std::vector<SlotStream> streams;
    streams.reserve(static_cast<size_t>(total_users));
    std::vector<UserPolicyState> states(static_cast<size_t>(total_users));
    for (int u = 0; u < total_users; ++u) {
        streams.emplace_back(params.base_seed, static_cast<std::uint32_t>(run_index),
                             static_cast<std::uint32_t>(u));
        const double init = streams.back().init_uniform();
        if (ata) {
            // Uniform start in {1, ..., ceil(threshold)+1}: a common start
            // would synchronize users into collision waves.
            const long long span =
                static_cast<long long>(std::ceil(policy.ata_threshold)) + 1;
            states[static_cast<size_t>(u)].ata.believed_aoi =
                1 + static_cast<long long>(init * static_cast<double>(span));
        } else {
            // Stationary start: TX with probability lambda.
            states[static_cast<size_t>(u)].transmitting = init < policy.chain->lambda;
        }
    }

    std::vector<long long> aoi(static_cast<size_t>(total_users), 1);
    long long passive_aoi = 1;

    const long long measured = params.slots - params.warmup_slots;
    std::vector<std::uint8_t> rep_delivery(static_cast<size_t>(measured));
    std::vector<std::uint8_t> passive_detect(static_cast<size_t>(measured));

    std::vector<std::uint8_t> transmitted(static_cast<size_t>(total_users));
    std::vector<int> cluster_count(static_cast<size_t>(c));
    std::vector<std::uint8_t> cluster_success(static_cast<size_t>(c));

    double active_sum = 0.0;
    double passive_sum = 0.0;

    for (long long slot = 0; slot < params.slots; ++slot) {
        int transmitters = 0;
        for (int cl = 0; cl < c; ++cl) cluster_count[static_cast<size_t>(cl)] = 0;
        for (int u = 0; u < total_users; ++u) {
            const double draw = streams[static_cast<size_t>(u)].uniform_at(
                static_cast<std::uint64_t>(slot));
            const bool tx = decide_transmit(policy, states[static_cast<size_t>(u)], draw);
            transmitted[static_cast<size_t>(u)] = tx ? 1 : 0;
            if (tx) {
                ++cluster_count[static_cast<size_t>(u / n)];
                ++transmitters;
            }
        }
        const bool all_silent = transmitters == 0;
        for (int u = 0; u < total_users; ++u) {
            const bool delivered = transmitted[static_cast<size_t>(u)] != 0 &&
                                   cluster_count[static_cast<size_t>(u / n)] == 1;
            aoi[static_cast<size_t>(u)] = delivered ? 1 : aoi[static_cast<size_t>(u)] + 1;
            if (u == 0 && slot >= params.warmup_slots) {
                rep_delivery[static_cast<size_t>(slot - params.warmup_slots)] = delivered ? 1 : 0;
            }
        }
        passive_aoi = all_silent ? 1 : passive_aoi + 1;

        if (slot >= params.warmup_slots) {
            const long long idx = slot - params.warmup_slots;
            passive_detect[static_cast<size_t>(idx)] = all_silent ? 1 : 0;
            double slot_active = 0.0;
            for (int u = 0; u < total_users; ++u) {
                slot_active += int_pow_double(aoi[static_cast<size_t>(u)], z);
            }
            active_sum += slot_active / total_users;
            passive_sum += int_pow_double(passive_aoi, z);
        }

        if (trace != nullptr) {
            for (int cl = 0; cl < c; ++cl) {
                cluster_success[static_cast<size_t>(cl)] =
                    cluster_count[static_cast<size_t>(cl)] == 1 ? 1 : 0;
            }
            *trace << slot;
            for (int u = 0; u < total_users; ++u) {
                *trace << ',' << static_cast<int>(transmitted[static_cast<size_t>(u)]);
            }
            for (int cl = 0; cl < c; ++cl) {
                *trace << ',' << static_cast<int>(cluster_success[static_cast<size_t>(cl)]);
            }
            *trace << ',' << (all_silent ? 1 : 0) << '\n';
        }
    }

    RunStats stats;
    stats.active_moment = active_sum / static_cast<double>(measured);
    stats.passive_moment = passive_sum / static_cast<double>(measured);
    const double w = config.active_weight;
    stats.objective = w * stats.active_moment + (1.0 - w) * stats.passive_moment;
    stats.active_stats = estimate_second_order(rep_delivery, params.batch_length);
    stats.passive_stats = estimate_second_order(passive_detect, params.batch_length);
    return stats;
}

} // namespace

void validate(const SimParams& params) {
    if (params.runs < 1) {
        throw invalid_parameter_error("runs must be >= 1");
    }
    if (params.warmup_slots < 0) {
        throw invalid_parameter_error("warmup_slots must be >= 0");
    }
    if (params.slots <= params.warmup_slots) {
        throw invalid_parameter_error("slots must exceed warmup_slots");
    }
    if (params.batch_length < 1) {
        throw invalid_parameter_error("batch_length must be >= 1");
    }
    if (params.slots - params.warmup_slots < 2 * params.batch_length) {
        throw invalid_parameter_error("measured horizon must cover at least two batches");
    }
    if (params.slots > static_cast<long long>(std::numeric_limits<std::uint32_t>::max())) {
        throw invalid_parameter_error("slots must fit the 32-bit counter word");
    }
}

SecondOrderStats estimate_second_order(std::span<const std::uint8_t> indicators,
                                       long long batch_length) {
    if (batch_length < 1) {
        throw invalid_parameter_error("batch_length must be >= 1");
    }
    const long long length = static_cast<long long>(indicators.size());
    if (length < 2 * batch_length) {
        throw invalid_parameter_error("sequence shorter than two batches");
    }
    long long total = 0;
    for (const std::uint8_t bit : indicators) total += bit;
    const double mean = static_cast<double>(total) / static_cast<double>(length);

    const long long batches = length / batch_length;
    double sum_sq = 0.0;
    for (long long b = 0; b < batches; ++b) {
        long long batch_sum = 0;
        for (long long i = b * batch_length; i < (b + 1) * batch_length; ++i) {
            batch_sum += indicators[static_cast<size_t>(i)];
        }
        const double centered = static_cast<double>(batch_sum) -
                                static_cast<double>(batch_length) * mean;
        sum_sq += centered * centered;
    }
    const double v2 = sum_sq / (static_cast<double>(batch_length) *
                                static_cast<double>(batches - 1));
    return SecondOrderStats{mean, v2};
}

SimOutcome simulate(const NetworkConfig& config, const PolicySpec& policy,
                    const SimParams& params, std::ostream* trace) {
    validate(config);
    validate(params);
    if (policy.kind != PolicyKind::age_threshold_aloha && !policy.chain) {
        throw invalid_parameter_error(
            "policy has no chain parameters; resolve optimal_aloha with select_optimal_aloha");
    }

    SimOutcome outcome{};
    outcome.per_run.resize(static_cast<size_t>(params.runs));

    // Run 0 executes inline so the trace stream is written sequentially;
    // remaining runs fan out across workers and reduce in run order.
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> parts;
    for (unsigned part = 0; part < workers; ++part) {
        parts.push_back(std::async(std::launch::async, [&, part] {
            for (int run = 1 + static_cast<int>(part); run < params.runs;
                 run += static_cast<int>(workers)) {
                outcome.per_run[static_cast<size_t>(run)] =
                    run_once(config, policy, params, run, nullptr);
            }
        }));
    }
    outcome.per_run[0] = run_once(config, policy, params, 0, trace);
    for (auto& fut : parts) fut.get();

    for (const RunStats& run : outcome.per_run) {
        outcome.empirical_active_moment += run.active_moment;
        outcome.empirical_passive_moment += run.passive_moment;
        outcome.empirical_m_a += run.active_stats.mean;
        outcome.empirical_v2_a += run.active_stats.temporal_variance;
        outcome.empirical_m_p += run.passive_stats.mean;
        outcome.empirical_v2_p += run.passive_stats.temporal_variance;
    }
    const double runs = static_cast<double>(params.runs);
    outcome.empirical_active_moment /= runs;
    outcome.empirical_passive_moment /= runs;
    outcome.empirical_m_a /= runs;
    outcome.empirical_v2_a /= runs;
    outcome.empirical_m_p /= runs;
    outcome.empirical_v2_p /= runs;
    const double w = config.active_weight;
    outcome.empirical_objective = w * outcome.empirical_active_moment +
                                  (1.0 - w) * outcome.empirical_passive_moment;
    return outcome;
}

std::vector<AlohaSweepPoint> aloha_sweep(const NetworkConfig& config, const SimParams& params,
                                         double precision) {
    validate(config);
    validate(params);
    if (!(precision > 0.0 && precision <= 0.5)) {
        throw invalid_parameter_error("sweep precision must lie in (0, 0.5]");
    }
    std::vector<double> grid;
    for (int k = 1; k * precision < 1.0 - 1e-12; ++k) {
        grid.push_back(k * precision);
    }
    std::vector<AlohaSweepPoint> points(grid.size());
    // simulate() already parallelizes its runs; sweep entries go in order.
    for (size_t i = 0; i < grid.size(); ++i) {
        const double lambda = grid[i];
        const PolicySpec policy{PolicyKind::optimal_aloha,
                                params_from_rs(lambda, 1.0 - lambda)};
        points[i] = AlohaSweepPoint{lambda, simulate(config, policy, params)};
    }
    return points;
}

PolicySpec select_optimal_aloha(const NetworkConfig& config, const SimParams& params,
                                double precision) {
    const std::vector<AlohaSweepPoint> sweep = aloha_sweep(config, params, precision);
    const AlohaSweepPoint* best = &sweep.front();
    for (const AlohaSweepPoint& point : sweep) {
        if (point.outcome.empirical_objective < best->outcome.empirical_objective) {
            best = &point;
        }
    }
    return PolicySpec{PolicyKind::optimal_aloha,
                      params_from_rs(best->lambda, 1.0 - best->lambda)};
}

} // namespace aoi
