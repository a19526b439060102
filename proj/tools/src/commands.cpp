#include "commands.hpp"

#include "csv.hpp"

#include <aoi/moments.hpp>
#include <aoi/optimize.hpp>
#include <aoi/policy.hpp>
#include <aoi/second_order.hpp>
#include <aoi/sim.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

namespace aoi::tools {

namespace {

ChainParams chain_from_options(const ToolOptions& options) {
    if (options.r >= 0.0 && options.s >= 0.0) {
        return params_from_rs(options.r, options.s);
    }
    if (options.lambda >= 0.0) {
        // lambda alone selects the i.i.d. chain r = lambda, s = 1 - lambda.
        return params_from_rs(options.lambda, 1.0 - options.lambda);
    }
    throw invalid_parameter_error("analyze needs both --r and --s, or --lambda");
}

std::string join_row(const std::vector<std::string>& cells) {
    std::string row;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) row += ',';
        row += cells[i];
    }
    return row;
}

// Second-order statistics with degenerate chains mapped to printable values:
// lambda = 0 leaves the passive process constant (v2 = 0) and the active
// process empty (moments become infinite).
struct TheoryBreakdown {
    SecondOrderStats active{std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN()};
    SecondOrderStats passive{std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN()};
    AoIMoments moments{0, 0.0, 0.0, 0.0};
};

TheoryBreakdown evaluate_theory(const NetworkConfig& config, const ChainParams& chain) {
    TheoryBreakdown result;
    result.moments = objective(config, chain);
    const int n = config.users_per_cluster;
    const int c = config.clusters;
    result.active.mean = active_mean(chain.lambda, n);
    result.passive.mean = passive_mean(chain.lambda, c, n);
    if (chain.lambda > 0.0 && chain.lambda < 1.0) {
        result.active.temporal_variance = active_temporal_variance(chain, n);
        result.passive.temporal_variance = passive_temporal_variance(chain, c, n);
    } else if (chain.lambda <= 0.0) {
        result.passive.temporal_variance = 0.0; // constant detection process
    }
    return result;
}

} // namespace

void cmd_analyze(const ToolOptions& options, std::ostream& out) {
    validate(options.network);
    const ChainParams chain = chain_from_options(options);
    const TheoryBreakdown theory = evaluate_theory(options.network, chain);

    out << "chain: r=" << format_number(chain.r) << " s=" << format_number(chain.s)
        << " lambda=" << format_number(chain.lambda)
        << " theta=" << format_number(chain.theta) << '\n';
    out << "active:  m=" << format_number(theory.active.mean)
        << " v2=" << format_number(theory.active.temporal_variance)
        << " E[AoI^z]=" << format_number(theory.moments.active_moment) << '\n';
    out << "passive: m=" << format_number(theory.passive.mean)
        << " v2=" << format_number(theory.passive.temporal_variance)
        << " E[AoI^z]=" << format_number(theory.moments.passive_moment) << '\n';
    out << "objective F=" << format_number(theory.moments.objective) << '\n';

    CsvSink sink(options.output_path);
    sink.comment(provenance_line_unseeded(canonical_manifest("analyze", options)));
    sink.line("N,C,z,w,r,s,lambda,theta,m_a,v2_a,m_p,v2_p,active_moment,passive_moment,F");
    sink.line(join_row({std::to_string(options.network.users_per_cluster),
                        std::to_string(options.network.clusters),
                        std::to_string(options.network.moment_order),
                        format_number(options.network.active_weight), format_number(chain.r),
                        format_number(chain.s), format_number(chain.lambda),
                        format_number(chain.theta), format_number(theory.active.mean),
                        format_number(theory.active.temporal_variance),
                        format_number(theory.passive.mean),
                        format_number(theory.passive.temporal_variance),
                        format_number(theory.moments.active_moment),
                        format_number(theory.moments.passive_moment),
                        format_number(theory.moments.objective)}));
}

void cmd_optimize(const ToolOptions& options, std::ostream& out) {
    const OptimizationResult result = optimize_structural(options.network, options.precision);
    out << "lambda*=" << format_number(result.lambda_star)
        << " r*=" << format_number(result.r_star) << " s*=" << format_number(result.s_star)
        << " F=" << format_number(result.objective_value) << '\n';

    CsvSink sink(options.output_path);
    sink.comment(provenance_line_unseeded(canonical_manifest("optimize", options)));
    sink.line("lambda,r,s,F_theoretical");
    for (const auto& [lambda, value] : result.search_trace) {
        const ChainParams chain = one_shot_chain(lambda);
        sink.line(join_row({format_number(lambda), format_number(chain.r),
                            format_number(chain.s), format_number(value)}));
    }
}

namespace {

void write_simulation_rows(CsvSink& sink, const SimOutcome& outcome) {
    sink.line("run_index,empirical_active_moment,empirical_passive_moment,empirical_F,"
              "m_hat_a,v2_hat_a,m_hat_p,v2_hat_p");
    for (size_t run = 0; run < outcome.per_run.size(); ++run) {
        const RunStats& stats = outcome.per_run[run];
        sink.line(join_row({std::to_string(run), format_number(stats.active_moment),
                            format_number(stats.passive_moment), format_number(stats.objective),
                            format_number(stats.active_stats.mean),
                            format_number(stats.active_stats.temporal_variance),
                            format_number(stats.passive_stats.mean),
                            format_number(stats.passive_stats.temporal_variance)}));
    }
    sink.line(join_row({"aggregate", format_number(outcome.empirical_active_moment),
                        format_number(outcome.empirical_passive_moment),
                        format_number(outcome.empirical_objective),
                        format_number(outcome.empirical_m_a), format_number(outcome.empirical_v2_a),
                        format_number(outcome.empirical_m_p),
                        format_number(outcome.empirical_v2_p)}));
}

} // namespace

void cmd_simulate(const ToolOptions& options, const std::string& policy_name_text,
                  std::ostream& out) {
    validate(options.network);
    const auto kind = policy_from_name(policy_name_text);
    if (!kind) {
        throw invalid_parameter_error("unknown policy '" + policy_name_text + "'");
    }
    PolicySpec policy;
    if (*kind == PolicyKind::optimal_aloha) {
        policy = select_optimal_aloha(options.network, options.sim, options.precision);
        out << "optimal_aloha sweep selected lambda=" << format_number(policy.chain->lambda)
            << '\n';
    } else {
        policy = make_policy(*kind, options.network, options.precision);
    }

    std::ofstream trace_file;
    std::ostream* trace = nullptr;
    if (!options.trace_path.empty()) {
        trace_file.open(options.trace_path, std::ios::trunc);
        if (!trace_file) {
            throw invalid_parameter_error("cannot open trace file: " + options.trace_path);
        }
        trace = &trace_file;
    }

    const SimOutcome outcome = simulate(options.network, policy, options.sim, trace);
    out << "policy " << policy_name(*kind);
    if (policy.chain) {
        out << " (r=" << format_number(policy.chain->r)
            << ", s=" << format_number(policy.chain->s) << ")";
    } else {
        out << " (r=" << format_number(policy.ata_r)
            << ", threshold=" << format_number(policy.ata_threshold) << ")";
    }
    out << ": empirical F=" << format_number(outcome.empirical_objective) << '\n';

    CsvSink sink(options.output_path);
    sink.comment(provenance_line(options.sim.base_seed,
                                 canonical_manifest("simulate:" + policy_name_text, options)));
    write_simulation_rows(sink, outcome);
}

namespace {

double reweighted_objective(const SimOutcome& outcome, double w) {
    return w * outcome.empirical_active_moment + (1.0 - w) * outcome.empirical_passive_moment;
}

} // namespace

void cmd_experiment(const ToolOptions& options, std::ostream& out) {
    validate(options.network);
    if (options.w_grid.empty()) {
        throw invalid_parameter_error("experiment needs a non-empty w_grid");
    }
    for (size_t i = 0; i < options.w_grid.size(); ++i) {
        const double w = options.w_grid[i];
        if (!(w >= 0.0 && w <= 1.0)) {
            throw invalid_parameter_error("w_grid values must lie in [0,1]");
        }
        if (i > 0 && !(options.w_grid[i - 1] < w)) {
            throw invalid_parameter_error("w_grid must be strictly increasing");
        }
    }
    if (options.policies.empty()) {
        throw invalid_parameter_error("experiment needs a non-empty policies list");
    }
    std::vector<PolicyKind> kinds;
    for (const std::string& name : options.policies) {
        const auto kind = policy_from_name(name);
        if (!kind) {
            throw invalid_parameter_error("unknown policy '" + name + "'");
        }
        kinds.push_back(*kind);
    }

    CsvSink sink(options.output_path);
    sink.comment(provenance_line(options.sim.base_seed,
                                 canonical_manifest("experiment", options)));
    sink.line("w,policy,actual_F,theoretical_F_our_solution,ratio");

    // Simulation outcomes do not depend on w (only the weighting does), so
    // each distinct chain is simulated once and reweighted per w.
    std::map<std::pair<double, double>, SimOutcome> chain_cache;
    const auto simulate_chain = [&](const PolicySpec& policy) -> const SimOutcome& {
        const std::pair<double, double> key =
            policy.kind == PolicyKind::age_threshold_aloha
                ? std::pair<double, double>{-policy.ata_r, policy.ata_threshold}
                : std::pair<double, double>{policy.chain->r, policy.chain->s};
        const auto found = chain_cache.find(key);
        if (found != chain_cache.end()) return found->second;
        return chain_cache.emplace(key, simulate(options.network, policy, options.sim))
            .first->second;
    };

    const bool needs_sweep =
        std::find(kinds.begin(), kinds.end(), PolicyKind::optimal_aloha) != kinds.end();
    std::vector<AlohaSweepPoint> sweep;
    if (needs_sweep) {
        out << "running optimal_aloha sweep (precision=" << format_number(options.precision)
            << ")...\n";
        sweep = aloha_sweep(options.network, options.sim, options.precision);
    }

    for (const double w : options.w_grid) {
        NetworkConfig config = options.network;
        config.active_weight = w;
        const OptimizationResult opt = optimize_structural(config, options.precision);
        const double theoretical = opt.objective_value;

        for (const PolicyKind kind : kinds) {
            double actual = 0.0;
            if (kind == PolicyKind::optimal_aloha) {
                actual = std::numeric_limits<double>::infinity();
                for (const AlohaSweepPoint& point : sweep) {
                    actual = std::min(actual, reweighted_objective(point.outcome, w));
                }
            } else {
                PolicySpec policy =
                    kind == PolicyKind::second_order_optimal
                        ? PolicySpec{kind, one_shot_chain(opt.lambda_star)}
                        : make_policy(kind, config, options.precision);
                actual = reweighted_objective(simulate_chain(policy), w);
            }
            sink.line(join_row({format_number(w), std::string(policy_name(kind)),
                                format_number(actual), format_number(theoretical),
                                format_number(actual / theoretical)}));
        }
    }
    out << "experiment complete: " << options.w_grid.size() * kinds.size() << " rows\n";
}

void cmd_roots(const ToolOptions& options, std::ostream& out) {
    validate(options.network);
    const CubicRoots roots =
        cubic_roots(options.network.clusters, options.network.users_per_cluster);
    out << "alpha=" << format_number(roots.alpha)
        << " (smallest positive root of the active cubic)\n";
    out << "beta=" << format_number(roots.beta)
        << " (smallest positive root of the passive cubic)\n";
    out << "1/N=" << format_number(1.0 / options.network.users_per_cluster) << '\n';
}

int run_guarded(const std::function<void()>& body, std::ostream& err) {
    try {
        body();
        return kExitOk;
    } catch (const invalid_parameter_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const divergent_series_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumericDomain;
    } catch (const degenerate_process_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumericDomain;
    } catch (const internal_inconsistency_error& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

} // namespace aoi::tools
