#include "commands.hpp"
#include "csv.hpp"
#include "options.hpp"

#include <aoi/version.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using aoi::tools::ToolOptions;

struct FlagBindings {
    std::string config_path;
    std::string policy;
    std::string policies_text;
    std::string w_grid_text;
};

// Flags mirror the config-file keys; --config loads the file and explicit
// flags override its values.
void add_common_flags(CLI::App* cmd, ToolOptions& options, FlagBindings& bindings) {
    cmd->add_option("--config", bindings.config_path, "key = value config file");
    cmd->add_option("--N", options.network.users_per_cluster, "active users per cluster");
    cmd->add_option("--C", options.network.clusters, "number of clusters");
    cmd->add_option("--z", options.network.moment_order, "AoI moment order");
    cmd->add_option("--w", options.network.active_weight, "active-user weight in [0,1]");
    cmd->add_option("--precision", options.precision, "lambda search precision");
    cmd->add_option("--output", options.output_path, "CSV output path (default stdout)");
}

void add_sim_flags(CLI::App* cmd, ToolOptions& options) {
    cmd->add_option("--slots", options.sim.slots, "time slots per run");
    cmd->add_option("--runs", options.sim.runs, "independent runs");
    cmd->add_option("--warmup", options.sim.warmup_slots, "slots discarded before measuring");
    cmd->add_option("--batch_length", options.sim.batch_length,
                    "batch length of the variance estimator");
    cmd->add_option("--base_seed", options.sim.base_seed, "root seed of all random streams");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"second-order AoI toolkit: analytical moments, structural optimum, "
                 "Monte Carlo validation"};
    app.set_version_flag("--version", std::string("aoi ") + aoi::kVersion);
    app.require_subcommand(1);

    ToolOptions options;
    FlagBindings bindings;

    CLI::App* analyze = app.add_subcommand("analyze", "theoretical pipeline for one chain");
    add_common_flags(analyze, options, bindings);
    analyze->add_option("--r", options.r, "Idle->TX probability");
    analyze->add_option("--s", options.s, "TX->Idle probability");
    analyze->add_option("--lambda", options.lambda, "stationary TX probability (theta=0 chain)");

    CLI::App* optimize = app.add_subcommand("optimize", "line search on the s=1 curve");
    add_common_flags(optimize, options, bindings);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run of one policy");
    add_common_flags(simulate, options, bindings);
    add_sim_flags(simulate, options);
    simulate->add_option("--policy", bindings.policy, "policy kind")->required();
    simulate->add_option("--trace", options.trace_path, "per-slot trace CSV (run 0)");

    CLI::App* experiment = app.add_subcommand("experiment", "ratio experiment over a w grid");
    add_common_flags(experiment, options, bindings);
    add_sim_flags(experiment, options);
    experiment->add_option("--policies", bindings.policies_text, "comma list of policy kinds");
    experiment->add_option("--w_grid", bindings.w_grid_text, "comma list of weights");

    CLI::App* roots = app.add_subcommand("roots", "cubic roots alpha and beta");
    add_common_flags(roots, options, bindings);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help / --version
        }
        app.exit(e);
        return aoi::tools::kExitUsage;
    }

    CLI::App* active = app.get_subcommands().front();

    return aoi::tools::run_guarded(
        [&] {
            if (!bindings.config_path.empty()) {
                std::ifstream file(bindings.config_path);
                if (!file) {
                    throw aoi::invalid_parameter_error("cannot open config file: " +
                                                       bindings.config_path);
                }
                const auto file_values = aoi::tools::parse_config_file(file);
                std::vector<std::string> given;
                static const std::vector<std::pair<std::string, std::string>> flag_to_key = {
                    {"--N", "N"},           {"--C", "C"},
                    {"--z", "z"},           {"--w", "w"},
                    {"--r", "r"},           {"--s", "s"},
                    {"--lambda", "lambda"}, {"--precision", "precision"},
                    {"--slots", "slots"},   {"--runs", "runs"},
                    {"--warmup", "warmup"}, {"--batch_length", "batch_length"},
                    {"--base_seed", "base_seed"}, {"--policies", "policies"},
                    {"--w_grid", "w_grid"}};
                for (const auto& [flag, key] : flag_to_key) {
                    const CLI::Option* option = active->get_option_no_throw(flag);
                    if (option != nullptr && option->count() > 0) given.push_back(key);
                }
                aoi::tools::apply_config(options, file_values, given);
            }
            if (!bindings.policies_text.empty()) {
                options.policies = aoi::tools::parse_name_list(bindings.policies_text);
            }
            if (!bindings.w_grid_text.empty()) {
                options.w_grid = aoi::tools::parse_double_list(bindings.w_grid_text);
            }
            if (const char* env_seed = std::getenv("AOI_SEED")) {
                options.sim.base_seed = std::strtoull(env_seed, nullptr, 10);
            }

            if (active == analyze) {
                aoi::tools::cmd_analyze(options, std::cout);
            } else if (active == optimize) {
                aoi::tools::cmd_optimize(options, std::cout);
            } else if (active == simulate) {
                aoi::tools::cmd_simulate(options, bindings.policy, std::cout);
            } else if (active == experiment) {
                aoi::tools::cmd_experiment(options, std::cout);
            } else if (active == roots) {
                aoi::tools::cmd_roots(options, std::cout);
            }
        },
        std::cerr);
}
