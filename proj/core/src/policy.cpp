#include <aoi/policy.hpp>

#include <aoi/optimize.hpp>

#include <string>

namespace aoi {

std::string_view policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::second_order_optimal: return "second_order_optimal";
        case PolicyKind::slotted_aloha: return "slotted_aloha";
        case PolicyKind::optimal_aloha: return "optimal_aloha";
        case PolicyKind::age_threshold_aloha: return "age_threshold_aloha";
    }
    return "unknown";
}

std::optional<PolicyKind> policy_from_name(std::string_view name) {
    for (const PolicyKind kind :
         {PolicyKind::second_order_optimal, PolicyKind::slotted_aloha, PolicyKind::optimal_aloha,
          PolicyKind::age_threshold_aloha}) {
        if (name == policy_name(kind)) return kind;
    }
    return std::nullopt;
}

PolicySpec make_policy(PolicyKind kind, const NetworkConfig& config, double precision,
                       const SeriesControl& ctrl) {
    validate(config);
    const int n = config.users_per_cluster;
    switch (kind) {
        case PolicyKind::second_order_optimal: {
            const OptimizationResult opt = optimize_structural(config, precision, ctrl);
            return PolicySpec{kind, one_shot_chain(opt.lambda_star)};
        }
        case PolicyKind::slotted_aloha:
            return PolicySpec{kind, params_from_rs(1.0 / n, 1.0 - 1.0 / n)};
        case PolicyKind::optimal_aloha:
            return PolicySpec{kind, std::nullopt};
        case PolicyKind::age_threshold_aloha: {
            const double r = 4.69 / n;
            if (r > 1.0) {
                throw invalid_parameter_error(
                    "age_threshold_aloha needs 4.69/N <= 1 (N >= 5), got N = " +
                    std::to_string(n));
            }
            PolicySpec spec{kind, std::nullopt};
            spec.ata_r = r;
            spec.ata_threshold = 2.2 * n;
            return spec;
        }
    }
    throw invalid_parameter_error("unknown policy kind");
}

bool decide_transmit(const PolicySpec& policy, UserPolicyState& state, double draw) {
    if (policy.kind == PolicyKind::age_threshold_aloha) {
        const bool transmit =
            state.ata.believed_aoi > policy.ata_threshold && draw < policy.ata_r;
        state.ata.believed_aoi = transmit ? 1 : state.ata.believed_aoi + 1;
        return transmit;
    }
    if (!policy.chain) {
        throw invalid_parameter_error("policy has no chain parameters (unresolved optimal_aloha?)");
    }
    const bool transmit = state.transmitting;
    if (state.transmitting) {
        state.transmitting = !(draw < policy.chain->s);
    } else {
        state.transmitting = draw < policy.chain->r;
    }
    return transmit;
}

} // namespace aoi
