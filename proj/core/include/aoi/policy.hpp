#ifndef AOI_POLICY_HPP
#define AOI_POLICY_HPP

#include <aoi/model.hpp>
#include <aoi/second_order.hpp>

#include <optional>
#include <string_view>

namespace aoi {

enum class PolicyKind {
    second_order_optimal,
    slotted_aloha,
    optimal_aloha,
    age_threshold_aloha,
};

/// CLI vocabulary for the four kinds ("second_order_optimal", ...).
std::string_view policy_name(PolicyKind kind);
std::optional<PolicyKind> policy_from_name(std::string_view name);

/// One transmission policy, ready for the simulator. Chain-based kinds
/// carry their ChainParams; age_threshold_aloha carries (ata_r, threshold)
/// instead. optimal_aloha starts unresolved (empty chain) because its
/// lambda can only be chosen by a simulation sweep.
struct PolicySpec {
    PolicyKind kind;
    std::optional<ChainParams> chain;
    double ata_r = 0.0;
    double ata_threshold = 0.0;
};

/// Age-threshold state: the user's self-maintained AoI under the
/// assumption that every own transmission succeeds (no feedback exists).
/// Resets to 1 the slot after the user transmits, else increments.
struct AtaUserState {
    long long believed_aoi = 1;
};

/// Per-user mutable policy state owned by one simulation run.
struct UserPolicyState {
    bool transmitting = false; ///< chain state: true = TX
    AtaUserState ata;
};

/// Builds a policy for the given network:
///  - second_order_optimal: line search at `precision`, then s = 1 chain;
///  - slotted_aloha: r = 1/N, s = 1 - 1/N;
///  - age_threshold_aloha: r = 4.69/N, threshold = 2.2 N (needs N >= 5);
///  - optimal_aloha: unresolved placeholder (see select_optimal_aloha in sim.hpp).
PolicySpec make_policy(PolicyKind kind, const NetworkConfig& config, double precision = 0.01,
                       const SeriesControl& ctrl = {});

/// One slot of one user: returns whether the user transmits now and applies
/// the state update driven by a single uniform draw in [0,1).
/// Chain kinds transmit iff currently in TX, then flip states (TX->Idle with
/// probability s, Idle->TX with probability r). ATA transmits with
/// probability ata_r only while believed_aoi exceeds the threshold.
bool decide_transmit(const PolicySpec& policy, UserPolicyState& state, double draw);

} // namespace aoi

#endif
