#include <aoi/model.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace aoi {

namespace {

double checked_probability(double value, const char* name) {
    if (!(value >= -kProbabilitySlack && value <= 1.0 + kProbabilitySlack)) {
        throw invalid_parameter_error(std::string(name) + " must lie in [0,1], got " +
                                      std::to_string(value));
    }
    return std::clamp(value, 0.0, 1.0);
}

} // namespace

ChainParams params_from_rs(double r, double s) {
    r = checked_probability(r, "r");
    s = checked_probability(s, "s");
    if (r + s <= 0.0) {
        throw invalid_parameter_error("r + s must be positive (lambda undefined at r=s=0)");
    }
    return ChainParams{r, s, r / (r + s), 1.0 - r - s};
}

ChainParams params_from_lambda_theta(double lambda, double theta) {
    lambda = checked_probability(lambda, "lambda");
    const double r = lambda * (1.0 - theta);
    const double s = (1.0 - lambda) * (1.0 - theta);
    if (!(r >= -kProbabilitySlack && r <= 1.0 + kProbabilitySlack &&
          s >= -kProbabilitySlack && s <= 1.0 + kProbabilitySlack)) {
        throw invalid_parameter_error("(lambda, theta) implies transition probabilities outside [0,1]");
    }
    if (r + s <= 0.0) {
        throw invalid_parameter_error("(lambda, theta=1) gives the frozen chain r=s=0");
    }
    return ChainParams{std::clamp(r, 0.0, 1.0), std::clamp(s, 0.0, 1.0), lambda, theta};
}

ChainParams one_shot_chain(double lambda) {
    lambda = checked_probability(lambda, "lambda");
    if (lambda >= 1.0) {
        throw invalid_parameter_error("one_shot_chain requires lambda < 1");
    }
    const double r = lambda / (1.0 - lambda);
    if (r > 1.0 + kProbabilitySlack) {
        throw invalid_parameter_error("one_shot_chain requires lambda <= 1/2");
    }
    return ChainParams{std::min(r, 1.0), 1.0, lambda, -r};
}

void validate(const NetworkConfig& config) {
    if (config.users_per_cluster < 2) {
        throw invalid_parameter_error("N (users per cluster) must be >= 2");
    }
    if (config.clusters < 1) {
        throw invalid_parameter_error("C (clusters) must be >= 1");
    }
    if (config.moment_order < 1) {
        throw invalid_parameter_error("z (moment order) must be >= 1");
    }
    if (!(config.active_weight >= 0.0 && config.active_weight <= 1.0)) {
        throw invalid_parameter_error("w (active weight) must lie in [0,1]");
    }
}

} // namespace aoi
