#ifndef AOI_ERRORS_HPP
#define AOI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aoi {

/// A caller-supplied value violates a precondition (out-of-range
/// probability, malformed grid step, too-short sample, ...).
class invalid_parameter_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The infinite covariance series is evaluated at |theta| >= 1, where it
/// diverges or oscillates. The simulator still accepts such chains.
class divergent_series_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The success process is constant (lambda in {0,1}), so its temporal
/// variance is undefined. Callers map this to an infinite objective.
class degenerate_process_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two evaluation routes that must agree did not, or an exact-arithmetic
/// identity failed. Always indicates a bug, never bad input.
class internal_inconsistency_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace aoi

#endif
