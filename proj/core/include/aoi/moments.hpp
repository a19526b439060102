#ifndef AOI_MOMENTS_HPP
#define AOI_MOMENTS_HPP

#include <aoi/model.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace aoi {

/// Exact arbitrary-precision integer / rational, kept in lowest terms with a
/// positive denominator. Coefficients stay exact until the final assembly
/// into floating point, so coefficient round-off never confounds validation.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// B_0 .. B_max_k from the recurrence sum_{j=0}^{k} C(k+1,j) B_j = 0
/// (so B_1 = -1/2; only B_k for k >= 2 are consumed downstream, since the
/// power-sum formula carries the l^z/2 term separately). Memoized behind a
/// lock; safe for concurrent lookup.
std::vector<Rational> bernoulli_numbers(int max_k);

/// sum_{k=1}^{l} k^z via the Bernoulli-number power-sum formula, evaluated
/// in exact rational arithmetic and asserted integral.
BigInt faulhaber_sum(long long l, int z);

/// Raw moment E[l^k] of the inverse Gaussian IG(1/m, 1/v2) first-hitting
/// approximation of inter-delivery gaps. v2 = 0 degenerates to the
/// deterministic-renewal limit 1/m^k.
double ig_interdelivery_moment(double mean, double temporal_variance, int k);

/// Gap moments E[l^1] .. E[l^(z+1)] needed for the order-z AoI moment.
struct InterDeliveryMoments {
    std::vector<double> values; ///< values[k-1] = E[l^k]
};

InterDeliveryMoments interdelivery_moments(const SecondOrderStats& stats, int z);

/// E[AoI^z] of a success process with the given second-order statistics:
/// power sums of AoI over one renewal period, Bernoulli-number expansion,
/// inverse-Gaussian gap moments.
double aoi_moment(const SecondOrderStats& stats, int z);

/// The explicit z = 1 and z = 2 closed forms. Exists solely as an oracle
/// for aoi_moment.
double aoi_moment_closed(const SecondOrderStats& stats, int z);

} // namespace aoi

#endif
