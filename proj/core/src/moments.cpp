#include <aoi/moments.hpp>

#include <cmath>
#include <mutex>
#include <string>

namespace aoi {

namespace {

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt result = 1;
    for (int i = 0; i < k; ++i) {
        result = result * (n - i) / (i + 1);
    }
    return result;
}

BigInt int_pow(const BigInt& base, int exponent) {
    BigInt acc = 1;
    BigInt b = base;
    while (exponent > 0) {
        if (exponent & 1) acc *= b;
        b *= b;
        exponent >>= 1;
    }
    return acc;
}

BigInt factorial(int n) {
    BigInt acc = 1;
    for (int i = 2; i <= n; ++i) acc *= i;
    return acc;
}

std::vector<Rational>& bernoulli_cache() {
    static std::vector<Rational> cache{Rational(1), Rational(-1, 2)};
    return cache;
}

std::mutex& bernoulli_mutex() {
    static std::mutex m;
    return m;
}

// Coefficient of E[l^(z-k+1)] in the power-sum expansion: B_k/k! * z!/(z-k+1)!
Rational power_sum_coefficient(int k, int z, const std::vector<Rational>& bernoulli) {
    return bernoulli[static_cast<size_t>(k)] / Rational(factorial(k)) *
           Rational(factorial(z), factorial(z - k + 1));
}

} // namespace

std::vector<Rational> bernoulli_numbers(int max_k) {
    if (max_k < 0) {
        throw invalid_parameter_error("bernoulli_numbers needs max_k >= 0");
    }
    std::lock_guard<std::mutex> lock(bernoulli_mutex());
    auto& cache = bernoulli_cache();
    while (static_cast<int>(cache.size()) <= max_k) {
        const int k = static_cast<int>(cache.size());
        Rational acc = 0;
        for (int j = 0; j < k; ++j) {
            acc += Rational(binomial(k + 1, j)) * cache[static_cast<size_t>(j)];
        }
        cache.push_back(-acc / (k + 1));
    }
    return std::vector<Rational>(cache.begin(), cache.begin() + max_k + 1);
}

BigInt faulhaber_sum(long long l, int z) {
    if (l < 1 || z < 1) {
        throw invalid_parameter_error("faulhaber_sum needs l >= 1 and z >= 1");
    }
    const std::vector<Rational> bernoulli = bernoulli_numbers(z);
    const BigInt big_l(l);
    Rational total = Rational(int_pow(big_l, z + 1), z + 1) + Rational(int_pow(big_l, z), 2);
    for (int k = 2; k <= z; ++k) {
        total += power_sum_coefficient(k, z, bernoulli) * Rational(int_pow(big_l, z - k + 1));
    }
    if (denominator(total) != 1) {
        throw internal_inconsistency_error("power sum did not reduce to an integer");
    }
    return numerator(total);
}

double ig_interdelivery_moment(double mean, double temporal_variance, int k) {
    if (!(mean > 0.0)) {
        throw invalid_parameter_error("inter-delivery moment needs mean > 0");
    }
    if (!(temporal_variance >= 0.0)) {
        throw invalid_parameter_error("temporal variance must be >= 0");
    }
    if (k < 1) {
        throw invalid_parameter_error("moment order k must be >= 1");
    }
    const double x = temporal_variance / (2.0 * mean);
    long double sum = 0.0L;
    long double x_pow = 1.0L;
    for (int zeta = 0; zeta <= k - 1; ++zeta) {
        long double coeff;
        if (k <= 20) {
            coeff = static_cast<long double>(
                BigInt(factorial(k - 1 + zeta) / (factorial(zeta) * factorial(k - 1 - zeta))));
        } else {
            coeff = std::exp(std::lgamma(k + zeta) - std::lgamma(zeta + 1.0L) -
                              std::lgamma(k - zeta));
        }
        sum += coeff * x_pow;
        x_pow *= x;
    }
    return static_cast<double>(sum / std::pow(static_cast<long double>(mean), k));
}

InterDeliveryMoments interdelivery_moments(const SecondOrderStats& stats, int z) {
    if (z < 1) {
        throw invalid_parameter_error("moment order z must be >= 1");
    }
    InterDeliveryMoments result;
    result.values.reserve(static_cast<size_t>(z) + 1);
    for (int k = 1; k <= z + 1; ++k) {
        result.values.push_back(ig_interdelivery_moment(stats.mean, stats.temporal_variance, k));
    }
    return result;
}

double aoi_moment(const SecondOrderStats& stats, int z) {
    const InterDeliveryMoments gaps = interdelivery_moments(stats, z);
    const auto gap = [&gaps](int k) { return gaps.values[static_cast<size_t>(k) - 1]; };
    const std::vector<Rational> bernoulli = bernoulli_numbers(std::max(z, 1));
    long double total = static_cast<long double>(gap(z + 1)) / (z + 1) +
                        static_cast<long double>(gap(z)) / 2.0L;
    for (int k = 2; k <= z; ++k) {
        const Rational coeff = power_sum_coefficient(k, z, bernoulli);
        total += static_cast<long double>(coeff) * gap(z - k + 1);
    }
    return static_cast<double>(total / gap(1));
}

double aoi_moment_closed(const SecondOrderStats& stats, int z) {
    if (!(stats.mean > 0.0)) {
        throw invalid_parameter_error("aoi_moment_closed needs mean > 0");
    }
    const double m = stats.mean;
    const double v2 = stats.temporal_variance;
    if (z == 1) {
        return 0.5 * (v2 / (m * m) + 1.0 / m) + 0.5;
    }
    if (z == 2) {
        return v2 * v2 / (m * m * m * m) + v2 / (m * m * m) + (3.0 * v2 + 2.0) / (6.0 * m * m) +
               1.0 / (2.0 * m) + 1.0 / 6.0;
    }
    throw invalid_parameter_error("closed forms exist only for z in {1,2}, got z = " +
                                  std::to_string(z));
}

} // namespace aoi
