#include <aoi/moments.hpp>

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace aoi;

TEST_SUITE("moments") {

TEST_CASE("bernoulli numbers from the recurrence") {
    const std::vector<Rational> b = bernoulli_numbers(8);
    CHECK(b[0] == Rational(1));
    CHECK(b[1] == Rational(-1, 2));
    CHECK(b[2] == Rational(1, 6));
    CHECK(b[3] == Rational(0));
    CHECK(b[4] == Rational(-1, 30));
    CHECK(b[5] == Rational(0));
    CHECK(b[6] == Rational(1, 42));
    CHECK(b[7] == Rational(0));
    CHECK(b[8] == Rational(-1, 30));
    CHECK_THROWS_AS(bernoulli_numbers(-1), invalid_parameter_error);
}

TEST_CASE("power sums match direct loops") {
    CHECK(faulhaber_sum(3, 2) == 14);
    CHECK(faulhaber_sum(5, 3) == 225);
    CHECK(faulhaber_sum(100, 6) == BigInt("14790714119050"));
    CHECK(faulhaber_sum(200, 8) == BigInt("58177422072890666660"));
    for (int z = 1; z <= 8; ++z) {
        for (long long l = 1; l <= 200; ++l) {
            BigInt direct = 0;
            for (long long k = 1; k <= l; ++k) {
                BigInt term = 1;
                for (int e = 0; e < z; ++e) term *= k;
                direct += term;
            }
            REQUIRE(faulhaber_sum(l, z) == direct);
        }
    }
    CHECK_THROWS_AS(faulhaber_sum(0, 2), invalid_parameter_error);
    CHECK_THROWS_AS(faulhaber_sum(3, 0), invalid_parameter_error);
}

TEST_CASE("inverse Gaussian gap moments") {
    CHECK(ig_interdelivery_moment(0.25, 0.7, 1) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(ig_interdelivery_moment(0.25, 0.1875, 2) == doctest::Approx(28.0).epsilon(1e-14));
    CHECK(ig_interdelivery_moment(0.25, 0.1875, 3) == doctest::Approx(316.0).epsilon(1e-14));
    CHECK(ig_interdelivery_moment(0.5, 0.0, 3) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK_THROWS_AS(ig_interdelivery_moment(0.0, 0.1, 1), invalid_parameter_error);
    CHECK_THROWS_AS(ig_interdelivery_moment(0.5, -0.1, 1), invalid_parameter_error);
    CHECK_THROWS_AS(ig_interdelivery_moment(0.5, 0.1, 0), invalid_parameter_error);
}

TEST_CASE("first gap moment times the rate is exactly one") {
    // Sampled at rates where IEEE reciprocal round-trips (not every double
    // does: 1/m times m can round to the neighbour of 1).
    for (const double m : {1.0, 0.5, 0.25, 0.1, 0.02, 1.0 / 7.0}) {
        CHECK(ig_interdelivery_moment(m, 0.3, 1) * m == 1.0);
    }
}

TEST_CASE("gap moments are nondecreasing in the order") {
    const InterDeliveryMoments gaps = interdelivery_moments({0.25, 0.1875}, 4);
    REQUIRE(gaps.values.size() == 5);
    CHECK(gaps.values[0] == doctest::Approx(4.0));
    for (size_t k = 1; k < gaps.values.size(); ++k) {
        CHECK(gaps.values[k] >= gaps.values[k - 1]);
    }
}

TEST_CASE("aoi_moment reproduces the explicit closed forms") {
    CHECK(aoi_moment({0.25, 0.1875}, 1) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(aoi_moment({0.5, 0.25}, 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(aoi_moment({0.25, 0.1875}, 2) == doctest::Approx(30.0).epsilon(1e-14));
    CHECK(aoi_moment({1.0, 0.0}, 5) == doctest::Approx(1.0).epsilon(1e-14));

    // 50-point grid: both routes agree to 1e-12 relative error.
    int points = 0;
    for (double m = 0.02; m <= 1.0; m += 0.14) {
        for (double v2 = 0.0; v2 <= 0.31; v2 += 0.05) {
            for (const int z : {1, 2}) {
                const double general = aoi_moment({m, v2}, z);
                const double closed = aoi_moment_closed({m, v2}, z);
                REQUIRE(general == doctest::Approx(closed).epsilon(1e-12));
            }
            ++points;
        }
    }
    CHECK(points >= 50);
}

TEST_CASE("closed forms reject other orders") {
    CHECK_THROWS_AS(aoi_moment_closed({0.25, 0.1}, 3), invalid_parameter_error);
    CHECK_THROWS_AS(aoi_moment_closed({0.25, 0.1}, 0), invalid_parameter_error);
}

TEST_CASE("aoi moments increase with 1/m and with v2/m2") {
    // Monotonicity restated on sampled pairs: lower rate at
    // fixed v2/m2 ratio cannot lower the moment, and higher ratio at fixed
    // rate cannot lower it either.
    for (const int z : {1, 2, 3}) {
        for (double ratio = 0.1; ratio <= 2.0; ratio += 0.37) {
            double previous = 0.0;
            for (double m = 1.0; m >= 0.05; m -= 0.05) {
                const double value = aoi_moment({m, ratio * m * m}, z);
                CHECK(value >= previous * (1.0 - 1e-12));
                previous = value;
            }
        }
        for (double m = 0.1; m <= 1.0; m += 0.18) {
            double previous = 0.0;
            for (double ratio = 0.0; ratio <= 2.0; ratio += 0.1) {
                const double value = aoi_moment({m, ratio * m * m}, z);
                CHECK(value >= previous * (1.0 - 1e-12));
                previous = value;
            }
        }
    }
}

TEST_CASE("jensen consistency between the first two moments") {
    for (double m = 0.05; m <= 1.0; m += 0.09) {
        for (double v2 = 0.0; v2 <= 0.3; v2 += 0.06) {
            const double first = aoi_moment({m, v2}, 1);
            const double second = aoi_moment({m, v2}, 2);
            CHECK(second >= first * first * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("moments are at least one") {
    for (double m = 0.05; m <= 1.0; m += 0.05) {
        for (const int z : {1, 2, 4}) {
            CHECK(aoi_moment({m, 0.2}, z) >= 1.0);
        }
    }
}

} // TEST_SUITE
