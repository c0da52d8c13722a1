#include <doctest.h>

#include <cmath>

#include "qgsynth/errors.hpp"
#include "qgsynth/rng.hpp"
#include "qgsynth/series.hpp"
#include "qgsynth/simulators.hpp"

using namespace qgsynth;

TEST_CASE("acf of an AR(1) 0.9 draw recovers phi at lag 1") {
    const ModelSpec spec{ModelKind::Ar1, {{"phi1", 0.9}}, 1000};
    const TimeSeries y = simulate(spec, 10000, 42);
    const auto r = acf(y, 1);
    CHECK(std::abs(r[0] - 0.9) < 3.0 / std::sqrt(10000.0));
}

TEST_CASE("acf of white noise is near zero") {
    const TimeSeries y = simulate(ModelSpec{ModelKind::WhiteNoise, {}, 0}, 10000, 7);
    const auto r = acf(y, 1);
    CHECK(std::abs(r[0]) <= 3.0 / std::sqrt(10000.0));
}

TEST_CASE("acf of a constant series fails") {
    CHECK_THROWS_AS(acf(TimeSeries({5, 5, 5, 5}), 1), ConstantSeries);
}

TEST_CASE("acf errors") {
    CHECK_THROWS_AS(acf(TimeSeries({1, 2}), 1), TooShort);
    TimeSeries gappy({1, 2, 3, 4, 5}, {false, true, false, false, false});
    CHECK_THROWS_AS(acf(gappy, 1), MissingValues);
}

TEST_CASE("acf is shift and scale invariant, including negative scale") {
    Rng rng(11);
    std::vector<double> base(200);
    for (double& v : base) v = rng.normal();
    const auto r0 = acf(TimeSeries(base), 5);
    for (const double a : {2.5, -3.0, 0.001}) {
        std::vector<double> scaled(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) scaled[i] = a * base[i] + 7.0;
        const auto r1 = acf(TimeSeries(scaled), 5);
        for (std::size_t k = 0; k < r0.size(); ++k)
            CHECK(std::abs(r0[k] - r1[k]) < 1e-12);
    }
    for (const auto r : {acf(TimeSeries(base), 5)})
        for (double v : r) CHECK(std::abs(v) <= 1.0);
}

TEST_CASE("difference arithmetic") {
    const TimeSeries y({1, 3, 6, 10});
    CHECK(difference(y, 1).values == std::vector<double>{2, 3, 4});
    CHECK(difference(y, 2).values == std::vector<double>{1, 1});
    CHECK_THROWS_AS(difference(TimeSeries({1.0}), 1), TooShort);
}

TEST_CASE("first difference of a linear ramp is constant") {
    std::vector<double> ramp(50);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = 3.5 * double(i);
    const auto d = difference(TimeSeries(ramp), 1);
    for (double v : d.values) CHECK(v == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("difference then cumulative sum reconstructs the series") {
    Rng rng(3);
    std::vector<double> y(64);
    for (double& v : y) v = rng.normal();
    const auto d = difference(TimeSeries(y), 1);
    double level = y[0];
    for (std::size_t i = 0; i < d.size(); ++i) {
        level += d.values[i];
        CHECK(level == doctest::Approx(y[i + 1]).epsilon(1e-12));
    }
}

TEST_CASE("aggregate collapses windows by mean") {
    std::vector<double> minute(120);
    for (std::size_t i = 0; i < minute.size(); ++i) minute[i] = double(i);
    const auto hourly = aggregate(TimeSeries(minute), 60);
    REQUIRE(hourly.size() == 2);
    CHECK(hourly.values[0] == doctest::Approx(29.5));
    CHECK(hourly.values[1] == doctest::Approx(89.5));

    const auto sums = aggregate(TimeSeries(minute), 60, AggregateMethod::Sum);
    CHECK(sums.values[0] == doctest::Approx(29.5 * 60));
}

TEST_CASE("aggregate of a constant series is constant and partials are dropped") {
    const auto out = aggregate(TimeSeries(std::vector<double>(17, 4.25)), 5);
    REQUIRE(out.size() == 3);  // 17 = 3 full windows + dropped partial
    for (double v : out.values) CHECK(v == doctest::Approx(4.25));
}

TEST_CASE("aggregate uses only the observed values of a window") {
    std::vector<double> values(60, 0.0);
    std::vector<bool> missing(60, true);
    values[31] = 12.5;
    missing[31] = false;
    const auto out = aggregate(TimeSeries(values, missing), 60);
    REQUIRE(out.size() == 1);
    CHECK_FALSE(out.is_missing(0));
    CHECK(out.values[0] == doctest::Approx(12.5));
}

TEST_CASE("a fully missing window stays missing") {
    std::vector<double> values(20, 1.0);
    std::vector<bool> missing(20, false);
    for (int i = 10; i < 20; ++i) missing[i] = true;
    const auto out = aggregate(TimeSeries(values, missing), 10);
    REQUIRE(out.size() == 2);
    CHECK_FALSE(out.is_missing(0));
    CHECK(out.is_missing(1));
    CHECK_THROWS_AS(aggregate(TimeSeries(), 10), EmptyInput);
}

TEST_CASE("invariant checks catch malformed series") {
    TimeSeries bad({1.0, 2.0});
    bad.timestamps = {5, 5};
    CHECK_THROWS_AS(bad.check_invariants(), Error);

    TimeSeries nan_series({1.0, std::nan("")});
    CHECK_THROWS_AS(nan_series.check_invariants(), NonFinite);

    TimeSeries masked_nan({1.0, std::nan("")}, {false, true});
    CHECK_NOTHROW(masked_nan.check_invariants());
}
