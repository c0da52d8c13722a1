#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qgsynth/errors.hpp"
#include "qgsynth/series.hpp"
#include "qgsynth/simulators.hpp"

using namespace qgsynth;

namespace {

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

double var_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / double(v.size());
}

}  // namespace

TEST_CASE("table_models lists the eleven corpus models") {
    const auto models = table_models();
    REQUIRE(models.size() == 11);
    CHECK(models.front().first == "WN");
    CHECK(models.back().first == "INAR");
    for (const auto& [label, spec] : models) CHECK_NOTHROW(spec.validate());
}

TEST_CASE("simulation is deterministic per (spec, seed)") {
    for (const auto& [label, spec] : table_models()) {
        const auto a = simulate(spec, 300, 17);
        const auto b = simulate(spec, 300, 17);
        const auto c = simulate(spec, 300, 18);
        CHECK(a.values == b.values);
        CHECK(a.values != c.values);
        CHECK(a.size() == 300);
    }
}

TEST_CASE("AR(1) lag-1 autocorrelation recovers phi for all three values") {
    for (const double phi : {-0.5, 0.5, 0.9}) {
        const ModelSpec spec{ModelKind::Ar1, {{"phi1", phi}}, 1000};
        const auto y = simulate(spec, 10000, 101 + int(10 * phi));
        CHECK(std::abs(acf(y, 1)[0] - phi) < 3.0 / std::sqrt(10000.0));
    }
}

TEST_CASE("AR(2) lag-1 autocorrelation matches Yule-Walker") {
    // rho_1 = phi1 / (1 - phi2)
    const double expected = 1.5 / 1.75;
    const auto y = simulate(model_by_name("AR2"), 10000, 9);
    CHECK(std::abs(acf(y, 1)[0] - expected) < 0.05);
}

TEST_CASE("ARIMA(1,1,0): the first difference is the AR(1) 0.7 part") {
    const auto y = simulate(model_by_name("ARIMA"), 10000, 4);
    const auto d = difference(y, 1);
    CHECK(std::abs(acf(d, 1)[0] - 0.7) < 3.0 / std::sqrt(10000.0));
}

TEST_CASE("GARCH(1,1) unconditional variance") {
    // omega / (1 - alpha1 - beta1) = 1e-6 / 0.1 = 1e-5; averaged over runs
    const auto spec = model_by_name("GARCH");
    double total = 0.0;
    const int runs = 12;
    for (int r = 0; r < runs; ++r) total += var_of(simulate(spec, 10000, 500 + r).values);
    const double v = total / runs;
    CHECK(v > 1e-5 * 0.7);
    CHECK(v < 1e-5 * 1.3);
}

TEST_CASE("INAR(1) mean and integer values") {
    const auto y = simulate(model_by_name("INAR"), 10000, 77);
    CHECK(std::abs(mean_of(y.values) - 2.0) < 0.1);
    for (std::size_t i = 0; i < 50; ++i)
        CHECK(y.values[i] == std::floor(y.values[i]));
}

TEST_CASE("Poisson-HMM occupancy and per-state means") {
    const auto y = simulate(model_by_name("HMM"), 10000, 21);
    // split observations by the midpoint between the two emission means
    std::vector<double> low, high;
    for (double v : y.values) (v < 12.5 ? low : high).push_back(v);
    const double occupancy = double(low.size()) / double(y.size());
    CHECK(std::abs(occupancy - 0.5) < 0.08);
    CHECK(std::abs(mean_of(low) - 10.0) < 0.8);
    CHECK(std::abs(mean_of(high) - 15.0) < 0.8);
}

TEST_CASE("SETAR is stable and regime dependent") {
    const auto y = simulate(model_by_name("SETAR"), 10000, 6);
    for (double v : y.values) CHECK(std::isfinite(v));
    CHECK(std::abs(mean_of(y.values)) < 5.0);
    CHECK(var_of(y.values) < 100.0);
}

TEST_CASE("ARFIMA autocorrelation decays slower than AR(1) 0.9 beyond lag 30") {
    const int runs = 20;
    std::vector<double> arfima_acf(40, 0.0), ar_acf(40, 0.0);
    for (int r = 0; r < runs; ++r) {
        const auto a = acf(simulate(model_by_name("ARFIMA"), 10000, 900 + r), 40);
        const auto b = acf(simulate(model_by_name("AR1_0.9"), 10000, 900 + r), 40);
        for (int k = 0; k < 40; ++k) {
            arfima_acf[k] += a[k] / runs;
            ar_acf[k] += b[k] / runs;
        }
    }
    for (int k = 30; k < 40; ++k) CHECK(arfima_acf[k] > ar_acf[k]);
}

TEST_CASE("white noise moments") {
    const auto y = simulate(ModelSpec{ModelKind::WhiteNoise, {}, 0}, 20000, 3);
    CHECK(std::abs(mean_of(y.values)) < 0.03);
    CHECK(std::abs(var_of(y.values) - 1.0) < 0.05);
}

TEST_CASE("invalid specs name the violated constraint") {
    CHECK_THROWS_AS(simulate(ModelSpec{ModelKind::Ar1, {{"phi1", 1.2}}, 0}, 10, 1), InvalidSpec);
    CHECK_THROWS_AS(simulate(ModelSpec{ModelKind::Ar2, {{"phi1", 1.2}, {"phi2", 0.3}}, 0}, 10, 1),
                    InvalidSpec);
    CHECK_THROWS_AS(
        simulate(ModelSpec{ModelKind::Garch11, {{"omega", 1e-6}, {"alpha1", 0.5}, {"beta1", 0.6}}, 0},
                 10, 1),
        InvalidSpec);
    CHECK_THROWS_AS(
        simulate(ModelSpec{ModelKind::Arfima, {{"phi1", 0.9}, {"d", 0.7}}, 0}, 10, 1), InvalidSpec);
    CHECK_THROWS_AS(
        simulate(ModelSpec{ModelKind::Inar1, {{"alpha", 1.0}, {"innov_mean", 1.0}}, 0}, 10, 1),
        InvalidSpec);
    CHECK_THROWS_AS(simulate(ModelSpec{ModelKind::Ar1, {}, 0}, 10, 1), InvalidSpec);
    CHECK_THROWS_AS(model_by_name("NOPE"), InvalidSpec);

    try {
        simulate(ModelSpec{ModelKind::Garch11, {{"omega", 1e-6}, {"alpha1", 0.5}, {"beta1", 0.6}}, 0},
                 10, 1);
    } catch (const InvalidSpec& e) {
        CHECK(std::string(e.what()).find("alpha1 + beta1") != std::string::npos);
    }
}
