#include <doctest.h>

#include <cmath>
#include <map>

#include "qgsynth/errors.hpp"
#include "qgsynth/quantile_graph.hpp"
#include "qgsynth/rng.hpp"

using namespace qgsynth;

TEST_CASE("quantile_bins interpolates order statistics") {
    const std::vector<double> v{1, 2, 3, 4};
    const auto b = quantile_bins(v, 2);
    REQUIRE(b.size() == 3);
    CHECK(b[0] == 1.0);
    CHECK(b[1] == doctest::Approx(2.5));
    CHECK(b[2] == 4.0);
}

TEST_CASE("quantile_bins of a constant series repeats the constant") {
    const auto b = quantile_bins(std::vector<double>{7.5, 7.5, 7.5}, 4);
    REQUIRE(b.size() == 5);
    for (double x : b) CHECK(x == 7.5);
}

TEST_CASE("q = 1 yields [min, max]") {
    const auto b = quantile_bins(std::vector<double>{3, -1, 9, 4}, 1);
    CHECK(b == std::vector<double>{-1, 9});
}

TEST_CASE("quantile_bins errors") {
    CHECK_THROWS_AS(quantile_bins(std::vector<double>{}, 3), EmptyInput);
    CHECK_THROWS_AS(quantile_bins(std::vector<double>{1.0, std::nan("")}, 2), NonFinite);
}

TEST_CASE("assign_quantile half-open bins") {
    const std::vector<double> b{1, 2.5, 4};
    CHECK(assign_quantile(1.0, b) == 1);    // minimum belongs to the first bin
    CHECK(assign_quantile(2.5, b) == 1);    // boundary value closes the bin below
    CHECK(assign_quantile(2.6, b) == 2);
    CHECK(assign_quantile(4.0, b) == 2);
    CHECK_THROWS_AS(assign_quantile(0.9, b), OutOfSupport);
    CHECK_THROWS_AS(assign_quantile(4.1, b), OutOfSupport);
}

TEST_CASE("duplicated boundary values collapse to the last bin of the run") {
    // integer-heavy data: the value 2 spans several quantile levels
    const std::vector<double> b{0, 1, 2, 2, 2, 3, 5};
    CHECK(assign_quantile(2.0, b) == 4);   // (2, 2] degenerate range
    CHECK(assign_quantile(1.5, b) == 2);   // untied values keep the first match
    CHECK(assign_quantile(2.5, b) == 5);
    CHECK(assign_quantile(5.0, b) == 6);
}

TEST_CASE("map_qg hand-counted transitions and the zero-row edge") {
    const auto g = map_qg(TimeSeries({1, 2, 3}), 2);
    CHECK(g.boundaries == std::vector<double>{1, 2, 3});
    CHECK(g.counts[0][0] == 1);
    CHECK(g.counts[0][1] == 1);
    CHECK(g.counts[1][0] == 0);
    CHECK(g.counts[1][1] == 0);
    CHECK(g.w[0][0] == doctest::Approx(0.5));
    CHECK(g.w[0][1] == doctest::Approx(0.5));
    CHECK(g.row_is_zero(1));
    g.check_invariants(2);
}

TEST_CASE("map_qg of an alternating chain") {
    const auto g = map_qg(TimeSeries({0, 1, 0, 1, 0, 1}), 2);
    CHECK(g.w[0][1] == doctest::Approx(1.0));
    CHECK(g.w[1][0] == doctest::Approx(1.0));
    CHECK(g.w[0][0] == 0.0);
    CHECK(g.w[1][1] == 0.0);
}

TEST_CASE("map_qg of a constant series puts all mass in the final tied bin") {
    // all boundaries coincide, so the tie rule selects bin Q
    const auto g = map_qg(TimeSeries({3, 3, 3, 3}), 2);
    CHECK(g.counts[1][1] == 3);
    CHECK(g.w[1][1] == doctest::Approx(1.0));
    CHECK(g.row_is_zero(0));
}

TEST_CASE("map_qg errors") {
    CHECK_THROWS_AS(map_qg(TimeSeries({1.0}), 2), TooShort);
    CHECK_THROWS_AS(map_qg(TimeSeries(), 2), TooShort);
}

TEST_CASE("nonzero rows of W sum to one on random series") {
    Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t t = 2 + std::size_t(rng.next_double() * 999);
        std::vector<double> v(t);
        for (double& x : v) x = rng.normal();
        const int q = 1 + int(rng.next_double() * 12);
        const auto g = map_qg(TimeSeries(v), q);
        g.check_invariants(t - 1);
        for (int i = 0; i < g.q; ++i) {
            double s = 0.0;
            for (double w : g.w[i]) s += w;
            if (!g.row_is_zero(i)) CHECK(std::abs(s - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("equal-mass occupancy for continuous iid series") {
    Rng rng(5);
    const std::size_t t = 1000;
    std::vector<double> v(t);
    for (double& x : v) x = rng.next_double();
    const int q = 7;
    const auto g = map_qg(TimeSeries(v), q);
    std::vector<long> occupancy(q, 0);
    for (double x : v) ++occupancy[assign_quantile(x, g.boundaries) - 1];
    for (long c : occupancy) {
        CHECK(c >= long(t) / q - 1);
        CHECK(c <= long(t + q - 1) / q + 1);
    }
}

TEST_CASE("map_qg is invariant under strictly increasing transforms") {
    Rng rng(17);
    std::vector<double> v(300);
    for (double& x : v) x = rng.normal();
    const auto g1 = map_qg(TimeSeries(v), 10);

    std::vector<double> fx(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) fx[i] = std::exp(0.5 * v[i]) + 2.0 * v[i];
    const auto g2 = map_qg(TimeSeries(fx), 10);
    CHECK(g1.counts == g2.counts);
    CHECK(g1.w == g2.w);
}

TEST_CASE("identical input gives an identical graph") {
    Rng rng(23);
    std::vector<double> v(200);
    for (double& x : v) x = rng.normal();
    const auto a = map_qg(TimeSeries(v), 8);
    const auto b = map_qg(TimeSeries(v), 8);
    CHECK(a.boundaries == b.boundaries);
    CHECK(a.counts == b.counts);
    CHECK(a.w == b.w);
}

TEST_CASE("quantile graph JSON round trip") {
    const auto g = map_qg(TimeSeries({1, 2, 3, 1, 2, 0.5}), 3);
    const std::string text = to_json_string(g);
    const auto back = qg_from_json_string(text);
    CHECK(back.q == g.q);
    CHECK(back.boundaries == g.boundaries);
    CHECK(back.counts == g.counts);
    CHECK(back.w == g.w);
    CHECK_THROWS_AS(qg_from_json_string("{\"q\": 2}"), ParseError);
}
