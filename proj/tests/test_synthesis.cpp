#include <doctest.h>

#include <cmath>
#include <set>

#include "qgsynth/errors.hpp"
#include "qgsynth/quantile_graph.hpp"
#include "qgsynth/rng.hpp"
#include "qgsynth/series.hpp"
#include "qgsynth/simulators.hpp"
#include "qgsynth/synthesis.hpp"

using namespace qgsynth;

namespace {

QuantileGraph manual_graph(std::vector<double> boundaries, std::vector<std::vector<double>> w) {
    QuantileGraph g;
    g.q = int(w.size());
    g.boundaries = std::move(boundaries);
    g.w = std::move(w);
    g.counts.assign(g.q, std::vector<std::int64_t>(g.q, 0));
    for (int i = 0; i < g.q; ++i)
        for (int j = 0; j < g.q; ++j) g.counts[i][j] = std::int64_t(100.0 * g.w[i][j]);
    return g;
}

// transition matrix of `series` over the generating graph's bins
std::vector<std::vector<double>> transition_on_bins(const QuantileGraph& g,
                                                    const std::vector<const TimeSeries*>& parts) {
    std::vector<std::vector<double>> counts(g.q, std::vector<double>(g.q, 0.0));
    for (const TimeSeries* s : parts) {
        int prev = assign_quantile(s->values[0], g.boundaries);
        for (std::size_t t = 1; t < s->size(); ++t) {
            const int cur = assign_quantile(s->values[t], g.boundaries);
            counts[prev - 1][cur - 1] += 1.0;
            prev = cur;
        }
    }
    for (auto& row : counts) {
        double total = 0.0;
        for (double c : row) total += c;
        if (total > 0.0)
            for (double& c : row) c /= total;
    }
    return counts;
}

}  // namespace

TEST_CASE("two-state deterministic chain alternates bins") {
    const auto g = manual_graph({0.0, 0.5, 1.0}, {{0, 1}, {1, 0}});
    const TimeSeries y = synthesize({g, 64, 5, 1});
    REQUIRE(y.size() == 64);
    const int first = assign_quantile(y.values[0], g.boundaries);
    for (std::size_t t = 0; t < y.size(); ++t) {
        const int expected = ((t % 2 == 0) == (first == 1)) ? 1 : 2;
        CHECK(assign_quantile(y.values[t], g.boundaries) == expected);
    }
}

TEST_CASE("single-bin graph draws iid uniforms") {
    const double a = -2.0, b = 3.0;
    const auto g = manual_graph({a, b}, {{1.0}});
    const TimeSeries y = synthesize({g, 100000, 21, 1});
    double mean = 0.0;
    for (double v : y.values) {
        CHECK(v > a);
        CHECK(v <= b);
        mean += v;
    }
    mean /= double(y.size());
    CHECK(std::abs(mean - (a + b) / 2.0) < 0.01 * (b - a));
}

TEST_CASE("round trip: the replica ensemble reproduces the AR(1) 0.9 matrix") {
    const TimeSeries y = simulate(ModelSpec{ModelKind::Ar1, {{"phi1", 0.9}}, 1000}, 10000, 31);
    SynthesisRequest request{map_qg(y, 10), 10000, 77, 10};
    const auto replicas = synthesize_many(request);
    std::vector<const TimeSeries*> parts;
    for (const auto& r : replicas) parts.push_back(&r);
    const auto w_hat = transition_on_bins(request.graph, parts);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        double row = 0.0;
        for (double w : w_hat[i]) row += w;
        if (row == 0.0) continue;
        for (int j = 0; j < 10; ++j)
            worst = std::max(worst, std::abs(w_hat[i][j] - request.graph.w[i][j]));
    }
    CHECK(worst <= 0.05);
}

TEST_CASE("transition fidelity improves with length on a fast-mixing chain") {
    const TimeSeries y = simulate(ModelSpec{ModelKind::Ar1, {{"phi1", 0.5}}, 1000}, 20000, 13);
    const auto g = map_qg(y, 10);

    auto fresh_error = [&](std::size_t t, std::uint64_t seed) {
        const TimeSeries s = synthesize({g, t, seed, 1});
        const auto h = map_qg(s, 10);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j)
                worst = std::max(worst, std::abs(h.w[i][j] - g.w[i][j]));
        return worst;
    };
    CHECK(fresh_error(100000, 51) <= 0.02);
}

TEST_CASE("synthesize_many is deterministic and replicas are distinct") {
    const TimeSeries y = simulate(ModelSpec{ModelKind::Ar1, {{"phi1", 0.5}}, 100}, 1000, 3);
    SynthesisRequest request{map_qg(y, 10), 1000, 19, 3};
    const auto a = synthesize_many(request);
    const auto b = synthesize_many(request);
    REQUIRE(a.size() == 3);
    for (std::size_t r = 0; r < 3; ++r) CHECK(a[r].values == b[r].values);
    CHECK(a[0].values != a[1].values);
    CHECK(a[1].values != a[2].values);

    request.replicas = 1;
    CHECK(synthesize_many(request)[0].values == synthesize(request).values);
}

TEST_CASE("every synthetic value stays inside the support") {
    const TimeSeries y = simulate(ModelSpec{ModelKind::Ar2, {{"phi1", 1.5}, {"phi2", -0.75}}, 500},
                                  2000, 8);
    const auto g = map_qg(y, 25);
    const TimeSeries s = synthesize({g, 5000, 1, 1});
    for (double v : s.values) {
        CHECK(v >= g.boundaries.front());
        CHECK(v <= g.boundaries.back());
    }
}

TEST_CASE("per-bin occupancy of the synthetic walk is near uniform") {
    const TimeSeries y = simulate(ModelSpec{ModelKind::Ar1, {{"phi1", 0.5}}, 1000}, 10000, 23);
    const auto g = map_qg(y, 20);
    const TimeSeries s = synthesize({g, 10000, 33, 1});
    std::vector<double> occupancy(20, 0.0);
    for (double v : s.values) occupancy[assign_quantile(v, g.boundaries) - 1] += 1.0;
    for (double c : occupancy) CHECK(std::abs(c / 10000.0 - 0.05) <= 0.02);
}

TEST_CASE("a walk escaping a zero row still emits exactly T values") {
    const auto g = manual_graph({0.0, 0.5, 1.0}, {{0, 1}, {0, 0}});  // row 2 absorbs
    const TimeSeries y = synthesize({g, 101, 3, 1});
    CHECK(y.size() == 101);
    int visits[2] = {0, 0};
    for (double v : y.values) ++visits[assign_quantile(v, g.boundaries) - 1];
    CHECK(visits[0] > 0);
    CHECK(visits[1] > 0);
}

TEST_CASE("a graph with only zero rows is degenerate") {
    const auto g = manual_graph({0.0, 1.0}, {{0.0}});
    CHECK_THROWS_AS(synthesize({g, 10, 1, 1}), DegenerateGraph);
}

TEST_CASE("seed determinism is bit exact") {
    const TimeSeries y = simulate(ModelSpec{ModelKind::WhiteNoise, {}, 0}, 500, 2);
    SynthesisRequest request{map_qg(y, 10), 500, 123, 1};
    CHECK(synthesize(request).values == synthesize(request).values);
}

TEST_CASE("impute returns the input unchanged when nothing is missing") {
    const TimeSeries y({1, 2, 3, 2, 1});
    const TimeSeries out = impute(y, 4, 9);
    CHECK(out.values == y.values);
}

TEST_CASE("impute on a constant series fills the gap with the constant") {
    std::vector<double> v(40, 2.5);
    std::vector<bool> miss(40, false);
    for (int i = 10; i < 14; ++i) miss[i] = true;
    const TimeSeries out = impute(TimeSeries(v, miss), 5, 4);
    CHECK(out.complete());
    for (double x : out.values) CHECK(x == doctest::Approx(2.5));
}

TEST_CASE("impute keeps observed values bit identical and fills all gaps") {
    const TimeSeries y = simulate(ModelSpec{ModelKind::Ar1, {{"phi1", 0.9}}, 1000}, 5000, 55);
    TimeSeries gappy = y;
    gappy.missing.assign(y.size(), false);
    Rng rng(71);
    for (std::size_t i = 0; i < y.size(); ++i)
        if (rng.next_double() < 0.10) gappy.missing[i] = true;

    const TimeSeries filled = impute(gappy, 20, 17);
    CHECK(filled.complete());
    REQUIRE(filled.size() == y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!gappy.missing[i]) CHECK(filled.values[i] == y.values[i]);

    const double r_full = acf(y, 1)[0];
    const double r_filled = acf(filled, 1)[0];
    CHECK(std::abs(r_full - r_filled) <= 0.1);
}

TEST_CASE("impute error paths") {
    TimeSeries nearly_empty({1.0, 2.0, 3.0}, {true, true, false});
    CHECK_THROWS_AS(impute(nearly_empty, 4, 1), AllMissing);

    // observed values never adjacent: no pairs to fit on
    TimeSeries alternating({1, 0, 2, 0, 3}, {false, true, false, true, false});
    CHECK_THROWS_AS(impute(alternating, 2, 1), DegenerateGraph);
}

TEST_CASE("a gap at the start of the series is filled from a uniform start") {
    std::vector<double> v{0, 0, 1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<bool> miss{true, true, false, false, false, false, false, false, false, false};
    const TimeSeries out = impute(TimeSeries(v, miss), 3, 12);
    CHECK(out.complete());
    CHECK(out.values[0] >= 1.0);
    CHECK(out.values[0] <= 8.0);
}
