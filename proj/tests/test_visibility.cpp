#include <doctest.h>

#include <cmath>
#include <set>

#include "qgsynth/errors.hpp"
#include "qgsynth/rng.hpp"
#include "qgsynth/visibility.hpp"

using namespace qgsynth;

namespace {

// O(T^3) oracles straight from the visibility definitions.
WeightedGraph brute_nvg(const std::vector<double>& y) {
    WeightedGraph g;
    g.n = int(y.size());
    for (int a = 0; a < g.n; ++a) {
        for (int b = a + 1; b < g.n; ++b) {
            bool visible = true;
            for (int c = a + 1; c < b && visible; ++c) {
                const double line =
                    y[b] + (y[a] - y[b]) * double(b - c) / double(b - a);
                if (!(y[c] < line)) visible = false;
            }
            if (visible) {
                const double dt = double(b - a), dy = y[b] - y[a];
                g.edges.push_back({a, b, 1.0 / std::sqrt(dt * dt + dy * dy)});
            }
        }
    }
    return g;
}

WeightedGraph brute_hvg(const std::vector<double>& y) {
    WeightedGraph g;
    g.n = int(y.size());
    for (int a = 0; a < g.n; ++a) {
        for (int b = a + 1; b < g.n; ++b) {
            bool visible = true;
            for (int c = a + 1; c < b && visible; ++c)
                if (!(y[c] < std::min(y[a], y[b]))) visible = false;
            if (visible) {
                const double dt = double(b - a), dy = y[b] - y[a];
                g.edges.push_back({a, b, 1.0 / std::sqrt(dt * dt + dy * dy)});
            }
        }
    }
    return g;
}

bool same_graph(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        if (a.edges[i].u != b.edges[i].u || a.edges[i].v != b.edges[i].v) return false;
        if (a.edges[i].weight != b.edges[i].weight) return false;
    }
    return true;
}

std::set<std::pair<int, int>> edge_set(const WeightedGraph& g) {
    std::set<std::pair<int, int>> s;
    for (const auto& e : g.edges) s.emplace(e.u, e.v);
    return s;
}

}  // namespace

TEST_CASE("a strictly convex series is completely visible") {
    std::vector<double> y(16);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = double(i) * double(i);
    const auto g = nvg(TimeSeries(y));
    CHECK(g.edges.size() == 16 * 15 / 2);
    CHECK(same_graph(g, brute_nvg(y)));
}

TEST_CASE("an exactly linear series gives a path graph") {
    std::vector<double> y(32);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 0.5 * double(i);
    const auto g = nvg(TimeSeries(y));
    REQUIRE(g.edges.size() == 31);  // collinear points block longer edges
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        CHECK(g.edges[i].u == int(i));
        CHECK(g.edges[i].v == int(i) + 1);
    }
}

TEST_CASE("two points form a single edge") {
    const auto g = nvg(TimeSeries({1.0, 5.0}));
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].weight == doctest::Approx(1.0 / std::sqrt(17.0)));
    CHECK_THROWS_AS(nvg(TimeSeries({1.0})), TooShort);
}

TEST_CASE("divide-and-conquer equals brute force on random series") {
    Rng rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t t = 2 + std::size_t(rng.next_double() * 126);
        std::vector<double> y(t);
        for (double& v : y) v = rng.normal();
        CHECK(same_graph(nvg(TimeSeries(y)), brute_nvg(y)));
        CHECK(same_graph(hvg(TimeSeries(y)), brute_hvg(y)));
    }
}

TEST_CASE("visibility with repeated values matches brute force") {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t t = 3 + std::size_t(rng.next_double() * 60);
        std::vector<double> y(t);
        for (double& v : y) v = std::floor(rng.next_double() * 4.0);
        CHECK(same_graph(nvg(TimeSeries(y)), brute_nvg(y)));
        CHECK(same_graph(hvg(TimeSeries(y)), brute_hvg(y)));
    }
}

TEST_CASE("monotone series gives an hvg path with average degree 2(n-1)/n") {
    std::vector<double> y(20);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = double(i);
    const auto g = hvg(TimeSeries(y));
    REQUIRE(g.edges.size() == 19);
    double degree_sum = 0.0;
    for (const auto& e : g.edges) degree_sum += 2.0;
    CHECK(degree_sum / double(g.n) == doctest::Approx(2.0 * 19.0 / 20.0));
}

TEST_CASE("hvg of [3,1,2] is a triangle") {
    const auto g = hvg(TimeSeries({3, 1, 2}));
    CHECK(edge_set(g) == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("horizontal visibility implies natural visibility") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t t = 2 + std::size_t(rng.next_double() * 120);
        std::vector<double> y(t);
        for (double& v : y) v = rng.normal();
        const auto h = edge_set(hvg(TimeSeries(y)));
        const auto n = edge_set(nvg(TimeSeries(y)));
        for (const auto& e : h) CHECK(n.count(e) == 1);
    }
}

TEST_CASE("visibility graphs are invariant under vertical shifts") {
    // integer-valued series and shift keep the arithmetic exact
    Rng rng(13);
    std::vector<double> y(200);
    for (double& v : y) v = std::floor(rng.next_double() * 64.0);
    std::vector<double> shifted(y);
    for (double& v : shifted) v += 123.0;
    CHECK(same_graph(nvg(TimeSeries(y)), nvg(TimeSeries(shifted))));
    CHECK(same_graph(hvg(TimeSeries(y)), hvg(TimeSeries(shifted))));
}
