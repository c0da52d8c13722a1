#include "qgsynth/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "qgsynth/errors.hpp"

namespace qgsynth {

namespace {

double edge_weight(int a, int b, double ya, double yb) {
    const double dt = double(b - a);
    const double dy = yb - ya;
    return 1.0 / std::sqrt(dt * dt + dy * dy);
}

void require_series(const TimeSeries& s, const char* op) {
    if (!s.complete()) throw MissingValues(std::string(op) + " requires a complete series");
    if (s.size() < 2) throw TooShort(std::string(op) + " needs T >= 2");
}

}  // namespace

WeightedGraph nvg(const TimeSeries& series) {
    require_series(series, "nvg");
    const auto& y = series.values;
    const int n = int(y.size());

    WeightedGraph g;
    g.n = n;
    g.directed = false;

    // Segment recursion on the running maximum: no visibility line crosses the
    // segment's highest point, so only edges incident to it remain after the
    // two halves are handled.
    std::vector<std::pair<int, int>> stack;
    stack.emplace_back(0, n - 1);
    while (!stack.empty()) {
        const auto [l, r] = stack.back();
        stack.pop_back();
        if (r - l < 1) continue;

        int m = l;
        for (int i = l + 1; i <= r; ++i)
            if (y[i] > y[m]) m = i;

        double best = -std::numeric_limits<double>::infinity();
        for (int i = m - 1; i >= l; --i) {
            const double slope = (y[i] - y[m]) / double(m - i);
            if (slope > best) {
                g.edges.push_back({i, m, edge_weight(i, m, y[i], y[m])});
                best = slope;
            }
        }
        best = -std::numeric_limits<double>::infinity();
        for (int j = m + 1; j <= r; ++j) {
            const double slope = (y[j] - y[m]) / double(j - m);
            if (slope > best) {
                g.edges.push_back({m, j, edge_weight(m, j, y[m], y[j])});
                best = slope;
            }
        }
        if (m - l > 1) stack.emplace_back(l, m - 1);
        if (r - m > 1) stack.emplace_back(m + 1, r);
    }

    std::sort(g.edges.begin(), g.edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return g;
}

WeightedGraph hvg(const TimeSeries& series) {
    require_series(series, "hvg");
    const auto& y = series.values;
    const int n = int(y.size());

    WeightedGraph g;
    g.n = n;
    g.directed = false;

    std::vector<int> stack;
    for (int b = 0; b < n; ++b) {
        while (!stack.empty() && y[stack.back()] < y[b]) {
            g.edges.push_back({stack.back(), b, edge_weight(stack.back(), b, y[stack.back()], y[b])});
            stack.pop_back();
        }
        if (!stack.empty()) {
            const int a = stack.back();
            g.edges.push_back({a, b, edge_weight(a, b, y[a], y[b])});
            // an equal-height predecessor can never see past b
            if (y[a] == y[b]) stack.pop_back();
        }
        stack.push_back(b);
    }

    std::sort(g.edges.begin(), g.edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return g;
}

}  // namespace qgsynth
