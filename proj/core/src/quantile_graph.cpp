#include "qgsynth/quantile_graph.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "qgsynth/errors.hpp"

namespace qgsynth {

bool QuantileGraph::row_is_zero(int i) const {
    for (double x : w[i])
        if (x != 0.0) return false;
    return true;
}

std::vector<int> QuantileGraph::nonzero_rows() const {
    std::vector<int> rows;
    for (int i = 0; i < q; ++i)
        if (!row_is_zero(i)) rows.push_back(i);
    return rows;
}

void QuantileGraph::check_invariants(std::size_t transition_count) const {
    if (q <= 0 || boundaries.size() != static_cast<std::size_t>(q) + 1)
        throw Error("quantile graph has inconsistent dimensions");
    if (!std::is_sorted(boundaries.begin(), boundaries.end()))
        throw Error("quantile boundaries must be nondecreasing");
    std::int64_t total = 0;
    for (int i = 0; i < q; ++i) {
        std::int64_t row = 0;
        double wrow = 0.0;
        for (int j = 0; j < q; ++j) {
            if (counts[i][j] < 0) throw Error("negative transition count");
            if (w[i][j] < 0.0 || w[i][j] > 1.0) throw Error("transition probability outside [0,1]");
            row += counts[i][j];
            wrow += w[i][j];
        }
        total += row;
        if (row > 0 && std::abs(wrow - 1.0) > 1e-12)
            throw Error("nonzero row of W does not sum to 1");
        if (row == 0 && wrow != 0.0) throw Error("zero-count row of W must be all zeros");
    }
    if (total != static_cast<std::int64_t>(transition_count))
        throw Error("transition counts do not sum to T - 1");
}

std::vector<double> quantile_bins(std::span<const double> values, int q) {
    if (values.empty()) throw EmptyInput("quantile_bins of empty values");
    if (q < 1) throw Error("q must be a positive integer");
    for (double v : values)
        if (!std::isfinite(v)) throw NonFinite();

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    std::vector<double> b(static_cast<std::size_t>(q) + 1);
    b.front() = sorted.front();
    b.back() = sorted.back();
    for (int i = 1; i < q; ++i) {
        const double h = double(n - 1) * (double(i) / double(q));
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const double frac = h - double(lo);
        double v = sorted[lo];
        if (frac > 0.0 && lo + 1 < n) v += frac * (sorted[lo + 1] - sorted[lo]);
        b[i] = v;
    }
    return b;
}

int assign_quantile(double value, std::span<const double> boundaries) {
    const auto qn = boundaries.size() - 1;
    if (value < boundaries.front() || value > boundaries.back())
        throw OutOfSupport("value " + std::to_string(value) + " outside quantile support");

    // first i >= 1 with value <= b_i
    auto it = std::lower_bound(boundaries.begin() + 1, boundaries.end(), value);
    if (*it == value) {
        // duplicated boundary value: take the last bin of the tie run
        it = std::upper_bound(it, boundaries.end(), value) - 1;
    }
    auto i = static_cast<int>(it - boundaries.begin());
    return std::min(i, static_cast<int>(qn));
}

QuantileGraph map_qg(const TimeSeries& series, int q) {
    if (!series.complete()) throw MissingValues("map_qg requires a complete series");
    if (series.size() < 2) throw TooShort("map_qg needs at least two observations");

    QuantileGraph g;
    g.q = q;
    g.boundaries = quantile_bins(series.values, q);
    g.counts.assign(q, std::vector<std::int64_t>(q, 0));
    g.w.assign(q, std::vector<double>(q, 0.0));

    int prev = assign_quantile(series.values[0], g.boundaries);
    for (std::size_t t = 1; t < series.size(); ++t) {
        const int cur = assign_quantile(series.values[t], g.boundaries);
        ++g.counts[prev - 1][cur - 1];
        prev = cur;
    }

    for (int i = 0; i < q; ++i) {
        std::int64_t row = 0;
        for (int j = 0; j < q; ++j) row += g.counts[i][j];
        if (row == 0) continue;
        for (int j = 0; j < q; ++j)
            g.w[i][j] = double(g.counts[i][j]) / double(row);
    }
    return g;
}

std::string to_json_string(const QuantileGraph& graph) {
    nlohmann::ordered_json j;
    j["q"] = graph.q;
    j["boundaries"] = graph.boundaries;
    j["counts"] = graph.counts;
    j["w"] = graph.w;
    return j.dump(2) + "\n";
}

QuantileGraph qg_from_json_string(const std::string& text) {
    QuantileGraph g;
    try {
        const auto j = nlohmann::json::parse(text);
        g.q = j.at("q").get<int>();
        g.boundaries = j.at("boundaries").get<std::vector<double>>();
        g.counts = j.at("counts").get<std::vector<std::vector<std::int64_t>>>();
        g.w = j.at("w").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("quantile graph JSON: ") + e.what());
    }
    if (g.q <= 0 || g.boundaries.size() != static_cast<std::size_t>(g.q) + 1 ||
        g.counts.size() != static_cast<std::size_t>(g.q) ||
        g.w.size() != static_cast<std::size_t>(g.q))
        throw ParseError("quantile graph JSON: inconsistent dimensions");
    return g;
}

}  // namespace qgsynth
