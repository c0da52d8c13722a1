#include "qgsynth/synthesis.hpp"

#include <algorithm>

#include "qgsynth/errors.hpp"
#include "qgsynth/rng.hpp"

namespace qgsynth {

namespace {

// CDF inversion over row `k` of W; the row must have a nonzero sum.
int next_bin(const QuantileGraph& g, int k, Rng& rng) {
    const double u = rng.next_double();
    double cum = 0.0;
    int last_nonzero = -1;
    for (int j = 0; j < g.q; ++j) {
        const double p = g.w[k][j];
        if (p <= 0.0) continue;
        cum += p;
        last_nonzero = j;
        if (u < cum) return j;
    }
    return last_nonzero;  // rounding residue pushed u past the total
}

int uniform_nonzero_row(const std::vector<int>& rows, Rng& rng) {
    const auto i = static_cast<std::size_t>(rng.next_double() * double(rows.size()));
    return rows[std::min(i, rows.size() - 1)];
}

struct Walker {
    const QuantileGraph& g;
    std::vector<int> nonzero;
    Rng rng;
    int bin;  // 0-based current bin

    Walker(const QuantileGraph& graph, std::uint64_t seed, int start_bin = -1)
        : g(graph), nonzero(graph.nonzero_rows()), rng(seed) {
        if (nonzero.empty()) throw DegenerateGraph();
        bin = start_bin >= 0 ? start_bin : uniform_nonzero_row(nonzero, rng);
    }

    double step() {
        const double value = rng.uniform_left_open(g.boundaries[bin], g.boundaries[bin + 1]);
        if (g.row_is_zero(bin))
            bin = uniform_nonzero_row(nonzero, rng);
        else
            bin = next_bin(g, bin, rng);
        return value;
    }
};

}  // namespace

TimeSeries synthesize(const SynthesisRequest& request) {
    if (request.length < 1) throw Error("synthesis length must be >= 1");
    Walker walker(request.graph, request.seed);
    std::vector<double> out(request.length);
    for (double& v : out) v = walker.step();
    return TimeSeries(std::move(out));
}

std::vector<TimeSeries> synthesize_many(const SynthesisRequest& request) {
    if (request.replicas < 1) throw Error("replicas must be >= 1");
    std::vector<TimeSeries> out;
    out.reserve(request.replicas);
    for (std::size_t r = 0; r < request.replicas; ++r) {
        SynthesisRequest one = request;
        one.seed = r == 0 ? request.seed : Rng::derive(request.seed, r);
        one.replicas = 1;
        out.push_back(synthesize(one));
    }
    return out;
}

TimeSeries impute(const TimeSeries& series, int q, std::uint64_t seed) {
    series.check_invariants();
    if (series.observed_count() < 2) throw AllMissing("impute needs at least 2 observed values");
    if (series.complete()) return series;

    std::vector<double> observed;
    observed.reserve(series.observed_count());
    for (std::size_t i = 0; i < series.size(); ++i)
        if (!series.is_missing(i)) observed.push_back(series.values[i]);

    QuantileGraph g;
    g.q = q;
    g.boundaries = quantile_bins(observed, q);
    g.counts.assign(q, std::vector<std::int64_t>(q, 0));
    g.w.assign(q, std::vector<double>(q, 0.0));

    std::int64_t total = 0;
    for (std::size_t t = 0; t + 1 < series.size(); ++t) {
        if (series.is_missing(t) || series.is_missing(t + 1)) continue;
        const int a = assign_quantile(series.values[t], g.boundaries);
        const int b = assign_quantile(series.values[t + 1], g.boundaries);
        ++g.counts[a - 1][b - 1];
        ++total;
    }
    if (total == 0) throw DegenerateGraph("no consecutive observed pairs to fit on");
    for (int i = 0; i < q; ++i) {
        std::int64_t row = 0;
        for (int j = 0; j < q; ++j) row += g.counts[i][j];
        if (row == 0) continue;
        for (int j = 0; j < q; ++j) g.w[i][j] = double(g.counts[i][j]) / double(row);
    }

    TimeSeries out = series;
    std::size_t t = 0;
    while (t < out.size()) {
        if (!out.is_missing(t)) {
            ++t;
            continue;
        }
        std::size_t end = t;
        while (end < out.size() && out.is_missing(end)) ++end;

        const int start_bin =
            t > 0 ? assign_quantile(out.values[t - 1], g.boundaries) - 1 : -1;
        Walker walker(g, Rng::derive(seed, t), start_bin);
        for (std::size_t u = t; u < end; ++u) {
            out.values[u] = walker.step();
            out.missing[u] = false;
        }
        t = end;
    }
    out.missing.clear();
    return out;
}

}  // namespace qgsynth
