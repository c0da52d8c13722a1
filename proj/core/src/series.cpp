#include "qgsynth/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qgsynth/errors.hpp"

namespace qgsynth {

bool TimeSeries::complete() const {
    if (missing.empty()) return true;
    return std::none_of(missing.begin(), missing.end(), [](bool m) { return m; });
}

std::size_t TimeSeries::observed_count() const {
    if (missing.empty()) return values.size();
    std::size_t n = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!missing[i]) ++n;
    return n;
}

void TimeSeries::check_invariants() const {
    if (!missing.empty() && missing.size() != values.size())
        throw LengthMismatch("missing mask length differs from values");
    if (!timestamps.empty()) {
        if (timestamps.size() != values.size())
            throw LengthMismatch("timestamp length differs from values");
        for (std::size_t i = 1; i < timestamps.size(); ++i)
            if (timestamps[i] <= timestamps[i - 1])
                throw Error("timestamps must be strictly increasing");
    }
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!is_missing(i) && !std::isfinite(values[i]))
            throw NonFinite("observed value at index " + std::to_string(i) + " is not finite");
}

std::vector<double> acf(std::span<const double> values, std::size_t max_lag) {
    const std::size_t n = values.size();
    if (max_lag == 0) throw Error("max_lag must be positive");
    if (n < max_lag + 2) throw TooShort("acf needs length >= max_lag + 2");

    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / double(n);
    double denom = 0.0;
    for (double v : values) denom += (v - mean) * (v - mean);
    if (denom == 0.0) throw ConstantSeries();

    std::vector<double> r(max_lag);
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + k < n; ++t)
            num += (values[t] - mean) * (values[t + k] - mean);
        r[k - 1] = num / denom;
    }
    return r;
}

std::vector<double> acf(const TimeSeries& series, std::size_t max_lag) {
    if (!series.complete()) throw MissingValues("acf requires a complete series");
    return acf(std::span<const double>(series.values), max_lag);
}

TimeSeries difference(const TimeSeries& series, int order) {
    if (order != 1 && order != 2) throw Error("difference order must be 1 or 2");
    if (!series.complete()) throw MissingValues("difference requires a complete series");
    if (series.size() <= static_cast<std::size_t>(order)) throw TooShort();

    std::vector<double> d(series.values);
    for (int pass = 0; pass < order; ++pass) {
        for (std::size_t t = 0; t + 1 < d.size(); ++t) d[t] = d[t + 1] - d[t];
        d.pop_back();
    }
    return TimeSeries(std::move(d));
}

TimeSeries aggregate(const TimeSeries& series, std::size_t window, AggregateMethod method) {
    if (series.size() == 0) throw EmptyInput("aggregate of an empty series");
    if (window == 0) throw Error("aggregation window must be positive");

    const std::size_t blocks = series.size() / window;
    TimeSeries out;
    out.values.reserve(blocks);
    out.missing.reserve(blocks);
    if (series.has_timestamps()) out.timestamps.reserve(blocks);

    for (std::size_t b = 0; b < blocks; ++b) {
        double acc = 0.0;
        std::size_t n = 0;
        for (std::size_t i = b * window; i < (b + 1) * window; ++i) {
            if (series.is_missing(i)) continue;
            acc += series.values[i];
            ++n;
        }
        if (n == 0) {
            out.values.push_back(0.0);
            out.missing.push_back(true);
        } else {
            out.values.push_back(method == AggregateMethod::Mean ? acc / double(n) : acc);
            out.missing.push_back(false);
        }
        if (series.has_timestamps()) out.timestamps.push_back(series.timestamps[b * window]);
    }
    if (std::none_of(out.missing.begin(), out.missing.end(), [](bool m) { return m; }))
        out.missing.clear();
    return out;
}

}  // namespace qgsynth
