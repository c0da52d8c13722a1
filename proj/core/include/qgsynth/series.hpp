#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qgsynth {

/// Ordered real-valued observations with optional strictly increasing epoch
/// timestamps and a missing-value mask aligned with `values`.
///
/// Invariants (see check_invariants): mask and timestamp lengths match the
/// values, timestamps strictly increase, and every observed value is finite.
struct TimeSeries {
    std::vector<double> values;
    std::vector<std::int64_t> timestamps;  // empty when the series is untimed
    std::vector<bool> missing;             // empty means fully observed

    TimeSeries() = default;
    explicit TimeSeries(std::vector<double> v) : values(std::move(v)) {}
    TimeSeries(std::vector<double> v, std::vector<bool> miss)
        : values(std::move(v)), missing(std::move(miss)) {}

    std::size_t size() const { return values.size(); }
    bool has_timestamps() const { return !timestamps.empty(); }
    bool is_missing(std::size_t i) const { return !missing.empty() && missing[i]; }
    bool complete() const;
    std::size_t observed_count() const;

    /// Throws Error subtypes when a structural invariant is violated.
    void check_invariants() const;
};

/// Sample autocorrelations r_1..r_max_lag with the biased (divide by T)
/// mean-centered estimator; every value lies in [-1, 1].
std::vector<double> acf(const TimeSeries& series, std::size_t max_lag);
std::vector<double> acf(std::span<const double> values, std::size_t max_lag);

/// First or second difference; the result is shorter by `order`.
TimeSeries difference(const TimeSeries& series, int order);

enum class AggregateMethod { Mean, Sum };

/// Collapse consecutive windows of `window` raw steps into one point each,
/// skipping missing values inside a window; a fully missing window stays
/// missing. A trailing partial window is dropped.
TimeSeries aggregate(const TimeSeries& series, std::size_t window,
                     AggregateMethod method = AggregateMethod::Mean);

}  // namespace qgsynth
