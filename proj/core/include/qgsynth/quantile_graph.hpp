#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qgsynth/series.hpp"

namespace qgsynth {

/// Quantile graph of a series: Q+1 bin boundaries plus the observed transition
/// counts and the row-normalized Markov matrix W (rows with no observed
/// transitions stay all-zero).
struct QuantileGraph {
    int q = 0;
    std::vector<double> boundaries;                // q + 1, nondecreasing, [min .. max]
    std::vector<std::vector<std::int64_t>> counts; // q x q
    std::vector<std::vector<double>> w;            // q x q, row-stochastic or zero rows

    bool row_is_zero(int i) const;
    /// Indices (0-based) of rows with at least one observed transition.
    std::vector<int> nonzero_rows() const;
    void check_invariants(std::size_t transition_count) const;
};

/// Q+1 bin boundaries [b_0 .. b_Q]: b_0 = min, b_Q = max, interior b_i the
/// sample quantile at probability i/Q by linear interpolation of order
/// statistics (h = (n-1)p + 1).
std::vector<double> quantile_bins(std::span<const double> values, int q);

/// 1-based bin of `value`: the smallest i >= 1 with value <= b_i, advanced to
/// the last bin of the run when that boundary value is duplicated, so repeated
/// data values occupy a degenerate (v, v] range and are reproduced exactly by
/// the inverse mapping.
int assign_quantile(double value, std::span<const double> boundaries);

/// Forward mapping: bin every observation and count consecutive transitions.
QuantileGraph map_qg(const TimeSeries& series, int q);

std::string to_json_string(const QuantileGraph& graph);
QuantileGraph qg_from_json_string(const std::string& text);

}  // namespace qgsynth
