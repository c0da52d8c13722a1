#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qgsynth/series.hpp"

namespace qgsynth {

/// Named feature values; names are unique and values finite.
struct FeatureVector {
    std::vector<std::string> names;
    std::vector<double> values;

    double at(const std::string& name) const;
};

/// The fixed 12-feature statistical set, in emission order.
const std::vector<std::string>& stat_feature_names();

/// Centered moving average with odd window 2*floor(T/20)+1; the window shrinks
/// one-sidedly at the edges. Returns (trend, remainder).
std::pair<TimeSeries, TimeSeries> trend_decompose(const TimeSeries& series);

/// max(0, 1 - Var(remainder)/Var(series)), in [0, 1].
double trend_strength(const TimeSeries& series);

/// Coefficients of the trend component on the orthonormalized {t, t^2} basis
/// (Gram-Schmidt over the discrete index, unit norm).
std::pair<double, double> linearity_curvature(const TimeSeries& series);

/// Shannon entropy of the normalized periodogram over Fourier frequencies
/// (DC excluded), divided by log of the frequency count; in [0, 1].
double spectral_entropy(const TimeSeries& series);

/// The 12-feature vector {trend, linearity, curvature, entropy, x_acf1,
/// x_acf10, diff1_acf1, diff1_acf10, diff2_acf1, diff2_acf10, e_acf1,
/// e_acf10}; *_acf10 is the sum of the squared first ten autocorrelations.
FeatureVector stat_features(const TimeSeries& series);

/// Mean and standard deviation of paired feature differences
/// (synthetic - original), grouped by model label.
struct PairedDiffTable {
    std::vector<std::string> features;
    std::vector<std::string> models;          // first-appearance order
    std::vector<std::vector<double>> mean;    // models x features
    std::vector<std::vector<double>> sd;

    std::size_t model_index(const std::string& model) const;
};

PairedDiffTable paired_diff_table(const std::vector<FeatureVector>& originals,
                                  const std::vector<FeatureVector>& synthetics,
                                  const std::vector<std::string>& labels);

}  // namespace qgsynth
