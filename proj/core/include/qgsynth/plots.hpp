#pragma once

#include <string>
#include <vector>

#include "qgsynth/eval.hpp"
#include "qgsynth/series.hpp"

namespace qgsynth {

/// Static SVG builders used by the plot subcommand. Output is deterministic
/// for identical inputs.

/// One box (median, quartiles, 1.5 IQR whiskers, outlier dots) per group.
std::string svg_boxplot(const std::string& title, const std::vector<std::string>& groups,
                        const std::vector<std::vector<double>>& samples);

/// Original and synthetic series overlaid; at most `max_points` leading points.
std::string svg_series_overlay(const std::string& title, const TimeSeries& original,
                               const TimeSeries& synthetic, std::size_t max_points = 1000);

/// Lag-by-lag autocorrelation stems for both series.
std::string svg_acf_overlay(const std::string& title, const std::vector<double>& acf_original,
                            const std::vector<double>& acf_synthetic);

/// PC1/PC2 scatter colored by model, marker by origin, with feature-loading
/// arrows and explained-variance percentages in the axis labels.
std::string svg_pca_biplot(const std::string& title, const FeatureMatrix& standardized,
                           const PcaResult& pca_result);

}  // namespace qgsynth
