#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qgsynth {

/// Rectangular feature matrix with per-row series id, model and origin labels.
struct FeatureMatrix {
    std::vector<std::string> row_ids;
    std::vector<std::string> row_models;
    std::vector<std::string> row_origins;  // "original" or "synthetic"
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  // rows x columns
    std::vector<bool> zero_variance;        // set by standardize()

    std::size_t rows() const { return data.size(); }
    std::size_t cols() const { return columns.size(); }
    void check_rectangular() const;

    /// Integer-coded model labels in first-appearance order.
    std::vector<int> model_labels() const;
};

/// Column-wise z-scoring (sd with denominator n-1); zero-variance columns map
/// to all-zeros and are flagged.
FeatureMatrix standardize(const FeatureMatrix& m);

struct PcaResult {
    std::vector<std::vector<double>> loadings;  // columns x components, orthonormal
    std::vector<std::vector<double>> scores;    // rows x components
    std::vector<double> explained_ratio;        // nonincreasing, sums to <= 1
};

/// Principal components of the sample covariance. Sign convention: the
/// largest-magnitude loading of every component is positive.
PcaResult pca(const FeatureMatrix& m, int components = 2);

struct KMeansResult {
    std::vector<int> best_labels;
    double best_wcss = 0.0;
    std::vector<std::vector<int>> repeat_labels;
};

/// Lloyd iterations from k-means++ seeds; one seeding per repeat (derived
/// stream per repeat); best = lowest within-cluster sum of squares. Empty
/// clusters are re-seeded from the point farthest from its centroid.
KMeansResult kmeans(const FeatureMatrix& m, int k, int repeats, std::uint64_t seed);

/// Mean silhouette score with Euclidean distances; singletons score 0, and
/// s(i) = 0 when both cohesion and separation vanish.
double silhouette(const FeatureMatrix& m, const std::vector<int>& labels);

/// Pair-counting adjusted Rand index.
double ari(const std::vector<int>& a, const std::vector<int>& b);

/// Mutual information normalized by the arithmetic mean of the label
/// entropies; 0/0 yields 0.
double nmi(const std::vector<int>& a, const std::vector<int>& b);

struct ClusterReport {
    std::vector<int> ks;
    std::vector<double> mean_as, sd_as;
    std::vector<double> mean_ari, sd_ari;
    std::vector<double> mean_nmi, sd_nmi;
    int k_star = 0;
};

/// argmax_k (mean_AS - 0.5 * sd_AS), ties broken toward the smaller k.
int select_k(const ClusterReport& report);

/// Repeated k-means over k in [k_min, k_max]; per-repeat silhouette plus
/// ARI/NMI against `truth`; fills the per-k means/sds and k_star.
ClusterReport cluster_scan(const FeatureMatrix& standardized, const std::vector<int>& truth,
                           int k_min, int k_max, int repeats, std::uint64_t seed);

std::string cluster_report_json(const ClusterReport& report);
std::string cluster_report_csv(const ClusterReport& report);

/// Feature CSV: header `series_id,model,origin,<feature...>`.
void write_feature_csv(const std::filesystem::path& path, const FeatureMatrix& m);
FeatureMatrix read_feature_csv(const std::filesystem::path& path);

}  // namespace qgsynth
