#pragma once

#include <cstdint>
#include <vector>

#include "qgsynth/quantile_graph.hpp"
#include "qgsynth/stat_features.hpp"
#include "qgsynth/visibility.hpp"

namespace qgsynth {

/// The five topological features of one graph.
///
/// avg_degree: mean weighted degree (sum of incident edge weights); for a
/// directed quantile graph, the mean out-degree (count of nonzero out-edges —
/// out-strength is identically one for a row-stochastic matrix).
/// avg_path: mean shortest-path length over connected pairs, edge distance
/// 1/weight. clustering: mean local clustering coefficient on the unweighted
/// undirected skeleton. communities/modularity: greedy modularity maximization
/// (Louvain) on the undirected weighted skeleton, deterministic given the seed
/// and the natural node order.
struct GraphFeatures {
    double avg_degree = 0.0;
    double avg_path = 0.0;
    double clustering = 0.0;
    double communities = 0.0;
    double modularity = 0.0;
    std::size_t disconnected_pairs = 0;  // pairs excluded from avg_path
};

GraphFeatures graph_features(const WeightedGraph& g, std::uint64_t community_seed = 0);

/// The quantile graph viewed as a directed weighted graph: an edge (i, j,
/// W[i][j]) for every positive transition probability, self-loops included.
WeightedGraph qg_as_graph(const QuantileGraph& g);

/// Modularity of a node partition on the undirected weighted graph.
double modularity(const WeightedGraph& g, const std::vector<int>& community);

/// The 15-feature NetF vector: five features for each of WNVG, WHVG and the
/// quantile graph, named `<graph>_<feature>`.
FeatureVector netf_vector(const TimeSeries& series, int q);

const std::vector<std::string>& netf_feature_names();

}  // namespace qgsynth
