#pragma once

#include <vector>

#include "qgsynth/series.hpp"

namespace qgsynth {

struct WeightedEdge {
    int u = 0;
    int v = 0;
    double weight = 0.0;
};

/// Node set 0..n-1 plus a weighted edge list; visibility graphs are undirected
/// and self-loop free, the quantile graph view is directed.
struct WeightedGraph {
    int n = 0;
    std::vector<WeightedEdge> edges;
    bool directed = false;
};

/// Weighted natural visibility graph: nodes are time points; (a, b) is an edge
/// iff every intermediate point lies strictly below the segment between them;
/// weight = 1 / euclidean distance in the (t, y) plane. Divide-and-conquer
/// build, equivalent to the O(T^2) definition.
WeightedGraph nvg(const TimeSeries& series);

/// Weighted horizontal visibility graph: (a, b) is an edge iff every
/// intermediate value is strictly below min(y_a, y_b); same weight formula.
WeightedGraph hvg(const TimeSeries& series);

}  // namespace qgsynth
