#include "qgsynth/graph_features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <unordered_set>

#include "qgsynth/errors.hpp"

namespace qgsynth {

namespace {

struct Adjacency {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> nbr;  // undirected, no self-loops
    std::vector<double> self_loop;                         // symmetrized self-loop weight

    explicit Adjacency(const WeightedGraph& g) : n(g.n), nbr(g.n), self_loop(g.n, 0.0) {
        for (const auto& e : g.edges) {
            if (e.u == e.v) {
                // (W + W^T)/2 leaves self-loops unchanged
                self_loop[e.u] += e.weight;
                continue;
            }
            const double w = g.directed ? e.weight * 0.5 : e.weight;
            nbr[e.u].emplace_back(e.v, w);
            nbr[e.v].emplace_back(e.u, w);
        }
        if (g.directed) {
            // merge parallel (i,j)/(j,i) halves produced by (W + W^T)/2
            for (auto& lst : nbr) {
                std::sort(lst.begin(), lst.end());
                std::size_t out = 0;
                for (std::size_t i = 0; i < lst.size();) {
                    double w = 0.0;
                    std::size_t j = i;
                    while (j < lst.size() && lst[j].first == lst[i].first) w += lst[j++].second;
                    lst[out++] = {lst[i].first, w};
                    i = j;
                }
                lst.resize(out);
            }
        }
    }
};

double mean_shortest_path(const Adjacency& adj, std::size_t& disconnected_pairs) {
    const int n = adj.n;
    double total = 0.0;
    std::size_t pairs = 0;
    disconnected_pairs = 0;

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n);
    using Item = std::pair<double, int>;
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), inf);
        dist[s] = 0.0;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        heap.emplace(0.0, s);
        while (!heap.empty()) {
            const auto [d, u] = heap.top();
            heap.pop();
            if (d > dist[u]) continue;
            for (const auto& [v, w] : adj.nbr[u]) {
                const double nd = d + 1.0 / w;
                if (nd < dist[v]) {
                    dist[v] = nd;
                    heap.emplace(nd, v);
                }
            }
        }
        for (int t = s + 1; t < n; ++t) {
            if (dist[t] == inf) {
                ++disconnected_pairs;
            } else {
                total += dist[t];
                ++pairs;
            }
        }
    }
    return pairs > 0 ? total / double(pairs) : 0.0;
}

double mean_local_clustering(const Adjacency& adj) {
    const int n = adj.n;
    std::vector<std::unordered_set<int>> sets(n);
    for (int u = 0; u < n; ++u)
        for (const auto& [v, w] : adj.nbr[u]) sets[u].insert(v);

    double total = 0.0;
    for (int u = 0; u < n; ++u) {
        const auto k = sets[u].size();
        if (k < 2) continue;
        std::size_t links = 0;
        std::vector<int> ns(sets[u].begin(), sets[u].end());
        for (std::size_t a = 0; a < ns.size(); ++a)
            for (std::size_t b = a + 1; b < ns.size(); ++b)
                if (sets[ns[a]].count(ns[b])) ++links;
        total += 2.0 * double(links) / (double(k) * double(k - 1));
    }
    return total / double(n);
}

struct LouvainGraph {
    std::vector<std::vector<std::pair<int, double>>> nbr;
    std::vector<double> self_weight;  // self-loop weight, counted once
    double total_weight = 0.0;        // m: edges once + self-loops once
};

// One level of greedy local moves in natural node order until stable.
std::vector<int> louvain_level(const LouvainGraph& g) {
    const int n = int(g.nbr.size());
    const double two_m = 2.0 * g.total_weight;
    std::vector<int> comm(n);
    std::vector<double> strength(n, 0.0);  // degree incl. self-loops twice
    std::vector<double> comm_tot(n, 0.0);
    for (int u = 0; u < n; ++u) {
        comm[u] = u;
        strength[u] = 2.0 * g.self_weight[u];
        for (const auto& [v, w] : g.nbr[u]) strength[u] += w;
        comm_tot[u] = strength[u];
    }

    bool moved = true;
    std::vector<double> to_comm(n, 0.0);
    while (moved) {
        moved = false;
        for (int u = 0; u < n; ++u) {
            std::vector<int> touched;
            for (const auto& [v, w] : g.nbr[u]) {
                if (to_comm[comm[v]] == 0.0) touched.push_back(comm[v]);
                to_comm[comm[v]] += w;
            }
            const int old = comm[u];
            comm_tot[old] -= strength[u];

            // candidates in ascending order; ties keep the current community
            std::sort(touched.begin(), touched.end());
            int best = old;
            double best_gain = to_comm[old] - comm_tot[old] * strength[u] / two_m;
            for (int c : touched) {
                if (c == old) continue;
                const double gain = to_comm[c] - comm_tot[c] * strength[u] / two_m;
                if (gain > best_gain + 1e-12) {
                    best = c;
                    best_gain = gain;
                }
            }
            comm_tot[best] += strength[u];
            if (best != old) {
                comm[u] = best;
                moved = true;
            }
            for (int c : touched) to_comm[c] = 0.0;
            to_comm[old] = 0.0;
        }
    }
    return comm;
}

LouvainGraph aggregate(const LouvainGraph& g, const std::vector<int>& comm, int n_comm) {
    LouvainGraph out;
    out.nbr.resize(n_comm);
    out.self_weight.assign(n_comm, 0.0);
    out.total_weight = g.total_weight;
    std::vector<std::map<int, double>> acc(n_comm);
    for (std::size_t u = 0; u < g.nbr.size(); ++u) {
        out.self_weight[comm[u]] += g.self_weight[u];
        for (const auto& [v, w] : g.nbr[u]) {
            if (v < int(u)) continue;  // each undirected edge once
            const int cu = comm[u], cv = comm[v];
            if (cu == cv)
                out.self_weight[cu] += w;
            else
                acc[cu][cv] += w;
        }
    }
    for (int c = 0; c < n_comm; ++c)
        for (const auto& [d, w] : acc[c]) {
            out.nbr[c].emplace_back(d, w);
            out.nbr[d].emplace_back(c, w);
        }
    return out;
}

void compact_labels(std::vector<int>& labels) {
    std::vector<int> remap(labels.size(), -1);
    int next = 0;
    for (int& l : labels) {
        if (remap[l] < 0) remap[l] = next++;
        l = remap[l];
    }
}

std::vector<int> louvain_communities(const Adjacency& adj) {
    LouvainGraph g;
    g.nbr = adj.nbr;
    g.self_weight = adj.self_loop;
    for (std::size_t u = 0; u < g.nbr.size(); ++u) {
        g.total_weight += g.self_weight[u];
        for (const auto& [v, w] : g.nbr[u])
            if (v > int(u)) g.total_weight += w;
    }
    const int n = adj.n;
    std::vector<int> assignment(n);
    for (int i = 0; i < n; ++i) assignment[i] = i;
    if (g.total_weight <= 0.0) return assignment;

    while (true) {
        std::vector<int> level = louvain_level(g);
        compact_labels(level);
        const int n_comm = 1 + *std::max_element(level.begin(), level.end());
        for (int i = 0; i < n; ++i) assignment[i] = level[assignment[i]];
        if (n_comm == int(g.nbr.size())) break;
        g = aggregate(g, level, n_comm);
    }
    return assignment;
}

}  // namespace

WeightedGraph qg_as_graph(const QuantileGraph& g) {
    WeightedGraph out;
    out.n = g.q;
    out.directed = true;
    for (int i = 0; i < g.q; ++i)
        for (int j = 0; j < g.q; ++j)
            if (g.w[i][j] > 0.0) out.edges.push_back({i, j, g.w[i][j]});
    return out;
}

double modularity(const WeightedGraph& g, const std::vector<int>& community) {
    if (community.size() != static_cast<std::size_t>(g.n))
        throw LengthMismatch("community labels must cover every node");
    Adjacency adj(g);
    double m = 0.0;
    std::vector<double> strength(g.n, 0.0);
    for (int u = 0; u < g.n; ++u) {
        strength[u] = 2.0 * adj.self_loop[u];
        m += adj.self_loop[u];
        for (const auto& [v, w] : adj.nbr[u]) {
            strength[u] += w;
            if (v > u) m += w;
        }
    }
    if (m <= 0.0) return 0.0;

    const int n_comm = 1 + *std::max_element(community.begin(), community.end());
    std::vector<double> internal(n_comm, 0.0), total(n_comm, 0.0);
    for (int u = 0; u < g.n; ++u) {
        total[community[u]] += strength[u];
        internal[community[u]] += 2.0 * adj.self_loop[u];
        for (const auto& [v, w] : adj.nbr[u])
            if (community[v] == community[u]) internal[community[u]] += w;
    }
    double q = 0.0;
    for (int c = 0; c < n_comm; ++c)
        q += internal[c] / (2.0 * m) - (total[c] / (2.0 * m)) * (total[c] / (2.0 * m));
    return q;
}

GraphFeatures graph_features(const WeightedGraph& g, std::uint64_t community_seed) {
    (void)community_seed;  // moves run in natural node order; kept for API stability
    if (g.n == 0) throw EmptyGraph();

    GraphFeatures f;
    if (g.directed) {
        std::vector<int> out_degree(g.n, 0);
        for (const auto& e : g.edges) ++out_degree[e.u];
        double acc = 0.0;
        for (int d : out_degree) acc += double(d);
        f.avg_degree = acc / double(g.n);
    } else {
        std::vector<double> strength(g.n, 0.0);
        for (const auto& e : g.edges) {
            strength[e.u] += e.weight;
            if (e.v != e.u) strength[e.v] += e.weight;
        }
        double acc = 0.0;
        for (double s : strength) acc += s;
        f.avg_degree = acc / double(g.n);
    }

    Adjacency adj(g);
    f.avg_path = mean_shortest_path(adj, f.disconnected_pairs);
    f.clustering = mean_local_clustering(adj);

    const std::vector<int> comm = louvain_communities(adj);
    f.communities = double(1 + *std::max_element(comm.begin(), comm.end()));
    f.modularity = modularity(g, comm);
    return f;
}

const std::vector<std::string>& netf_feature_names() {
    static const std::vector<std::string> names = {
        "wnvg_avg_degree", "wnvg_avg_path", "wnvg_clustering", "wnvg_communities",
        "wnvg_modularity", "whvg_avg_degree", "whvg_avg_path", "whvg_clustering",
        "whvg_communities", "whvg_modularity", "qg_avg_degree", "qg_avg_path",
        "qg_clustering", "qg_communities", "qg_modularity",
    };
    return names;
}

FeatureVector netf_vector(const TimeSeries& series, int q) {
    if (!series.complete()) throw MissingValues("netf_vector requires a complete series");
    if (series.size() < 2) throw TooShort();
    const auto [mn, mx] =
        std::minmax_element(series.values.begin(), series.values.end());
    if (*mn == *mx) throw ConstantSeries("netf_vector: degenerate support");

    const GraphFeatures a = graph_features(nvg(series));
    const GraphFeatures b = graph_features(hvg(series));
    const GraphFeatures c = graph_features(qg_as_graph(map_qg(series, q)));

    FeatureVector f;
    f.names = netf_feature_names();
    f.values = {a.avg_degree, a.avg_path, a.clustering, a.communities, a.modularity,
                b.avg_degree, b.avg_path, b.clustering, b.communities, b.modularity,
                c.avg_degree, c.avg_path, c.clustering, c.communities, c.modularity};
    return f;
}

}  // namespace qgsynth
