#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qgsynth::cli {

struct SimulateOptions {
    std::string models = "all";  // comma-separated corpus labels or "all"
    int n = 100;
    std::size_t length = 10000;
    std::uint64_t seed = 1;
    std::size_t burn_in = 1000;
    std::string out;
};

struct SynthOptions {
    std::string input;  // series CSV or a directory of them
    int quantiles = 50;
    std::size_t replicas = 1;
    std::uint64_t seed = 1;
    std::size_t length = 0;  // 0: same as the input series
    bool round_to_integer = false;
    std::string out;
};

struct FeaturesOptions {
    std::string input;       // directory of series CSVs
    std::string set = "stats";  // stats | netf | both
    int quantiles = 50;
    unsigned threads = 0;
    std::string out;
};

struct ClusterOptions {
    std::string features;  // feature CSV path
    int k = 0;             // 0: scan [k_min, k_max]
    int k_min = 2;
    int k_max = 21;
    int repeats = 100;
    std::uint64_t seed = 1;
    std::string out;
};

struct ImputeOptions {
    std::string input;
    int quantiles = 50;
    std::uint64_t seed = 1;
    std::string out;
};

struct AggregateOptions {
    std::string input;
    std::size_t window = 0;
    std::string method = "mean";
    std::string out;
};

struct PlotOptions {
    std::string features;  // feature CSV (boxplots + PCA biplot)
    std::string series;    // directory of paired series CSVs (overlays + ACF)
    std::size_t max_series = 5;
    std::string out;
};

struct PipelineOptions {
    std::string models = "all";
    int n = 5;
    std::size_t length = 1000;
    int quantiles = 50;
    std::size_t replicas = 1;
    std::uint64_t seed = 1;
    std::string sets = "both";        // feature sets to extract
    std::string cluster_set = "stats";
    int k_min = 2;
    int k_max = 21;
    int repeats = 100;
    unsigned threads = 0;
    std::string out;
};

void run_simulate(const SimulateOptions& opt);
void run_synth(const SynthOptions& opt);
void run_features(const FeaturesOptions& opt);
void run_cluster(const ClusterOptions& opt);
void run_impute(const ImputeOptions& opt);
void run_aggregate(const AggregateOptions& opt);
void run_plot(const PlotOptions& opt);
void run_pipeline(const PipelineOptions& opt);

}  // namespace qgsynth::cli
