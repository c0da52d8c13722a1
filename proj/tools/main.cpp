#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "commands.hpp"
#include "qgsynth/errors.hpp"

namespace {

int dispatch(const std::function<void()>& fn) {
    try {
        fn();
        return 0;
    } catch (const qgsynth::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantile-graph synthetic time series toolkit"};
    app.set_version_flag("--version", QGSYNTH_VERSION);
    app.set_config("--config", "", "plain-text key=value configuration file");
    app.require_subcommand(1);

    using namespace qgsynth::cli;

    SimulateOptions sim;
    auto* c_sim = app.add_subcommand("simulate", "generate the model corpus");
    c_sim->add_option("--models", sim.models, "comma-separated model labels or 'all'");
    c_sim->add_option("--n", sim.n, "series per model")->check(CLI::PositiveNumber);
    c_sim->add_option("--length", sim.length, "series length")->check(CLI::PositiveNumber);
    c_sim->add_option("--seed", sim.seed, "master seed");
    c_sim->add_option("--burn-in", sim.burn_in, "discarded initial points");
    c_sim->add_option("--out", sim.out, "output directory")->envname("QGSYNTH_OUT")->required();

    SynthOptions synth;
    auto* c_synth = app.add_subcommand("synth", "synthesize series from quantile graphs");
    c_synth->add_option("--input", synth.input, "series CSV or directory")->required();
    c_synth->add_option("--quantiles", synth.quantiles, "number of quantile bins")
        ->check(CLI::PositiveNumber);
    c_synth->add_option("--replicas", synth.replicas, "replicas per input")
        ->check(CLI::PositiveNumber);
    c_synth->add_option("--seed", synth.seed, "master seed");
    c_synth->add_option("--length", synth.length, "output length (0: same as input)");
    c_synth->add_flag("--integer", synth.round_to_integer, "round synthetic values to integers");
    c_synth->add_option("--out", synth.out, "output directory")->envname("QGSYNTH_OUT")->required();

    FeaturesOptions feat;
    auto* c_feat = app.add_subcommand("features", "extract feature vectors from a corpus");
    c_feat->add_option("--input", feat.input, "directory of series CSVs")->required();
    c_feat->add_option("--set", feat.set, "stats | netf | both");
    c_feat->add_option("--quantiles", feat.quantiles, "bins for the quantile graph features")
        ->check(CLI::PositiveNumber);
    c_feat->add_option("--threads", feat.threads, "worker threads (0: hardware)");
    c_feat->add_option("--out", feat.out, "output directory")->envname("QGSYNTH_OUT")->required();

    ClusterOptions clus;
    auto* c_clus = app.add_subcommand("cluster", "repeated k-means over a feature CSV");
    c_clus->add_option("--features", clus.features, "feature CSV path")->required();
    c_clus->add_option("--k", clus.k, "fixed k (0: scan the range)");
    c_clus->add_option("--k-min", clus.k_min, "scan lower bound");
    c_clus->add_option("--k-max", clus.k_max, "scan upper bound");
    c_clus->add_option("--repeats", clus.repeats, "k-means repeats per k")
        ->check(CLI::PositiveNumber);
    c_clus->add_option("--seed", clus.seed, "master seed");
    c_clus->add_option("--out", clus.out, "output directory")->envname("QGSYNTH_OUT")->required();

    ImputeOptions imp;
    auto* c_imp = app.add_subcommand("impute", "fill gaps with quantile-graph walks");
    c_imp->add_option("--input", imp.input, "series CSV with missing values")->required();
    c_imp->add_option("--quantiles", imp.quantiles, "number of quantile bins")
        ->check(CLI::PositiveNumber);
    c_imp->add_option("--seed", imp.seed, "seed");
    c_imp->add_option("--out", imp.out, "output CSV path")->required();

    AggregateOptions agg;
    auto* c_agg = app.add_subcommand("aggregate", "aggregate raw steps into windows");
    c_agg->add_option("--input", agg.input, "series CSV")->required();
    c_agg->add_option("--window", agg.window, "raw steps per window")
        ->check(CLI::PositiveNumber)
        ->required();
    c_agg->add_option("--method", agg.method, "mean | sum");
    c_agg->add_option("--out", agg.out, "output CSV path")->required();

    PlotOptions plot;
    auto* c_plot = app.add_subcommand("plot", "emit static SVG plots");
    c_plot->add_option("--features", plot.features, "feature CSV for boxplots and the biplot");
    c_plot->add_option("--series", plot.series, "directory of paired series CSVs");
    c_plot->add_option("--max-series", plot.max_series, "overlay plot budget");
    c_plot->add_option("--out", plot.out, "output directory")->envname("QGSYNTH_OUT")->required();

    PipelineOptions pipe;
    auto* c_pipe = app.add_subcommand("pipeline", "simulate -> synth -> features -> cluster");
    c_pipe->add_option("--models", pipe.models, "comma-separated model labels or 'all'");
    c_pipe->add_option("--n", pipe.n, "series per model")->check(CLI::PositiveNumber);
    c_pipe->add_option("--length", pipe.length, "series length")->check(CLI::PositiveNumber);
    c_pipe->add_option("--quantiles", pipe.quantiles, "number of quantile bins")
        ->check(CLI::PositiveNumber);
    c_pipe->add_option("--replicas", pipe.replicas, "synthetic replicas per original")
        ->check(CLI::PositiveNumber);
    c_pipe->add_option("--seed", pipe.seed, "master seed");
    c_pipe->add_option("--sets", pipe.sets, "feature sets to extract: stats | netf | both");
    c_pipe->add_option("--cluster-set", pipe.cluster_set, "feature set to cluster on");
    c_pipe->add_option("--k-min", pipe.k_min, "cluster scan lower bound");
    c_pipe->add_option("--k-max", pipe.k_max, "cluster scan upper bound");
    c_pipe->add_option("--repeats", pipe.repeats, "k-means repeats per k")
        ->check(CLI::PositiveNumber);
    c_pipe->add_option("--threads", pipe.threads, "worker threads (0: hardware)");
    c_pipe->add_option("--out", pipe.out, "output directory")->envname("QGSYNTH_OUT")->required();

    CLI11_PARSE(app, argc, argv);

    if (c_sim->parsed()) return dispatch([&] { run_simulate(sim); });
    if (c_synth->parsed()) return dispatch([&] { run_synth(synth); });
    if (c_feat->parsed()) return dispatch([&] { run_features(feat); });
    if (c_clus->parsed()) return dispatch([&] { run_cluster(clus); });
    if (c_imp->parsed()) return dispatch([&] { run_impute(imp); });
    if (c_agg->parsed()) return dispatch([&] { run_aggregate(agg); });
    if (c_plot->parsed()) return dispatch([&] { run_plot(plot); });
    if (c_pipe->parsed()) return dispatch([&] { run_pipeline(pipe); });
    return 0;
}
