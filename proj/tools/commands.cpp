#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qgsynth/csv.hpp"
#include "qgsynth/errors.hpp"
#include "qgsynth/eval.hpp"
#include "qgsynth/graph_features.hpp"
#include "qgsynth/parallel.hpp"
#include "qgsynth/plots.hpp"
#include "qgsynth/quantile_graph.hpp"
#include "qgsynth/rng.hpp"
#include "qgsynth/series.hpp"
#include "qgsynth/simulators.hpp"
#include "qgsynth/stat_features.hpp"
#include "qgsynth/synthesis.hpp"

namespace fs = std::filesystem;

namespace qgsynth::cli {

namespace {

// ---------------------------------------------------------------- manifest

std::uint64_t fnv1a64_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot hash " + path.string());
    std::uint64_t h = 0xCBF29CE484222325ULL;
    char buf[8192];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001B3ULL;
        }
        if (!in) break;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

class Manifest {
  public:
    Manifest(std::string command, std::uint64_t seed) : command_(std::move(command)), seed_(seed) {}

    void set_config(nlohmann::ordered_json config) { config_ = std::move(config); }

    void add_file(const fs::path& root, const fs::path& file) {
        files_.push_back(fs::relative(file, root).generic_string());
    }

    void write(const fs::path& root) {
        std::sort(files_.begin(), files_.end());
        nlohmann::ordered_json j;
        j["tool"] = "qgsynth";
        j["version"] = QGSYNTH_VERSION;
        j["command"] = command_;
        j["seed"] = seed_;
        j["config"] = config_;
        j["files"] = nlohmann::ordered_json::array();
        for (const auto& f : files_) {
            nlohmann::ordered_json entry;
            entry["path"] = f;
            entry["fnv1a64"] = hex64(fnv1a64_file(root / f));
            j["files"].push_back(entry);
        }
        std::ofstream out(root / "manifest.json");
        if (!out) throw IoError("cannot write manifest in " + root.string());
        out << j.dump(2) << '\n';
    }

  private:
    std::string command_;
    std::uint64_t seed_;
    nlohmann::ordered_json config_;
    std::vector<std::string> files_;
};

// ------------------------------------------------------------- corpus names

struct SeriesName {
    std::string id;      // file stem
    std::string model;   // label up to the trailing _<index>
    std::string origin;  // original | synthetic
};

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c);
    });
}

SeriesName parse_stem(const std::string& stem) {
    SeriesName name;
    name.id = stem;
    std::string base = stem;
    const auto synth_pos = base.find("_synth_");
    if (synth_pos != std::string::npos) {
        name.origin = "synthetic";
        base = base.substr(0, synth_pos);
    } else {
        name.origin = "original";
    }
    const auto us = base.rfind('_');
    if (us != std::string::npos && all_digits(base.substr(us + 1)))
        name.model = base.substr(0, us);
    else
        name.model = base;
    return name;
}

std::vector<fs::path> list_csvs(const fs::path& dir) {
    if (!fs::exists(dir)) throw IoError("no such path: " + dir.string());
    std::vector<fs::path> files;
    if (fs::is_regular_file(dir)) {
        files.push_back(dir);
        return files;
    }
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no .csv files under " + dir.string());
    return files;
}

std::vector<std::pair<std::string, ModelSpec>> selected_models(const std::string& spec_str,
                                                               std::size_t burn_in) {
    auto all = table_models();
    for (auto& [label, spec] : all) spec.burn_in = burn_in;
    if (spec_str == "all") return all;
    std::vector<std::pair<std::string, ModelSpec>> chosen;
    std::stringstream ss(spec_str);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        bool found = false;
        for (const auto& [label, spec] : all)
            if (label == token) {
                chosen.emplace_back(label, spec);
                found = true;
                break;
            }
        if (!found) throw InvalidSpec("unknown corpus model: " + token);
    }
    if (chosen.empty()) throw InvalidSpec("no models selected");
    return chosen;
}

fs::path require_out_dir(const std::string& out) {
    if (out.empty()) throw Error("--out is required");
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + out);
    return dir;
}

std::string index_name(const std::string& model, int index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03d", index);
    return model + "_" + buf;
}

// simulate the corpus in a deterministic order; series seed = derive(seed, g)
std::vector<fs::path> write_corpus(const fs::path& dir,
                                   const std::vector<std::pair<std::string, ModelSpec>>& models,
                                   int n, std::size_t length, std::uint64_t seed,
                                   nlohmann::ordered_json* spec_log) {
    std::vector<fs::path> written;
    std::uint64_t g = 0;
    for (const auto& [label, spec] : models) {
        for (int i = 1; i <= n; ++i, ++g) {
            const std::uint64_t series_seed = Rng::derive(seed, g);
            const TimeSeries y = simulate(spec, length, series_seed);
            const fs::path file = dir / (index_name(label, i) + ".csv");
            write_series_csv(file, y);
            written.push_back(file);
            if (spec_log) {
                nlohmann::ordered_json entry;
                entry["series"] = file.stem().string();
                entry["model"] = label;
                entry["kind"] = kind_name(spec.kind);
                entry["params"] = spec.params;
                entry["burn_in"] = spec.burn_in;
                entry["length"] = length;
                entry["seed"] = series_seed;
                spec_log->push_back(entry);
            }
        }
    }
    return written;
}

FeatureMatrix compute_features(const std::vector<fs::path>& files, const std::string& set,
                               int quantiles, unsigned threads) {
    const auto& names = set == "stats" ? stat_feature_names() : netf_feature_names();
    FeatureMatrix m;
    m.columns = names;
    m.row_ids.resize(files.size());
    m.row_models.resize(files.size());
    m.row_origins.resize(files.size());
    m.data.resize(files.size());

    parallel_for(files.size(), [&](std::size_t i) {
        const TimeSeries y = read_series_csv(files[i]);
        const SeriesName name = parse_stem(files[i].stem().string());
        const FeatureVector f =
            set == "stats" ? stat_features(y) : netf_vector(y, quantiles);
        m.row_ids[i] = name.id;
        m.row_models[i] = name.model;
        m.row_origins[i] = name.origin;
        m.data[i] = f.values;
    }, threads);
    return m;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

ClusterReport cluster_features(const FeatureMatrix& m, int k, int k_min, int k_max, int repeats,
                               std::uint64_t seed) {
    const FeatureMatrix std_m = standardize(m);
    const std::vector<int> truth = std_m.model_labels();
    const int lo = k > 0 ? k : k_min;
    const int hi = k > 0 ? k : k_max;
    return cluster_scan(std_m, truth, lo, hi, repeats, seed);
}

}  // namespace

void run_simulate(const SimulateOptions& opt) {
    const auto models = selected_models(opt.models, opt.burn_in);
    const fs::path dir = require_out_dir(opt.out);

    Manifest manifest("simulate", opt.seed);
    nlohmann::ordered_json config;
    config["models"] = opt.models;
    config["n"] = opt.n;
    config["length"] = opt.length;
    config["burn_in"] = opt.burn_in;
    nlohmann::ordered_json specs = nlohmann::ordered_json::array();
    const auto files = write_corpus(dir, models, opt.n, opt.length, opt.seed, &specs);
    config["series"] = specs;
    manifest.set_config(std::move(config));
    for (const auto& f : files) manifest.add_file(dir, f);
    manifest.write(dir);
    std::cout << "wrote " << files.size() << " series to " << dir.string() << '\n';
}

void run_synth(const SynthOptions& opt) {
    const auto inputs = list_csvs(opt.input);
    const fs::path dir = require_out_dir(opt.out);

    Manifest manifest("synth", opt.seed);
    nlohmann::ordered_json config;
    config["input"] = opt.input;
    config["quantiles"] = opt.quantiles;
    config["replicas"] = opt.replicas;
    config["length"] = opt.length;
    config["integer"] = opt.round_to_integer;
    manifest.set_config(std::move(config));

    std::size_t written = 0;
    for (std::size_t j = 0; j < inputs.size(); ++j) {
        const TimeSeries y = read_series_csv(inputs[j]);
        SynthesisRequest request;
        request.graph = map_qg(y, opt.quantiles);
        request.length = opt.length > 0 ? opt.length : y.size();
        request.seed = Rng::derive(opt.seed, j);
        request.replicas = opt.replicas;
        const auto replicas = synthesize_many(request);
        for (std::size_t r = 0; r < replicas.size(); ++r) {
            TimeSeries s = replicas[r];
            if (opt.round_to_integer)
                for (double& v : s.values) v = std::nearbyint(v);
            const fs::path file =
                dir / (inputs[j].stem().string() + "_synth_" + std::to_string(r + 1) + ".csv");
            write_series_csv(file, s);
            manifest.add_file(dir, file);
            ++written;
        }
    }
    manifest.write(dir);
    std::cout << "wrote " << written << " synthetic series to " << dir.string() << '\n';
}

void run_features(const FeaturesOptions& opt) {
    if (opt.set != "stats" && opt.set != "netf" && opt.set != "both")
        throw Error("--set must be stats, netf or both");
    const auto files = list_csvs(opt.input);
    const fs::path dir = require_out_dir(opt.out);

    Manifest manifest("features", 0);
    nlohmann::ordered_json config;
    config["input"] = opt.input;
    config["set"] = opt.set;
    config["quantiles"] = opt.quantiles;
    manifest.set_config(std::move(config));

    for (const std::string set : {std::string("stats"), std::string("netf")}) {
        if (opt.set != "both" && opt.set != set) continue;
        const FeatureMatrix m = compute_features(files, set, opt.quantiles, opt.threads);
        const fs::path file = dir / ("features_" + set + ".csv");
        write_feature_csv(file, m);
        manifest.add_file(dir, file);
        std::cout << "wrote " << file.string() << " (" << m.rows() << " rows)\n";
    }
    manifest.write(dir);
}

void run_cluster(const ClusterOptions& opt) {
    const FeatureMatrix m = read_feature_csv(opt.features);
    const fs::path dir = require_out_dir(opt.out);

    const ClusterReport report =
        cluster_features(m, opt.k, opt.k_min, opt.k_max, opt.repeats, opt.seed);

    Manifest manifest("cluster", opt.seed);
    nlohmann::ordered_json config;
    config["features"] = opt.features;
    config["k"] = opt.k;
    config["k_min"] = opt.k_min;
    config["k_max"] = opt.k_max;
    config["repeats"] = opt.repeats;
    manifest.set_config(std::move(config));

    write_text(dir / "cluster_report.json", cluster_report_json(report));
    write_text(dir / "cluster_report.csv", cluster_report_csv(report));
    manifest.add_file(dir, dir / "cluster_report.json");
    manifest.add_file(dir, dir / "cluster_report.csv");
    manifest.write(dir);
    std::cout << "k* = " << report.k_star << " (report in " << dir.string() << ")\n";
}

void run_impute(const ImputeOptions& opt) {
    if (opt.out.empty()) throw Error("--out is required");
    const TimeSeries y = read_series_csv(opt.input);
    const TimeSeries filled = impute(y, opt.quantiles, opt.seed);
    write_series_csv(opt.out, filled);
    std::cout << "imputed " << (y.size() - y.observed_count()) << " of " << y.size()
              << " values\n";
}

void run_aggregate(const AggregateOptions& opt) {
    if (opt.out.empty()) throw Error("--out is required");
    if (opt.window == 0) throw Error("--window must be positive");
    const AggregateMethod method = opt.method == "sum" ? AggregateMethod::Sum
                                   : opt.method == "mean"
                                       ? AggregateMethod::Mean
                                       : throw Error("--method must be mean or sum");
    const TimeSeries y = read_series_csv(opt.input);
    write_series_csv(opt.out, aggregate(y, opt.window, method));
}

void run_plot(const PlotOptions& opt) {
    if (opt.features.empty() && opt.series.empty())
        throw Error("plot needs --features and/or --series");
    const fs::path dir = require_out_dir(opt.out);

    Manifest manifest("plot", 0);
    nlohmann::ordered_json config;
    config["features"] = opt.features;
    config["series"] = opt.series;
    manifest.set_config(std::move(config));

    if (!opt.features.empty()) {
        const FeatureMatrix m = read_feature_csv(opt.features);

        // pair synthetic rows with their originals by series id
        std::map<std::string, std::size_t> originals;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (m.row_origins[i] == "original") originals[m.row_ids[i]] = i;

        std::vector<std::string> models;
        std::map<std::string, std::vector<std::vector<double>>> diffs;  // model -> col -> samples
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (m.row_origins[i] != "synthetic") continue;
            const std::string base = m.row_ids[i].substr(0, m.row_ids[i].find("_synth_"));
            const auto it = originals.find(base);
            if (it == originals.end()) continue;
            auto& per_model = diffs[m.row_models[i]];
            if (per_model.empty()) per_model.resize(m.cols());
            if (std::find(models.begin(), models.end(), m.row_models[i]) == models.end())
                models.push_back(m.row_models[i]);
            for (std::size_t c = 0; c < m.cols(); ++c)
                per_model[c].push_back(m.data[i][c] - m.data[it->second][c]);
        }

        if (!models.empty()) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                std::vector<std::vector<double>> samples;
                for (const auto& model : models) samples.push_back(diffs[model][c]);
                const fs::path file = dir / ("box_" + m.columns[c] + ".svg");
                write_text(file, svg_boxplot(m.columns[c] + " (synthetic - original)", models,
                                             samples));
                manifest.add_file(dir, file);
            }
        }

        const FeatureMatrix std_m = standardize(m);
        const PcaResult p = pca(std_m, 2);
        const fs::path file = dir / "pca_biplot.svg";
        write_text(file, svg_pca_biplot("principal components", std_m, p));
        manifest.add_file(dir, file);
    }

    if (!opt.series.empty()) {
        const auto files = list_csvs(opt.series);
        std::map<std::string, fs::path> originals;
        std::vector<std::pair<std::string, fs::path>> synthetics;
        for (const auto& f : files) {
            const SeriesName name = parse_stem(f.stem().string());
            if (name.origin == "original")
                originals[name.id] = f;
            else
                synthetics.emplace_back(name.id, f);
        }
        std::size_t emitted = 0;
        for (const auto& [id, file] : synthetics) {
            if (emitted >= opt.max_series) break;
            const std::string base = id.substr(0, id.find("_synth_"));
            const auto it = originals.find(base);
            if (it == originals.end()) continue;
            const TimeSeries orig = read_series_csv(it->second);
            const TimeSeries synth = read_series_csv(file);
            const fs::path overlay = dir / ("series_" + id + ".svg");
            write_text(overlay, svg_series_overlay(base + ": original vs synthetic", orig, synth));
            manifest.add_file(dir, overlay);
            const std::size_t max_lag = std::min<std::size_t>(30, orig.size() - 2);
            const fs::path acf_file = dir / ("acf_" + id + ".svg");
            write_text(acf_file, svg_acf_overlay(base + ": acf", acf(orig, max_lag),
                                                 acf(synth, max_lag)));
            manifest.add_file(dir, acf_file);
            ++emitted;
        }
    }
    manifest.write(dir);
}

void run_pipeline(const PipelineOptions& opt) {
    if (opt.sets != "stats" && opt.sets != "netf" && opt.sets != "both")
        throw Error("--sets must be stats, netf or both");
    if (opt.cluster_set != "stats" && opt.cluster_set != "netf")
        throw Error("--cluster-set must be stats or netf");
    if (opt.sets != "both" && opt.cluster_set != opt.sets)
        throw Error("--cluster-set must be one of the extracted sets");

    const auto models = selected_models(opt.models, 1000);
    const fs::path root = require_out_dir(opt.out);
    const fs::path orig_dir = root / "originals";
    const fs::path synth_dir = root / "synthetic";
    const fs::path feat_dir = root / "features";
    const fs::path cluster_dir = root / "cluster";
    for (const auto& d : {orig_dir, synth_dir, feat_dir, cluster_dir}) {
        std::error_code ec;
        fs::create_directories(d, ec);
        if (ec) throw IoError("cannot create " + d.string());
    }

    Manifest manifest("pipeline", opt.seed);
    nlohmann::ordered_json config;
    config["models"] = opt.models;
    config["n"] = opt.n;
    config["length"] = opt.length;
    config["quantiles"] = opt.quantiles;
    config["replicas"] = opt.replicas;
    config["sets"] = opt.sets;
    config["cluster_set"] = opt.cluster_set;
    config["k_min"] = opt.k_min;
    config["k_max"] = opt.k_max;
    config["repeats"] = opt.repeats;
    manifest.set_config(std::move(config));

    // stage seeds derived from the master seed
    const std::uint64_t sim_seed = Rng::derive(opt.seed, 1);
    const std::uint64_t synth_seed = Rng::derive(opt.seed, 2);
    const std::uint64_t cluster_seed = Rng::derive(opt.seed, 3);

    const auto originals = write_corpus(orig_dir, models, opt.n, opt.length, sim_seed, nullptr);
    for (const auto& f : originals) manifest.add_file(root, f);
    std::cout << "simulated " << originals.size() << " series\n";

    std::vector<fs::path> synthetic(originals.size() * opt.replicas);
    parallel_for(originals.size(), [&](std::size_t j) {
        const TimeSeries y = read_series_csv(originals[j]);
        SynthesisRequest request;
        request.graph = map_qg(y, opt.quantiles);
        request.length = y.size();
        request.seed = Rng::derive(synth_seed, j);
        request.replicas = opt.replicas;
        const auto replicas = synthesize_many(request);
        for (std::size_t r = 0; r < replicas.size(); ++r) {
            const fs::path file = synth_dir / (originals[j].stem().string() + "_synth_" +
                                               std::to_string(r + 1) + ".csv");
            write_series_csv(file, replicas[r]);
            synthetic[j * opt.replicas + r] = file;
        }
    }, opt.threads);
    for (const auto& f : synthetic) manifest.add_file(root, f);
    std::cout << "synthesized " << synthetic.size() << " series\n";

    std::vector<fs::path> corpus = originals;
    corpus.insert(corpus.end(), synthetic.begin(), synthetic.end());
    std::sort(corpus.begin(), corpus.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    FeatureMatrix cluster_input;
    for (const std::string set : {std::string("stats"), std::string("netf")}) {
        if (opt.sets != "both" && opt.sets != set) continue;
        const FeatureMatrix m = compute_features(corpus, set, opt.quantiles, opt.threads);
        const fs::path file = feat_dir / ("features_" + set + ".csv");
        write_feature_csv(file, m);
        manifest.add_file(root, file);
        std::cout << "wrote " << file.string() << '\n';
        if (set == opt.cluster_set) cluster_input = m;
    }

    const ClusterReport report =
        cluster_features(cluster_input, 0, opt.k_min, opt.k_max, opt.repeats, cluster_seed);
    write_text(cluster_dir / "cluster_report.json", cluster_report_json(report));
    write_text(cluster_dir / "cluster_report.csv", cluster_report_csv(report));
    manifest.add_file(root, cluster_dir / "cluster_report.json");
    manifest.add_file(root, cluster_dir / "cluster_report.csv");

    manifest.write(root);
    std::cout << "pipeline complete; k* = " << report.k_star << '\n';
}

}  // namespace qgsynth::cli
