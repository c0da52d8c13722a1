#include "qgsynth/stat_features.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numeric>

#include "qgsynth/errors.hpp"

namespace qgsynth {

namespace {

// fftw planning is not thread-safe; execution is.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

double variance(std::span<const double> v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / double(v.size());
}

void require_complete(const TimeSeries& s, const char* op) {
    if (!s.complete()) throw MissingValues(std::string(op) + " requires a complete series");
}

std::vector<double> moving_average(const std::vector<double>& y) {
    const std::size_t n = y.size();
    const std::size_t h = n / 20;
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + y[i];
    std::vector<double> trend(n);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t lo = t >= h ? t - h : 0;
        const std::size_t hi = std::min(t + h, n - 1);
        trend[t] = (prefix[hi + 1] - prefix[lo]) / double(hi - lo + 1);
    }
    return trend;
}

// Orthonormal basis over the index: constant, linear, quadratic. Modified
// Gram-Schmidt with one reorthogonalization pass.
std::array<std::vector<double>, 3> index_poly_basis(std::size_t n) {
    std::array<std::vector<double>, 3> v;
    for (auto& col : v) col.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double x = double(t);
        v[0][t] = 1.0;
        v[1][t] = x;
        v[2][t] = x * x;
    }
    auto dot = [n](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
        return s;
    };
    for (int pass = 0; pass < 2; ++pass) {
        for (int k = 0; k < 3; ++k) {
            for (int j = 0; j < k; ++j) {
                const double proj = dot(v[k], v[j]);
                for (std::size_t i = 0; i < n; ++i) v[k][i] -= proj * v[j][i];
            }
            const double norm = std::sqrt(dot(v[k], v[k]));
            if (norm > 0.0)
                for (std::size_t i = 0; i < n; ++i) v[k][i] /= norm;
        }
    }
    return v;
}

double sum_sq(std::span<const double> r) {
    double s = 0.0;
    for (double x : r) s += x * x;
    return s;
}

}  // namespace

double FeatureVector::at(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return values[i];
    throw Error("unknown feature: " + name);
}

const std::vector<std::string>& stat_feature_names() {
    static const std::vector<std::string> names = {
        "trend",       "linearity",   "curvature",   "entropy",
        "x_acf1",      "x_acf10",     "diff1_acf1",  "diff1_acf10",
        "diff2_acf1",  "diff2_acf10", "e_acf1",      "e_acf10",
    };
    return names;
}

std::pair<TimeSeries, TimeSeries> trend_decompose(const TimeSeries& series) {
    require_complete(series, "trend_decompose");
    if (series.size() < 12) throw TooShort("trend_decompose needs T >= 12");
    std::vector<double> trend = moving_average(series.values);
    std::vector<double> remainder(series.size());
    for (std::size_t i = 0; i < series.size(); ++i)
        remainder[i] = series.values[i] - trend[i];
    return {TimeSeries(std::move(trend)), TimeSeries(std::move(remainder))};
}

double trend_strength(const TimeSeries& series) {
    const double var_y = variance(series.values);
    if (var_y == 0.0) throw ConstantSeries();
    auto [trend, remainder] = trend_decompose(series);
    return std::max(0.0, 1.0 - variance(remainder.values) / var_y);
}

std::pair<double, double> linearity_curvature(const TimeSeries& series) {
    require_complete(series, "linearity_curvature");
    const std::size_t n = series.size();
    if (n < 3) throw TooShort("linearity_curvature needs T >= 3");
    const std::vector<double> trend = moving_average(series.values);
    const auto basis = index_poly_basis(n);
    double lin = 0.0, cur = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lin += trend[i] * basis[1][i];
        cur += trend[i] * basis[2][i];
    }
    return {lin, cur};
}

double spectral_entropy(const TimeSeries& series) {
    require_complete(series, "spectral_entropy");
    const std::size_t n = series.size();
    if (n < 64) throw TooShort("spectral_entropy needs T >= 64");

    std::vector<double> in(series.values);
    const std::size_t n_out = n / 2 + 1;
    std::vector<fftw_complex> out(n_out);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_plan plan =
            fftw_plan_dft_r2c_1d(int(n), in.data(), out.data(), FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    const std::size_t m = n / 2;  // Fourier frequencies, DC excluded
    std::vector<double> power(m);
    double total = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
        power[j - 1] = out[j][0] * out[j][0] + out[j][1] * out[j][1];
        total += power[j - 1];
    }
    if (total <= 0.0) throw ConstantSeries();

    double h = 0.0;
    for (double p : power) {
        if (p <= 0.0) continue;
        const double q = p / total;
        h -= q * std::log(q);
    }
    return h / std::log(double(m));
}

FeatureVector stat_features(const TimeSeries& series) {
    require_complete(series, "stat_features");
    if (series.size() < 64) throw TooShort("stat_features needs T >= 64");

    auto [trend, remainder] = trend_decompose(series);
    const double tr = trend_strength(series);
    const auto [lin, cur] = linearity_curvature(series);
    const double ent = spectral_entropy(series);

    const auto r = acf(series, 10);
    const auto d1 = acf(difference(series, 1), 10);
    const auto d2 = acf(difference(series, 2), 10);
    const auto re = acf(remainder, 10);

    FeatureVector f;
    f.names = stat_feature_names();
    f.values = {tr,    lin,        cur,        ent,   r[0],  sum_sq(r),
                d1[0], sum_sq(d1), d2[0], sum_sq(d2), re[0], sum_sq(re)};
    return f;
}

std::size_t PairedDiffTable::model_index(const std::string& model) const {
    for (std::size_t i = 0; i < models.size(); ++i)
        if (models[i] == model) return i;
    throw Error("unknown model in paired-diff table: " + model);
}

PairedDiffTable paired_diff_table(const std::vector<FeatureVector>& originals,
                                  const std::vector<FeatureVector>& synthetics,
                                  const std::vector<std::string>& labels) {
    if (originals.size() != synthetics.size() || originals.size() != labels.size())
        throw LengthMismatch("paired_diff_table inputs must align");
    if (originals.empty()) throw EmptyInput("paired_diff_table of empty lists");

    PairedDiffTable table;
    table.features = originals.front().names;

    // diffs[model][feature] -> samples
    std::vector<std::vector<std::vector<double>>> diffs;
    for (std::size_t i = 0; i < originals.size(); ++i) {
        if (originals[i].values.size() != table.features.size() ||
            synthetics[i].values.size() != table.features.size())
            throw LengthMismatch("feature vectors of differing lengths");
        auto it = std::find(table.models.begin(), table.models.end(), labels[i]);
        std::size_t m;
        if (it == table.models.end()) {
            m = table.models.size();
            table.models.push_back(labels[i]);
            diffs.emplace_back(table.features.size());
        } else {
            m = std::size_t(it - table.models.begin());
        }
        for (std::size_t f = 0; f < table.features.size(); ++f)
            diffs[m][f].push_back(synthetics[i].values[f] - originals[i].values[f]);
    }

    table.mean.assign(table.models.size(), std::vector<double>(table.features.size(), 0.0));
    table.sd = table.mean;
    for (std::size_t m = 0; m < table.models.size(); ++m) {
        for (std::size_t f = 0; f < table.features.size(); ++f) {
            const auto& d = diffs[m][f];
            const double mean = std::accumulate(d.begin(), d.end(), 0.0) / double(d.size());
            double ss = 0.0;
            for (double x : d) ss += (x - mean) * (x - mean);
            table.mean[m][f] = mean;
            table.sd[m][f] = d.size() > 1 ? std::sqrt(ss / double(d.size() - 1)) : 0.0;
        }
    }
    return table;
}

}  // namespace qgsynth
