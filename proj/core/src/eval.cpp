#include "qgsynth/eval.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "qgsynth/errors.hpp"
#include "qgsynth/rng.hpp"

namespace qgsynth {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

// contingency table over compacted labels
struct Contingency {
    std::vector<std::vector<std::int64_t>> table;
    std::vector<std::int64_t> row_sum, col_sum;
    std::int64_t n = 0;
};

std::vector<int> compact(const std::vector<int>& labels) {
    std::map<int, int> remap;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto [it, inserted] = remap.emplace(labels[i], int(remap.size()));
        out[i] = it->second;
    }
    return out;
}

Contingency contingency(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw LengthMismatch("label vectors differ in length");
    if (a.empty()) throw EmptyInput("empty label vectors");
    const auto ca = compact(a), cb = compact(b);
    const int ra = 1 + *std::max_element(ca.begin(), ca.end());
    const int rb = 1 + *std::max_element(cb.begin(), cb.end());
    Contingency c;
    c.table.assign(ra, std::vector<std::int64_t>(rb, 0));
    c.row_sum.assign(ra, 0);
    c.col_sum.assign(rb, 0);
    c.n = std::int64_t(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++c.table[ca[i]][cb[i]];
        ++c.row_sum[ca[i]];
        ++c.col_sum[cb[i]];
    }
    return c;
}

double choose2(std::int64_t n) { return 0.5 * double(n) * double(n - 1); }

double silhouette_from_dist(const std::vector<std::vector<double>>& dist,
                            const std::vector<int>& labels) {
    const std::size_t n = labels.size();
    const int k = 1 + *std::max_element(labels.begin(), labels.end());
    std::vector<std::int64_t> size(k, 0);
    for (int l : labels) ++size[l];
    int nonempty = 0;
    for (auto s : size)
        if (s > 0) ++nonempty;
    if (nonempty < 2) throw SingleCluster();

    double total = 0.0;
    std::vector<double> to_cluster(k);
    for (std::size_t i = 0; i < n; ++i) {
        if (size[labels[i]] == 1) continue;  // singleton scores 0
        std::fill(to_cluster.begin(), to_cluster.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) to_cluster[labels[j]] += dist[i][j];

        const double a = to_cluster[labels[i]] / double(size[labels[i]] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            if (c == labels[i] || size[c] == 0) continue;
            b = std::min(b, to_cluster[c] / double(size[c]));
        }
        const double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / double(n);
}

std::vector<std::vector<double>> pairwise_distances(const FeatureMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] = std::sqrt(sq_dist(m.data[i], m.data[j]));
    return dist;
}

// One k-means++ seeding followed by Lloyd iterations.
std::pair<std::vector<int>, double> kmeans_once(const FeatureMatrix& m, int k, Rng& rng) {
    const std::size_t n = m.rows();
    const std::size_t d = m.cols();
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);

    // k-means++: first centroid uniform, then D^2 sampling
    std::size_t first = std::size_t(rng.next_double() * double(n));
    centroids.push_back(m.data[std::min(first, n - 1)]);
    std::vector<double> d2(n);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& ctr : centroids) best = std::min(best, sq_dist(m.data[i], ctr));
            d2[i] = best;
            total += best;
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            const double u = rng.next_double() * total;
            double cum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                cum += d2[i];
                if (u < cum) {
                    pick = i;
                    break;
                }
                pick = i;
            }
        } else {
            pick = std::size_t(rng.next_double() * double(n));
            pick = std::min(pick, n - 1);
        }
        centroids.push_back(m.data[pick]);
    }

    std::vector<int> labels(n, 0);
    double prev_wcss = std::numeric_limits<double>::infinity();
    double wcss = 0.0;
    for (int iter = 0; iter < 300; ++iter) {
        wcss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int arg = 0;
            for (int c = 0; c < k; ++c) {
                const double dd = sq_dist(m.data[i], centroids[c]);
                if (dd < best) {
                    best = dd;
                    arg = c;
                }
            }
            labels[i] = arg;
            wcss += best;
        }

        std::vector<std::vector<double>> sums(k, std::vector<double>(d, 0.0));
        std::vector<std::int64_t> count(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++count[labels[i]];
            for (std::size_t j = 0; j < d; ++j) sums[labels[i]][j] += m.data[i][j];
        }
        for (int c = 0; c < k; ++c) {
            if (count[c] > 0) {
                for (std::size_t j = 0; j < d; ++j) centroids[c][j] = sums[c][j] / double(count[c]);
            } else {
                // re-seed an empty cluster from the farthest point
                std::size_t far = 0;
                double best = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double dd = sq_dist(m.data[i], centroids[labels[i]]);
                    if (dd > best) {
                        best = dd;
                        far = i;
                    }
                }
                centroids[c] = m.data[far];
            }
        }

        if (prev_wcss < std::numeric_limits<double>::infinity()) {
            const double rel = prev_wcss > 0.0 ? (prev_wcss - wcss) / prev_wcss : 0.0;
            if (rel >= 0.0 && rel < 1e-6) break;
        }
        prev_wcss = wcss;
    }
    return {labels, wcss};
}

}  // namespace

void FeatureMatrix::check_rectangular() const {
    for (const auto& row : data)
        if (row.size() != columns.size()) throw LengthMismatch("feature matrix is ragged");
    if (!row_ids.empty() && row_ids.size() != data.size())
        throw LengthMismatch("row ids do not match row count");
}

std::vector<int> FeatureMatrix::model_labels() const {
    std::vector<std::string> order;
    std::vector<int> out(row_models.size());
    for (std::size_t i = 0; i < row_models.size(); ++i) {
        auto it = std::find(order.begin(), order.end(), row_models[i]);
        if (it == order.end()) {
            order.push_back(row_models[i]);
            out[i] = int(order.size()) - 1;
        } else {
            out[i] = int(it - order.begin());
        }
    }
    return out;
}

FeatureMatrix standardize(const FeatureMatrix& m) {
    m.check_rectangular();
    if (m.rows() < 2) throw TooFewRows("standardize needs at least 2 rows");

    FeatureMatrix out = m;
    out.zero_variance.assign(m.cols(), false);
    const double n = double(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double mean = 0.0;
        for (const auto& row : m.data) mean += row[j];
        mean /= n;
        double ss = 0.0;
        for (const auto& row : m.data) ss += (row[j] - mean) * (row[j] - mean);
        const double sd = std::sqrt(ss / (n - 1.0));
        if (sd == 0.0) {
            out.zero_variance[j] = true;
            for (auto& row : out.data) row[j] = 0.0;
        } else {
            for (auto& row : out.data) row[j] = (row[j] - mean) / sd;
        }
    }
    return out;
}

PcaResult pca(const FeatureMatrix& m, int components) {
    m.check_rectangular();
    const auto n = m.rows();
    const auto d = m.cols();
    if (n < 2) throw TooFewRows("pca needs at least 2 rows");
    if (components < 1 || components > int(d)) throw Error("component count out of range");

    Eigen::MatrixXd x(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) x(i, j) = m.data[i][j];
    const Eigen::RowVectorXd mean = x.colwise().mean();
    x.rowwise() -= mean;

    const Eigen::MatrixXd cov = (x.transpose() * x) / double(n - 1);
    if (!cov.allFinite() || cov.trace() <= 0.0) throw DegenerateCovariance();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw DegenerateCovariance("eigendecomposition failed");

    // eigenvalues ascending; take the top `components` in descending order
    const Eigen::VectorXd evals = solver.eigenvalues();
    const Eigen::MatrixXd evecs = solver.eigenvectors();
    const double trace = std::max(evals.sum(), 0.0);

    PcaResult r;
    r.loadings.assign(d, std::vector<double>(components, 0.0));
    r.scores.assign(n, std::vector<double>(components, 0.0));
    r.explained_ratio.resize(components);
    for (int c = 0; c < components; ++c) {
        const auto idx = Eigen::Index(d) - 1 - c;
        Eigen::VectorXd v = evecs.col(idx);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0) v = -v;
        for (std::size_t j = 0; j < d; ++j) r.loadings[j][c] = v(Eigen::Index(j));
        const Eigen::VectorXd s = x * v;
        for (std::size_t i = 0; i < n; ++i) r.scores[i][c] = s(Eigen::Index(i));
        r.explained_ratio[c] = trace > 0.0 ? std::max(evals(idx), 0.0) / trace : 0.0;
    }
    return r;
}

KMeansResult kmeans(const FeatureMatrix& m, int k, int repeats, std::uint64_t seed) {
    m.check_rectangular();
    if (k < 2) throw Error("k must be >= 2");
    if (repeats < 1) throw Error("repeats must be >= 1");
    if (m.rows() < std::size_t(k)) throw TooFewRows("fewer rows than clusters");

    KMeansResult result;
    result.best_wcss = std::numeric_limits<double>::infinity();
    for (int r = 0; r < repeats; ++r) {
        Rng rng(Rng::derive(seed, std::uint64_t(r)));
        auto [labels, wcss] = kmeans_once(m, k, rng);
        if (wcss < result.best_wcss) {
            result.best_wcss = wcss;
            result.best_labels = labels;
        }
        result.repeat_labels.push_back(std::move(labels));
    }
    return result;
}

double silhouette(const FeatureMatrix& m, const std::vector<int>& labels) {
    m.check_rectangular();
    if (labels.size() != m.rows()) throw LengthMismatch("labels do not match rows");
    return silhouette_from_dist(pairwise_distances(m), compact(labels));
}

double ari(const std::vector<int>& a, const std::vector<int>& b) {
    const Contingency c = contingency(a, b);
    if (c.n < 2) throw LengthMismatch("ari needs length >= 2");

    double index = 0.0;
    for (const auto& row : c.table)
        for (const auto cell : row) index += choose2(cell);
    double sum_a = 0.0, sum_b = 0.0;
    for (auto s : c.row_sum) sum_a += choose2(s);
    for (auto s : c.col_sum) sum_b += choose2(s);
    const double expected = sum_a * sum_b / choose2(c.n);
    const double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) return 1.0;  // both partitions trivial
    return (index - expected) / (max_index - expected);
}

double nmi(const std::vector<int>& a, const std::vector<int>& b) {
    const Contingency c = contingency(a, b);
    const double n = double(c.n);

    double h_a = 0.0, h_b = 0.0, mi = 0.0;
    for (auto s : c.row_sum)
        if (s > 0) h_a -= double(s) / n * std::log(double(s) / n);
    for (auto s : c.col_sum)
        if (s > 0) h_b -= double(s) / n * std::log(double(s) / n);
    for (std::size_t i = 0; i < c.table.size(); ++i)
        for (std::size_t j = 0; j < c.table[i].size(); ++j) {
            const auto nij = c.table[i][j];
            if (nij == 0) continue;
            mi += double(nij) / n *
                  std::log(n * double(nij) / (double(c.row_sum[i]) * double(c.col_sum[j])));
        }
    const double denom = 0.5 * (h_a + h_b);
    if (denom <= 0.0) return 0.0;
    return std::clamp(mi / denom, 0.0, 1.0);
}

int select_k(const ClusterReport& report) {
    if (report.ks.empty()) throw EmptyReport();
    int best_k = report.ks.front();
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < report.ks.size(); ++i) {
        const double score = report.mean_as[i] - 0.5 * report.sd_as[i];
        if (score > best) {
            best = score;
            best_k = report.ks[i];
        }
    }
    return best_k;
}

ClusterReport cluster_scan(const FeatureMatrix& standardized, const std::vector<int>& truth,
                           int k_min, int k_max, int repeats, std::uint64_t seed) {
    if (truth.size() != standardized.rows()) throw LengthMismatch("truth labels do not match rows");
    if (k_min < 2 || k_max < k_min) throw Error("invalid k range");

    const auto dist = pairwise_distances(standardized);
    ClusterReport report;
    for (int k = k_min; k <= k_max; ++k) {
        if (standardized.rows() < std::size_t(k)) break;
        const auto result =
            kmeans(standardized, k, repeats, Rng::derive(seed, std::uint64_t(k)));
        std::vector<double> as, ris, nms;
        for (const auto& labels : result.repeat_labels) {
            as.push_back(silhouette_from_dist(dist, compact(labels)));
            ris.push_back(ari(truth, labels));
            nms.push_back(nmi(truth, labels));
        }
        auto mean_sd = [](const std::vector<double>& v) {
            const double mean = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
            double ss = 0.0;
            for (double x : v) ss += (x - mean) * (x - mean);
            const double sd = v.size() > 1 ? std::sqrt(ss / double(v.size() - 1)) : 0.0;
            return std::pair{mean, sd};
        };
        report.ks.push_back(k);
        const auto [mas, sas] = mean_sd(as);
        const auto [mar, sar] = mean_sd(ris);
        const auto [mnm, snm] = mean_sd(nms);
        report.mean_as.push_back(mas);
        report.sd_as.push_back(sas);
        report.mean_ari.push_back(mar);
        report.sd_ari.push_back(sar);
        report.mean_nmi.push_back(mnm);
        report.sd_nmi.push_back(snm);
    }
    report.k_star = select_k(report);
    return report;
}

std::string cluster_report_json(const ClusterReport& report) {
    nlohmann::ordered_json j;
    j["k_star"] = report.k_star;
    j["per_k"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.ks.size(); ++i) {
        nlohmann::ordered_json row;
        row["k"] = report.ks[i];
        row["mean_as"] = report.mean_as[i];
        row["sd_as"] = report.sd_as[i];
        row["mean_ari"] = report.mean_ari[i];
        row["sd_ari"] = report.sd_ari[i];
        row["mean_nmi"] = report.mean_nmi[i];
        row["sd_nmi"] = report.sd_nmi[i];
        j["per_k"].push_back(row);
    }
    return j.dump(2) + "\n";
}

std::string cluster_report_csv(const ClusterReport& report) {
    std::ostringstream out;
    out << "k,mean_as,sd_as,mean_ari,sd_ari,mean_nmi,sd_nmi\n";
    for (std::size_t i = 0; i < report.ks.size(); ++i) {
        out << report.ks[i] << ',' << format_double(report.mean_as[i]) << ','
            << format_double(report.sd_as[i]) << ',' << format_double(report.mean_ari[i]) << ','
            << format_double(report.sd_ari[i]) << ',' << format_double(report.mean_nmi[i]) << ','
            << format_double(report.sd_nmi[i]) << '\n';
    }
    return out.str();
}

void write_feature_csv(const std::filesystem::path& path, const FeatureMatrix& m) {
    m.check_rectangular();
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "series_id,model,origin";
    for (const auto& c : m.columns) out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << m.row_ids[i] << ',' << m.row_models[i] << ',' << m.row_origins[i];
        for (double v : m.data[i]) out << ',' << format_double(v);
        out << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

FeatureMatrix read_feature_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty feature CSV: " + path.string());

    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                parts.push_back(cur);
                cur.clear();
            } else if (ch != '\r') {
                cur += ch;
            }
        }
        parts.push_back(cur);
        return parts;
    };

    const auto header = split(line);
    if (header.size() < 4 || header[0] != "series_id" || header[1] != "model" ||
        header[2] != "origin")
        throw ParseError("feature CSV must start with series_id,model,origin: " + path.string());

    FeatureMatrix m;
    m.columns.assign(header.begin() + 3, header.end());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto parts = split(line);
        if (parts.size() != header.size())
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": wrong field count");
        m.row_ids.push_back(parts[0]);
        m.row_models.push_back(parts[1]);
        m.row_origins.push_back(parts[2]);
        std::vector<double> row(m.columns.size());
        for (std::size_t j = 0; j < m.columns.size(); ++j) {
            try {
                row[j] = std::stod(parts[3 + j]);
            } catch (const std::exception&) {
                throw ParseError(path.string() + ":" + std::to_string(line_no) +
                                 ": bad number '" + parts[3 + j] + "'");
            }
        }
        m.data.push_back(std::move(row));
    }
    return m;
}

}  // namespace qgsynth
