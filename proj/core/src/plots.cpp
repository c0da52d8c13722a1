#include "qgsynth/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qgsynth/errors.hpp"

namespace qgsynth {

namespace {

constexpr int kWidth = 880;
constexpr int kHeight = 520;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 48;
constexpr int kMarginBottom = 70;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a"};
constexpr int kPaletteSize = 12;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Scale {
    double lo = 0.0, hi = 1.0;
    double pix_lo = 0.0, pix_hi = 1.0;
    double operator()(double v) const {
        const double span = hi - lo;
        const double t = span > 0.0 ? (v - lo) / span : 0.5;
        return pix_lo + t * (pix_hi - pix_lo);
    }
};

struct Svg {
    std::ostringstream out;

    explicit Svg(const std::string& title) {
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
            << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& color,
              double width = 1.0) {
        out << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
            << "\" y2=\"" << num(y2) << "\" stroke=\"" << color << "\" stroke-width=\""
            << num(width) << "\"/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke) {
        out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
            << "\" height=\"" << num(h) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
            << "\"/>\n";
    }

    void circle(double x, double y, double r, const std::string& fill) {
        out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r)
            << "\" fill=\"" << fill << "\"/>\n";
    }

    void triangle(double x, double y, double r, const std::string& fill) {
        out << "<path d=\"M " << num(x) << ' ' << num(y - r) << " L " << num(x - r) << ' '
            << num(y + r) << " L " << num(x + r) << ' ' << num(y + r) << " Z\" fill=\"" << fill
            << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, const std::string& anchor = "middle",
              int size = 12, const std::string& color = "#333333") {
        out << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
            << "\" font-family=\"sans-serif\" font-size=\"" << size << "\" fill=\"" << color
            << "\">" << s << "</text>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
        for (const auto& [x, y] : pts) out << num(x) << ',' << num(y) << ' ';
        out << "\"/>\n";
    }

    std::string finish() {
        out << "</svg>\n";
        return out.str();
    }
};

void axes(Svg& svg, const Scale& sx, const Scale& sy, const std::string& xlabel,
          const std::string& ylabel) {
    svg.line(kMarginLeft, kHeight - kMarginBottom, kWidth - kMarginRight, kHeight - kMarginBottom,
             "#333333");
    svg.line(kMarginLeft, kMarginTop, kMarginLeft, kHeight - kMarginBottom, "#333333");
    svg.text((kMarginLeft + kWidth - kMarginRight) / 2.0, kHeight - 18, xlabel);
    svg.text(18, kMarginTop - 10, ylabel, "start");
    for (int i = 0; i <= 4; ++i) {
        const double v = sy.lo + (sy.hi - sy.lo) * i / 4.0;
        const double y = sy(v);
        svg.line(kMarginLeft - 4, y, kMarginLeft, y, "#333333");
        svg.text(kMarginLeft - 8, y + 4, num(v), "end", 10);
    }
    (void)sx;
}

std::pair<double, double> padded_range(double lo, double hi) {
    if (!(hi > lo)) {
        const double pad = std::abs(lo) > 0.0 ? std::abs(lo) * 0.1 : 1.0;
        return {lo - pad, hi + pad};
    }
    const double pad = (hi - lo) * 0.06;
    return {lo - pad, hi + pad};
}

}  // namespace

std::string svg_boxplot(const std::string& title, const std::vector<std::string>& groups,
                        const std::vector<std::vector<double>>& samples) {
    if (groups.size() != samples.size()) throw LengthMismatch("boxplot groups vs samples");
    if (groups.empty()) throw EmptyInput("boxplot without groups");

    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& s : samples)
        for (double v : s) {
            lo = first ? v : std::min(lo, v);
            hi = first ? v : std::max(hi, v);
            first = false;
        }
    if (first) throw EmptyInput("boxplot without samples");
    std::tie(lo, hi) = padded_range(std::min(lo, 0.0), std::max(hi, 0.0));

    Svg svg(title);
    Scale sy{lo, hi, double(kHeight - kMarginBottom), double(kMarginTop)};
    Scale sx{0.0, double(groups.size()), double(kMarginLeft), double(kWidth - kMarginRight)};
    axes(svg, sx, sy, "", "synthetic - original");
    svg.line(kMarginLeft, sy(0.0), kWidth - kMarginRight, sy(0.0), "#bbbbbb");

    for (std::size_t g = 0; g < groups.size(); ++g) {
        std::vector<double> v = samples[g];
        if (v.empty()) continue;
        std::sort(v.begin(), v.end());
        auto quantile = [&](double p) {
            const double h = (double(v.size()) - 1.0) * p;
            const auto k = std::size_t(h);
            const double f = h - double(k);
            return f > 0.0 && k + 1 < v.size() ? v[k] + f * (v[k + 1] - v[k]) : v[k];
        };
        const double q1 = quantile(0.25), q2 = quantile(0.5), q3 = quantile(0.75);
        const double iqr = q3 - q1;
        double wlo = q1, whi = q3;
        for (double x : v) {
            if (x >= q1 - 1.5 * iqr) {
                wlo = x;
                break;
            }
        }
        for (auto it = v.rbegin(); it != v.rend(); ++it) {
            if (*it <= q3 + 1.5 * iqr) {
                whi = *it;
                break;
            }
        }

        const double cx = sx(double(g) + 0.5);
        const double half = 0.32 * (sx(1.0) - sx(0.0));
        const std::string color = kPalette[g % kPaletteSize];
        svg.line(cx, sy(wlo), cx, sy(q1), "#333333");
        svg.line(cx, sy(q3), cx, sy(whi), "#333333");
        svg.line(cx - half * 0.5, sy(wlo), cx + half * 0.5, sy(wlo), "#333333");
        svg.line(cx - half * 0.5, sy(whi), cx + half * 0.5, sy(whi), "#333333");
        svg.rect(cx - half, std::min(sy(q1), sy(q3)), 2 * half, std::abs(sy(q1) - sy(q3)),
                 "none", color);
        svg.line(cx - half, sy(q2), cx + half, sy(q2), color, 2.0);
        for (double x : v)
            if (x < q1 - 1.5 * iqr || x > q3 + 1.5 * iqr) svg.circle(cx, sy(x), 2.0, "#777777");
        svg.text(cx, kHeight - kMarginBottom + 16, groups[g], "middle", 10);
    }
    return svg.finish();
}

std::string svg_series_overlay(const std::string& title, const TimeSeries& original,
                               const TimeSeries& synthetic, std::size_t max_points) {
    const std::size_t n =
        std::min({max_points, original.size(), synthetic.size()});
    if (n < 2) throw TooShort("series overlay needs at least 2 points");

    double lo = original.values[0], hi = lo;
    for (std::size_t i = 0; i < n; ++i) {
        lo = std::min({lo, original.values[i], synthetic.values[i]});
        hi = std::max({hi, original.values[i], synthetic.values[i]});
    }
    std::tie(lo, hi) = padded_range(lo, hi);

    Svg svg(title);
    Scale sy{lo, hi, double(kHeight - kMarginBottom), double(kMarginTop)};
    Scale sx{0.0, double(n - 1), double(kMarginLeft), double(kWidth - kMarginRight)};
    axes(svg, sx, sy, "t", "value");

    std::vector<std::pair<double, double>> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.emplace_back(sx(double(i)), sy(original.values[i]));
    svg.polyline(pts, "#1f77b4");
    pts.clear();
    for (std::size_t i = 0; i < n; ++i) pts.emplace_back(sx(double(i)), sy(synthetic.values[i]));
    svg.polyline(pts, "#ff7f0e");

    svg.text(kWidth - kMarginRight - 150, kMarginTop + 8, "original", "start", 11, "#1f77b4");
    svg.text(kWidth - kMarginRight - 150, kMarginTop + 24, "synthetic", "start", 11, "#ff7f0e");
    return svg.finish();
}

std::string svg_acf_overlay(const std::string& title, const std::vector<double>& acf_original,
                            const std::vector<double>& acf_synthetic) {
    if (acf_original.size() != acf_synthetic.size())
        throw LengthMismatch("acf overlays must align");
    if (acf_original.empty()) throw EmptyInput("empty acf");

    Svg svg(title);
    Scale sy{-1.0, 1.0, double(kHeight - kMarginBottom), double(kMarginTop)};
    Scale sx{0.0, double(acf_original.size()) + 1.0, double(kMarginLeft),
             double(kWidth - kMarginRight)};
    axes(svg, sx, sy, "lag", "acf");
    svg.line(kMarginLeft, sy(0.0), kWidth - kMarginRight, sy(0.0), "#bbbbbb");

    for (std::size_t k = 0; k < acf_original.size(); ++k) {
        const double x = sx(double(k + 1));
        svg.line(x - 2, sy(0.0), x - 2, sy(acf_original[k]), "#1f77b4", 2.0);
        svg.line(x + 2, sy(0.0), x + 2, sy(acf_synthetic[k]), "#ff7f0e", 2.0);
    }
    svg.text(kWidth - kMarginRight - 150, kMarginTop + 8, "original", "start", 11, "#1f77b4");
    svg.text(kWidth - kMarginRight - 150, kMarginTop + 24, "synthetic", "start", 11, "#ff7f0e");
    return svg.finish();
}

std::string svg_pca_biplot(const std::string& title, const FeatureMatrix& standardized,
                           const PcaResult& pca_result) {
    if (pca_result.scores.size() != standardized.rows())
        throw LengthMismatch("pca scores do not match the matrix");
    if (pca_result.explained_ratio.size() < 2) throw Error("biplot needs two components");

    double lo1 = 0, hi1 = 0, lo2 = 0, hi2 = 0;
    for (const auto& s : pca_result.scores) {
        lo1 = std::min(lo1, s[0]);
        hi1 = std::max(hi1, s[0]);
        lo2 = std::min(lo2, s[1]);
        hi2 = std::max(hi2, s[1]);
    }
    std::tie(lo1, hi1) = padded_range(lo1, hi1);
    std::tie(lo2, hi2) = padded_range(lo2, hi2);

    char xlabel[64], ylabel[64];
    std::snprintf(xlabel, sizeof xlabel, "PC1 (%.1f%%)", 100.0 * pca_result.explained_ratio[0]);
    std::snprintf(ylabel, sizeof ylabel, "PC2 (%.1f%%)", 100.0 * pca_result.explained_ratio[1]);

    Svg svg(title);
    Scale sx{lo1, hi1, double(kMarginLeft), double(kWidth - kMarginRight)};
    Scale sy{lo2, hi2, double(kHeight - kMarginBottom), double(kMarginTop)};
    axes(svg, sx, sy, xlabel, ylabel);

    std::vector<std::string> model_order;
    auto model_color = [&](const std::string& model) {
        auto it = std::find(model_order.begin(), model_order.end(), model);
        if (it == model_order.end()) {
            model_order.push_back(model);
            it = model_order.end() - 1;
        }
        return kPalette[std::size_t(it - model_order.begin()) % kPaletteSize];
    };

    for (std::size_t i = 0; i < standardized.rows(); ++i) {
        const std::string color = model_color(standardized.row_models[i]);
        const double x = sx(pca_result.scores[i][0]);
        const double y = sy(pca_result.scores[i][1]);
        if (standardized.row_origins[i] == "synthetic")
            svg.triangle(x, y, 3.5, color);
        else
            svg.circle(x, y, 3.0, color);
    }

    // loading arrows, scaled to a fixed fraction of the plot
    double max_load = 1e-12;
    for (const auto& l : pca_result.loadings)
        max_load = std::max({max_load, std::abs(l[0]), std::abs(l[1])});
    const double cx = sx(0.0), cy = sy(0.0);
    const double arrow = 0.35 * std::min(double(kWidth - kMarginLeft - kMarginRight),
                                         double(kHeight - kMarginTop - kMarginBottom));
    for (std::size_t j = 0; j < pca_result.loadings.size(); ++j) {
        const double dx = pca_result.loadings[j][0] / max_load * arrow;
        const double dy = -pca_result.loadings[j][1] / max_load * arrow;
        svg.line(cx, cy, cx + dx, cy + dy, "#555555", 1.2);
        svg.text(cx + dx * 1.08, cy + dy * 1.08, standardized.columns[j], "middle", 9, "#555555");
    }

    double ly = kMarginTop + 8;
    for (std::size_t mi = 0; mi < model_order.size(); ++mi) {
        svg.circle(kWidth - kMarginRight - 130, ly - 4, 3.0, kPalette[mi % kPaletteSize]);
        svg.text(kWidth - kMarginRight - 120, ly, model_order[mi], "start", 10);
        ly += 14;
    }
    return svg.finish();
}

}  // namespace qgsynth
