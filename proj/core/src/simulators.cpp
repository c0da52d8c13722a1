#include "qgsynth/simulators.hpp"

#include <cmath>

#include "qgsynth/errors.hpp"
#include "qgsynth/rng.hpp"

namespace qgsynth {

double ModelSpec::param(const std::string& name) const {
    const auto it = params.find(name);
    if (it == params.end()) throw InvalidSpec("missing parameter: " + name);
    return it->second;
}

void ModelSpec::validate() const {
    switch (kind) {
        case ModelKind::WhiteNoise:
            break;
        case ModelKind::Ar1:
            if (std::abs(param("phi1")) >= 1.0) throw InvalidSpec("AR1 requires |phi1| < 1");
            break;
        case ModelKind::Ar2: {
            const double p1 = param("phi1"), p2 = param("phi2");
            if (p2 + p1 >= 1.0 || p2 - p1 >= 1.0 || std::abs(p2) >= 1.0)
                throw InvalidSpec("AR2 requires phi2 +/- phi1 < 1 and |phi2| < 1");
            break;
        }
        case ModelKind::Arima110:
            if (std::abs(param("phi1")) >= 1.0) throw InvalidSpec("ARIMA(1,1,0) requires |phi1| < 1");
            break;
        case ModelKind::Arfima: {
            const double d = param("d");
            if (d <= 0.0 || d >= 0.5) throw InvalidSpec("ARFIMA requires 0 < d < 0.5");
            if (std::abs(param("phi1")) >= 1.0) throw InvalidSpec("ARFIMA requires |phi1| < 1");
            break;
        }
        case ModelKind::Garch11: {
            if (param("omega") <= 0.0) throw InvalidSpec("GARCH requires omega > 0");
            if (param("alpha1") < 0.0 || param("beta1") < 0.0)
                throw InvalidSpec("GARCH requires alpha1, beta1 >= 0");
            if (param("alpha1") + param("beta1") >= 1.0)
                throw InvalidSpec("GARCH requires alpha1 + beta1 < 1");
            break;
        }
        case ModelKind::Setar:
            param("alpha");
            param("beta");
            param("gamma");
            param("r");
            break;
        case ModelKind::PoissonHmm: {
            const double p11 = param("p11"), p22 = param("p22");
            if (p11 < 0.0 || p11 > 1.0 || p22 < 0.0 || p22 > 1.0)
                throw InvalidSpec("HMM requires transition rows summing to 1 with entries in [0,1]");
            if (param("lambda1") <= 0.0 || param("lambda2") <= 0.0)
                throw InvalidSpec("HMM requires positive emission rates");
            break;
        }
        case ModelKind::Inar1: {
            const double a = param("alpha");
            if (a < 0.0 || a >= 1.0) throw InvalidSpec("INAR requires 0 <= alpha < 1");
            if (param("innov_mean") <= 0.0) throw InvalidSpec("INAR requires innov_mean > 0");
            break;
        }
    }
}

namespace {

std::vector<double> gaussian_draws(std::size_t n, Rng& rng) {
    std::vector<double> e(n);
    for (double& x : e) x = rng.normal();
    return e;
}

std::vector<double> sim_ar1(std::size_t n, double phi, Rng& rng) {
    std::vector<double> y(n);
    double prev = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        prev = phi * prev + rng.normal();
        y[t] = prev;
    }
    return y;
}

}  // namespace

TimeSeries simulate(const ModelSpec& spec, std::size_t length, std::uint64_t seed) {
    spec.validate();
    if (length < 1) throw Error("simulation length must be >= 1");

    const std::size_t n = length + spec.burn_in;
    Rng rng(seed);
    std::vector<double> y;

    switch (spec.kind) {
        case ModelKind::WhiteNoise:
            y = gaussian_draws(n, rng);
            break;

        case ModelKind::Ar1:
            y = sim_ar1(n, spec.param("phi1"), rng);
            break;

        case ModelKind::Ar2: {
            const double p1 = spec.param("phi1"), p2 = spec.param("phi2");
            y.resize(n);
            double y1 = 0.0, y2 = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                const double cur = p1 * y1 + p2 * y2 + rng.normal();
                y[t] = cur;
                y2 = y1;
                y1 = cur;
            }
            break;
        }

        case ModelKind::Arima110: {
            // integrate the stationary AR(1) part, starting the level at 0
            std::vector<double> x = sim_ar1(n, spec.param("phi1"), rng);
            y.assign(length, 0.0);
            double level = 0.0;
            for (std::size_t t = 0; t < length; ++t) {
                level += x[spec.burn_in + t];
                y[t] = level;
            }
            return TimeSeries(std::move(y));
        }

        case ModelKind::Arfima: {
            // (1-B)^d z = e via the truncated AR(inf) expansion, then the AR(1) filter
            const double d = spec.param("d");
            const double phi = spec.param("phi1");
            std::vector<double> pi(n + 1);
            pi[0] = 1.0;
            for (std::size_t j = 1; j <= n; ++j)
                pi[j] = pi[j - 1] * (double(j) - 1.0 - d) / double(j);
            std::vector<double> z(n);
            for (std::size_t t = 0; t < n; ++t) {
                double acc = rng.normal();
                for (std::size_t j = 1; j <= t; ++j) acc -= pi[j] * z[t - j];
                z[t] = acc;
            }
            y.resize(n);
            double prev = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                prev = phi * prev + z[t];
                y[t] = prev;
            }
            break;
        }

        case ModelKind::Garch11: {
            const double omega = spec.param("omega");
            const double a1 = spec.param("alpha1");
            const double b1 = spec.param("beta1");
            y.resize(n);
            double s2 = 0.0, prev = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                s2 = omega + a1 * prev * prev + b1 * s2;
                prev = std::sqrt(s2) * rng.normal();
                y[t] = prev;
            }
            break;
        }

        case ModelKind::Setar: {
            const double a = spec.param("alpha");
            const double b = spec.param("beta");
            const double c = spec.param("gamma");
            const double r = spec.param("r");
            y.resize(n);
            double prev = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                prev = prev <= r ? a * prev + rng.normal() : c + b * prev + rng.normal();
                y[t] = prev;
            }
            break;
        }

        case ModelKind::PoissonHmm: {
            const double stay[2] = {spec.param("p11"), spec.param("p22")};
            const double lambda[2] = {spec.param("lambda1"), spec.param("lambda2")};
            int state = rng.next_double() < 0.5 ? 0 : 1;
            y.resize(n);
            for (std::size_t t = 0; t < n; ++t) {
                y[t] = double(rng.poisson(lambda[state]));
                if (rng.next_double() >= stay[state]) state = 1 - state;
            }
            break;
        }

        case ModelKind::Inar1: {
            const double a = spec.param("alpha");
            const double mu = spec.param("innov_mean");
            y.resize(n);
            long prev = 0;
            for (std::size_t t = 0; t < n; ++t) {
                prev = rng.binomial(prev, a) + rng.poisson(mu);
                y[t] = double(prev);
            }
            break;
        }
    }

    return TimeSeries(std::vector<double>(y.begin() + long(spec.burn_in), y.end()));
}

std::string kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::WhiteNoise: return "wn";
        case ModelKind::Ar1: return "ar1";
        case ModelKind::Ar2: return "ar2";
        case ModelKind::Arima110: return "arima110";
        case ModelKind::Arfima: return "arfima";
        case ModelKind::Garch11: return "garch11";
        case ModelKind::Setar: return "setar";
        case ModelKind::PoissonHmm: return "poisson_hmm";
        case ModelKind::Inar1: return "inar1";
    }
    throw InvalidSpec("unknown model kind");
}

ModelKind kind_from_name(const std::string& name) {
    if (name == "wn") return ModelKind::WhiteNoise;
    if (name == "ar1") return ModelKind::Ar1;
    if (name == "ar2") return ModelKind::Ar2;
    if (name == "arima110") return ModelKind::Arima110;
    if (name == "arfima") return ModelKind::Arfima;
    if (name == "garch11") return ModelKind::Garch11;
    if (name == "setar") return ModelKind::Setar;
    if (name == "poisson_hmm") return ModelKind::PoissonHmm;
    if (name == "inar1") return ModelKind::Inar1;
    throw InvalidSpec("unknown model kind: " + name);
}

std::vector<std::pair<std::string, ModelSpec>> table_models() {
    std::vector<std::pair<std::string, ModelSpec>> models;
    models.emplace_back("WN", ModelSpec{ModelKind::WhiteNoise, {}, 1000});
    models.emplace_back("AR1_-0.5", ModelSpec{ModelKind::Ar1, {{"phi1", -0.5}}, 1000});
    models.emplace_back("AR1_0.5", ModelSpec{ModelKind::Ar1, {{"phi1", 0.5}}, 1000});
    models.emplace_back("AR1_0.9", ModelSpec{ModelKind::Ar1, {{"phi1", 0.9}}, 1000});
    models.emplace_back("AR2", ModelSpec{ModelKind::Ar2, {{"phi1", 1.5}, {"phi2", -0.75}}, 1000});
    models.emplace_back("ARIMA", ModelSpec{ModelKind::Arima110, {{"phi1", 0.7}}, 1000});
    models.emplace_back("ARFIMA", ModelSpec{ModelKind::Arfima, {{"phi1", 0.9}, {"d", 0.4}}, 1000});
    models.emplace_back(
        "GARCH", ModelSpec{ModelKind::Garch11, {{"omega", 1e-6}, {"alpha1", 0.1}, {"beta1", 0.8}}, 1000});
    models.emplace_back(
        "SETAR",
        ModelSpec{ModelKind::Setar, {{"alpha", 0.5}, {"beta", -1.8}, {"gamma", 2.0}, {"r", -1.0}}, 1000});
    models.emplace_back(
        "HMM", ModelSpec{ModelKind::PoissonHmm,
                         {{"p11", 0.9}, {"p22", 0.9}, {"lambda1", 10.0}, {"lambda2", 15.0}},
                         1000});
    models.emplace_back(
        "INAR", ModelSpec{ModelKind::Inar1, {{"alpha", 0.5}, {"innov_mean", 1.0}}, 1000});
    return models;
}

ModelSpec model_by_name(const std::string& name) {
    for (auto& [label, spec] : table_models())
        if (label == name) return spec;
    throw InvalidSpec("unknown corpus model: " + name);
}

}  // namespace qgsynth
