#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qgsynth/series.hpp"

namespace qgsynth {

enum class ModelKind {
    WhiteNoise,
    Ar1,
    Ar2,
    Arima110,
    Arfima,
    Garch11,
    Setar,
    PoissonHmm,
    Inar1,
};

/// Tagged parameter set for one simulator. Parameter names follow the usual
/// model notation: phi1/phi2 (AR), d (fractional order), omega/alpha1/beta1
/// (GARCH), alpha/beta/gamma/r (SETAR: lower slope, upper slope, upper
/// intercept, threshold), p11/p22/lambda1/lambda2 (two-state Poisson HMM),
/// alpha/innov_mean (INAR thinning and Poisson innovation mean).
struct ModelSpec {
    ModelKind kind = ModelKind::WhiteNoise;
    std::map<std::string, double> params;
    std::size_t burn_in = 1000;

    double param(const std::string& name) const;

    /// Throws InvalidSpec naming the violated constraint.
    void validate() const;
};

std::string kind_name(ModelKind kind);
ModelKind kind_from_name(const std::string& name);

/// One realization of length `length` after discarding `burn_in` initial
/// points; N(0,1) innovations except where the model dictates Poisson.
TimeSeries simulate(const ModelSpec& spec, std::size_t length, std::uint64_t seed);

/// The eleven named corpus models: WN, AR1_{-0.5,0.5,0.9}, AR2, ARIMA,
/// ARFIMA, GARCH, SETAR, HMM, INAR.
std::vector<std::pair<std::string, ModelSpec>> table_models();

/// The spec for one named corpus model; throws InvalidSpec for unknown names.
ModelSpec model_by_name(const std::string& name);

}  // namespace qgsynth
