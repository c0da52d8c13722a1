#pragma once

#include <cstdint>
#include <vector>

#include "qgsynth/quantile_graph.hpp"
#include "qgsynth/series.hpp"

namespace qgsynth {

struct SynthesisRequest {
    QuantileGraph graph;
    std::size_t length = 0;
    std::uint64_t seed = 0;
    std::size_t replicas = 1;
};

/// Walk the Markov matrix for `length` steps, drawing each value uniformly on
/// the current bin's (b_{k-1}, b_k] range. The initial bin is uniform among
/// rows with a nonzero sum; a walk entering an all-zero row restarts there.
/// Deterministic given (graph, length, seed).
TimeSeries synthesize(const SynthesisRequest& request);

/// `replicas` independent walks. Replica 0 uses the request seed itself, so a
/// single replica coincides with synthesize(); replica r > 0 uses the derived
/// stream Rng::derive(seed, r).
std::vector<TimeSeries> synthesize_many(const SynthesisRequest& request);

/// Fill every gap (maximal run of missing values) with a quantile-graph walk
/// fitted on the observed consecutive pairs. The walk enters each gap in the
/// bin of the last observed value before it (uniform nonzero-row start when
/// the series opens with a gap); observed values pass through untouched.
TimeSeries impute(const TimeSeries& series, int q, std::uint64_t seed);

}  // namespace qgsynth
