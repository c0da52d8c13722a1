#pragma once

#include <filesystem>

#include "qgsynth/series.hpp"

namespace qgsynth {

/// Series CSV: header `timestamp,value` (epoch seconds, decimal) or a single
/// `value` column; a missing observation is an empty field or the literal NaN.
TimeSeries read_series_csv(const std::filesystem::path& path);
void write_series_csv(const std::filesystem::path& path, const TimeSeries& series);

}  // namespace qgsynth
