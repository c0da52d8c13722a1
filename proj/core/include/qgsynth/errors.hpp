#pragma once

#include <stdexcept>
#include <string>

namespace qgsynth {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyInput : Error {
    explicit EmptyInput(const std::string& msg = "empty input") : Error(msg) {}
};

struct NonFinite : Error {
    explicit NonFinite(const std::string& msg = "non-finite value in input") : Error(msg) {}
};

struct TooShort : Error {
    explicit TooShort(const std::string& msg = "series too short") : Error(msg) {}
};

struct ConstantSeries : Error {
    explicit ConstantSeries(const std::string& msg = "series has zero variance") : Error(msg) {}
};

struct MissingValues : Error {
    explicit MissingValues(const std::string& msg = "operation requires a complete series")
        : Error(msg) {}
};

struct OutOfSupport : Error {
    explicit OutOfSupport(const std::string& msg = "value outside quantile support") : Error(msg) {}
};

struct DegenerateGraph : Error {
    explicit DegenerateGraph(const std::string& msg = "every transition row sums to zero")
        : Error(msg) {}
};

struct AllMissing : Error {
    explicit AllMissing(const std::string& msg = "not enough observed values") : Error(msg) {}
};

struct InvalidSpec : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& msg = "input lengths differ") : Error(msg) {}
};

struct TooFewRows : Error {
    explicit TooFewRows(const std::string& msg = "not enough rows") : Error(msg) {}
};

struct SingleCluster : Error {
    explicit SingleCluster(const std::string& msg = "need at least two clusters") : Error(msg) {}
};

struct EmptyReport : Error {
    explicit EmptyReport(const std::string& msg = "cluster report is empty") : Error(msg) {}
};

struct EmptyGraph : Error {
    explicit EmptyGraph(const std::string& msg = "graph has no nodes") : Error(msg) {}
};

struct DegenerateCovariance : Error {
    explicit DegenerateCovariance(const std::string& msg = "covariance has no variance")
        : Error(msg) {}
};

struct ParseError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace qgsynth
