#pragma once

#include <stdexcept>
#include <string>

namespace splab {

/// A coefficient was requested outside the validity window of a truncated series.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A ratio needed a Laurent unit but got zero (or an all-unknown series).
class SingularRatioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency condition of the partition formula failed: a pole that
/// must cancel did not, or a partition count came out non-integer or non-real.
/// `detail` carries a machine-readable report (JSON text) when available.
class ConventionError : public std::runtime_error {
public:
    explicit ConventionError(const std::string& what, std::string detail = {})
        : std::runtime_error(what), detail_(std::move(detail)) {}
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string detail_;
};

} // namespace splab
