#pragma once

#include "splab/bell.hpp"
#include "splab/laurent_series.hpp"

#include <climits>
#include <vector>

namespace splab {

/// Truncated power series in a point-splitting parameter delta whose
/// coefficients are Laurent series in eps. Known through delta^order().
/// Only what the point-splitting oracle needs: ring operations, exp, inverse.
class DeltaPoly {
public:
    static constexpr int kUnbounded = INT_MAX;

    DeltaPoly() = default; // exact zero
    explicit DeltaPoly(int order) : order_(order) {}
    static DeltaPoly constant(const LaurentSeries& c, int order = kUnbounded);

    int order() const noexcept { return order_; }
    /// Coefficient of delta^k (zero series when not stored); k must be <= order().
    LaurentSeries operator[](int k) const;
    void set(int k, LaurentSeries c);

    friend DeltaPoly operator+(const DeltaPoly& a, const DeltaPoly& b);
    friend DeltaPoly operator-(const DeltaPoly& a, const DeltaPoly& b);
    friend DeltaPoly operator*(const DeltaPoly& a, const DeltaPoly& b);
    friend DeltaPoly operator*(const DeltaPoly& a, const GaussianRational& c);
    friend DeltaPoly operator*(const DeltaPoly& a, const LaurentSeries& c);

private:
    std::vector<LaurentSeries> c_;
    int order_ = kUnbounded;
};

/// exp(a) for a with zero constant term.
DeltaPoly exp_series(const DeltaPoly& a);
/// 1/a for a whose delta^0 coefficient is a Laurent unit.
DeltaPoly invert(const DeltaPoly& a);
DeltaPoly pow(const DeltaPoly& a, int k);

template <>
struct RingTraits<DeltaPoly> {
    static DeltaPoly one() { return DeltaPoly::constant(LaurentSeries::one()); }
    static DeltaPoly zero() { return DeltaPoly(); }
};

} // namespace splab
