#pragma once

#include "splab/gaussian_rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace splab {

/// Truncated Laurent series sum_d c_d eps^d in the real regulator eps (z = i*eps).
///
/// Coefficients are stored sparsely; zero coefficients are never stored. The
/// series is known exactly through degree `trunc()`; anything above is
/// unknown, and reading it raises TruncationError. Series that are exact
/// (finite Laurent polynomials) carry `trunc() == kExact`.
///
/// Window propagation is conservative: for a product of series with
/// valuations v1, v2 and truncations T1, T2 the result is known through
/// min(T1 + v2, T2 + v1).
class LaurentSeries {
public:
    static constexpr int kExact = 1 << 28;

    LaurentSeries() = default; // exact zero
    /// Builds a canonical series; throws std::invalid_argument for degrees above trunc.
    LaurentSeries(const std::vector<std::pair<int, GaussianRational>>& terms, int trunc);

    static LaurentSeries constant(const GaussianRational& c, int trunc = kExact);
    static LaurentSeries monomial(int degree, const GaussianRational& c, int trunc = kExact);
    static LaurentSeries one() { return constant(1); }
    /// Zero known through `trunc` (and unknown above).
    static LaurentSeries zero(int trunc = kExact) { return LaurentSeries({}, trunc); }

    int trunc() const noexcept { return trunc_; }
    bool is_exact() const noexcept { return trunc_ >= kExact; }
    /// No nonzero coefficient inside the window.
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Lowest stored degree, or trunc()+1 when nothing is stored.
    int valuation() const noexcept;
    /// Highest stored degree; requires !is_zero().
    int max_degree() const;
    const std::map<int, GaussianRational>& terms() const noexcept { return coeffs_; }

    /// Coefficient at degree d; exact zero when not stored. Throws TruncationError if d > trunc().
    GaussianRational coeff(int d) const;

    /// Drops everything above `t` (no-op if t >= trunc()).
    LaurentSeries truncated(int t) const;

    LaurentSeries& operator+=(const LaurentSeries& o);
    LaurentSeries& operator-=(const LaurentSeries& o);
    LaurentSeries& operator*=(const GaussianRational& c);

    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(LaurentSeries a, const GaussianRational& c) { return a *= c; }
    friend LaurentSeries operator*(const GaussianRational& c, LaurentSeries a) { return a *= c; }
    LaurentSeries operator-() const;

    /// Structural equality: same window and same coefficients.
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) = default;

    /// True when both series agree on every degree known to both.
    bool agrees_with(const LaurentSeries& o) const;

    std::string to_string() const;

private:
    void insert_or_drop(int d, GaussianRational c);

    std::map<int, GaussianRational> coeffs_;
    int trunc_ = kExact;
};

/// Multiplicative inverse in the Laurent ring, through the relative window of `a`.
/// Throws SingularRatioError for a zero/window-empty input, and std::invalid_argument
/// for an exact multi-term series (whose inverse is an infinite series).
LaurentSeries invert(const LaurentSeries& a);

/// d/dz with z = i*eps, i.e. -i d/deps: eps^d -> -i*d*eps^(d-1); window shrinks by one.
LaurentSeries diff_z(const LaurentSeries& a);

/// a^k by repeated multiplication, a^0 = 1 (exact).
LaurentSeries pow(const LaurentSeries& a, int k);

} // namespace splab
