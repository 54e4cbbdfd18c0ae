#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace splab {

/// Exact complex number re + i*im with arbitrary-precision rational parts.
/// Both parts are kept canonical (lowest terms, positive denominator) at all times.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {} // NOLINT(google-explicit-constructor)
    GaussianRational(mpq_class re, mpq_class im = 0);
    GaussianRational(long num, long den, long im_num = 0, long im_den = 1);

    static GaussianRational i() { return {0, 1, 1, 1}; }

    const mpq_class& real() const noexcept { return re_; }
    const mpq_class& imag() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const noexcept { return sgn(im_) == 0; }
    bool is_integer() const;

    GaussianRational conj() const { return {re_, -im_}; }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    /// Multiplicative inverse; throws std::domain_error on zero.
    GaussianRational inverse() const;

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Human-readable form, e.g. "5/6", "-i", "1/2+3i".
    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

/// i^k for any integer k (period 4).
GaussianRational i_pow(long k);

/// Parses "a", "-a/b" into a canonical rational. Throws std::invalid_argument.
mpq_class parse_rational(const std::string& text);
/// "a/b", or "a" when the denominator is 1.
std::string rational_text(const mpq_class& q);

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

} // namespace splab
