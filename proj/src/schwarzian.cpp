#include "splab/schwarzian.hpp"

#include "splab/bell.hpp"
#include "splab/delta_poly.hpp"
#include "splab/errors.hpp"
#include "splab/series_cache.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace splab {

namespace {

GaussianRational q(const mpz_class& num, const mpz_class& den) {
    return GaussianRational(mpq_class(num, den));
}

mpz_class fact(int n) { return detail::factorial(static_cast<unsigned long>(n)); }

int sign_pow(int e) { return (e % 2 == 0) ? 1 : -1; }

std::string key(const MapSpec& ms, const char* kind, int n1, int n2, int T) {
    return ms.identity() + "|" + kind + "|" + std::to_string(n1) + "," + std::to_string(n2) + "|" + std::to_string(T);
}

// d/dz (f'^k b) / f'^k = b' + k A b
LaurentSeries lift(const LaurentSeries& b, int k, const LaurentSeries& A) {
    return diff_z(b) + A * b * GaussianRational(k);
}

LaurentSeries compute_general(const MapSpec& ms, int n1, int n2, int T) {
    const int K = n1 + n2;
    std::vector<LaurentSeries> Y;
    for (int j = 0; j <= K + 1; ++j) {
        Y.push_back(derivative_over_first(ms, j, T));
    }
    const LaurentSeries& A = Y[1];

    // g_s = (1 + (-1)^s) / (2^{s+1} (s+1)) Y_s; only even s survive
    std::vector<LaurentSeries> g;
    for (int s = 1; s <= K + 1; ++s) {
        if (s % 2 == 1) {
            g.push_back(LaurentSeries::zero());
        } else {
            g.push_back(Y[static_cast<std::size_t>(s)] * q(2, detail::pow_ui(2, s + 1) * (s + 1)));
        }
    }
    // bp[p][q] = B_{p|q}(g)
    std::vector<std::vector<LaurentSeries>> bp(static_cast<std::size_t>(K) + 1);
    for (int p = 0; p <= K; ++p) {
        for (int qq = 0; qq <= p; ++qq) {
            bp[static_cast<std::size_t>(p)].push_back(bell_generic<LaurentSeries>(p, qq, g));
        }
    }

    LaurentSeries total;
    bool first = true;
    for (int k1 = 1; k1 <= n1; ++k1) {
        const LaurentSeries b1 = bell_generic<LaurentSeries>(n1, k1, Y);
        for (int k2 = 1; k2 <= n2; ++k2) {
            const LaurentSeries b2 = bell_generic<LaurentSeries>(n2, k2, Y);
            const int Kk = k1 + k2;
            std::vector<LaurentSeries> d1{b1};
            std::vector<LaurentSeries> d2{b2};
            for (int m = 0; m < Kk; ++m) {
                d1.push_back(lift(d1.back(), k1, A));
                d2.push_back(lift(d2.back(), k2, A));
            }
            for (int m1 = 0; m1 <= Kk; ++m1) {
                for (int m2 = 0; m1 + m2 <= Kk; ++m2) {
                    const int p = Kk - m1 - m2;
                    const LaurentSeries d12 = d1[static_cast<std::size_t>(m1)] * d2[static_cast<std::size_t>(m2)];
                    for (int qq = 0; qq <= p; ++qq) {
                        const LaurentSeries& b = bp[static_cast<std::size_t>(p)][static_cast<std::size_t>(qq)];
                        if (b.is_zero() && b.is_exact()) {
                            continue;
                        }
                        const mpz_class num = -sign_pow(k1 + m2 + qq) * fact(Kk + qq - 1);
                        const mpz_class den = detail::pow_ui(2, m1 + m2) * fact(m1) * fact(m2) * fact(p);
                        LaurentSeries t = d12 * b * q(num, den);
                        if (first) {
                            total = std::move(t);
                            first = false;
                        } else {
                            total += t;
                        }
                    }
                }
            }
        }
    }
    return total * q(1, fact(n1) * fact(n2));
}

// x(z + sign*delta/2) = sum_m (sign/2)^m delta^m x^(m) / m!
DeltaPoly taylor_shift(const LaurentSeries& x, int sign, int order) {
    DeltaPoly out(order);
    LaurentSeries d = x;
    for (int m = 0; m <= order; ++m) {
        out.set(m, d * q(sign_pow(sign < 0 ? m : 0), detail::pow_ui(2, m) * fact(m)));
        if (m < order) {
            d = diff_z(d);
        }
    }
    return out;
}

// f(z + sign*delta/2) / f(z) = exp(log f(z+..) - log f(z)), with (log f)^(m) = L^(m-1)
DeltaPoly shifted_ratio(const LaurentSeries& L, int sign, int order) {
    DeltaPoly u(order);
    LaurentSeries d = L;
    for (int m = 1; m <= order; ++m) {
        u.set(m, d * q(sign_pow(sign < 0 ? m : 0), detail::pow_ui(2, m) * fact(m)));
        if (m < order) {
            d = diff_z(d);
        }
    }
    return exp_series(u);
}

void check_compose_inputs(const MapSpec& f, const MapSpec& g) {
    if (f.has_essential_factor || g.has_essential_factor) {
        throw std::invalid_argument("composition check: both maps must be plain (no essential factor)");
    }
    if (!f.h_coefficient(0).is_zero()) {
        throw std::invalid_argument("composition check: inner map must fix the origin");
    }
    if (f.h_coefficient(1).is_zero() || g.h_coefficient(1).is_zero()) {
        throw std::invalid_argument("composition check: maps need nonzero first derivative at 0");
    }
}

// eps-series with valuation >= 0 -> Taylor coefficients in z, c_d eps^d = c_d (-i)^d z^d
std::vector<GaussianRational> to_taylor(const LaurentSeries& s, int P) {
    if (!s.is_zero() && s.valuation() < 0) {
        throw std::invalid_argument("to_taylor: series has a pole");
    }
    if (s.trunc() < P) {
        throw TruncationError("to_taylor: series not known through the requested order");
    }
    std::vector<GaussianRational> a(static_cast<std::size_t>(P) + 1, GaussianRational(0));
    for (const auto& [d, c] : s.terms()) {
        if (d <= P) {
            a[static_cast<std::size_t>(d)] = c * i_pow(-d);
        }
    }
    return a;
}

// a(b(z)) for b(0) = 0, through z^P (Horner)
std::vector<GaussianRational> compose_taylor(const std::vector<GaussianRational>& a,
                                             const std::vector<GaussianRational>& b, int P) {
    auto mul = [P](const std::vector<GaussianRational>& x, const std::vector<GaussianRational>& y) {
        std::vector<GaussianRational> r(static_cast<std::size_t>(P) + 1, GaussianRational(0));
        for (int i = 0; i <= P; ++i) {
            if (x[static_cast<std::size_t>(i)].is_zero()) {
                continue;
            }
            for (int j = 0; i + j <= P; ++j) {
                r[static_cast<std::size_t>(i + j)] += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
            }
        }
        return r;
    };
    std::vector<GaussianRational> r(static_cast<std::size_t>(P) + 1, GaussianRational(0));
    for (int k = P; k >= 0; --k) {
        r = mul(r, b);
        r[0] += a[static_cast<std::size_t>(k)];
    }
    return r;
}

LaurentSeries from_taylor(const std::vector<GaussianRational>& a, int P) {
    std::vector<std::pair<int, GaussianRational>> terms;
    for (int d = 0; d <= P; ++d) {
        terms.emplace_back(d, a[static_cast<std::size_t>(d)] * i_pow(d));
    }
    return LaurentSeries(terms, P);
}

std::vector<GaussianRational> map_taylor(const MapSpec& ms, int P) {
    std::vector<GaussianRational> a;
    for (int k = 0; k <= P; ++k) {
        a.push_back(ms.knows_coefficient(k) ? ms.h_coefficient(k) : throw TruncationError("map Taylor data too short"));
    }
    return a;
}

} // namespace

LaurentSeries schwarzian_11(const MapSpec& ms, int T) {
    const LaurentSeries A = derivative_over_first(ms, 1, T);
    return diff_z(A) * q(1, 6) - A * A * q(1, 12);
}

LaurentSeries schwarzian_general(const MapSpec& ms, int n1, int n2, int T) {
    if (n1 < 1 || n2 < 1) {
        throw std::invalid_argument("schwarzian_general: indices must be >= 1");
    }
    return *SeriesCache::global().get_or_compute(key(ms, "S", n1, n2, T),
                                                 [&] { return compute_general(ms, n1, n2, T); });
}

PointSplitExpansion schwarzian_point_split_expansion(const MapSpec& ms, int n1, int n2, int T) {
    if (n1 < 1 || n2 < 1) {
        throw std::invalid_argument("schwarzian_point_split: indices must be >= 1");
    }
    const int K = n1 + n2;
    const int M = K; // delta orders needed to reach delta^0 after the delta^-K prefactor
    const LaurentSeries L = log_derivative(ms, T);

    const DeltaPoly Ep = shifted_ratio(L, +1, M + 1);
    const DeltaPoly Em = shifted_ratio(L, -1, M + 1);
    // f(z+d/2) - f(z-d/2) = f(z) delta W, with W(0) = L
    const DeltaPoly diff = Ep - Em;
    DeltaPoly W(M);
    for (int k = 1; k <= M + 1; ++k) {
        W.set(k - 1, diff[k]);
    }
    const DeltaPoly Winv = invert(W);

    std::vector<DeltaPoly> Rp{RingTraits<DeltaPoly>::one()};
    std::vector<DeltaPoly> Rm{RingTraits<DeltaPoly>::one()};
    for (int j = 1; j <= std::max(n1, n2); ++j) {
        const LaurentSeries Rj = derivative_ratio(ms, j, T);
        Rp.push_back(taylor_shift(Rj, +1, M));
        Rm.push_back(taylor_shift(Rj, -1, M));
    }
    const std::vector<DeltaPoly> gp(Rp.begin() + 1, Rp.end());
    const std::vector<DeltaPoly> gm(Rm.begin() + 1, Rm.end());

    // total[k + K] = coefficient of delta^k for k in [-K, 0]
    std::vector<LaurentSeries> total(static_cast<std::size_t>(K) + 1, LaurentSeries::zero());
    for (int k1 = 1; k1 <= n1; ++k1) {
        const DeltaPoly b1 = bell_generic<DeltaPoly>(n1, k1, gp);
        for (int k2 = 1; k2 <= n2; ++k2) {
            const DeltaPoly b2 = bell_generic<DeltaPoly>(n2, k2, gm);
            const int Kk = k1 + k2;
            DeltaPoly t = b1 * b2 * pow(Ep, k1) * pow(Em, k2) * pow(Winv, Kk);
            // contraction -(-1)^{k1} (Kk-1)! / (f(z+)-f(z-))^Kk, the f^Kk having cancelled against the ratios
            const GaussianRational c(mpq_class(mpz_class(-sign_pow(k1) * fact(Kk - 1))));
            for (int k = 0; k <= M && k - Kk <= 0; ++k) {
                total[static_cast<std::size_t>(k - Kk + K)] += t[k] * c;
            }
        }
    }
    // flat-space counterterm (-1)^{n1} (K-1)! delta^-K
    total[0] += LaurentSeries::constant(GaussianRational(mpq_class(mpz_class(sign_pow(n1) * fact(K - 1)))));

    PointSplitExpansion out;
    out.finite = total[static_cast<std::size_t>(K)] * q(1, fact(n1) * fact(n2));
    for (int m = 1; m <= K; ++m) {
        out.poles.push_back(total[static_cast<std::size_t>(K - m)]);
    }
    return out;
}

LaurentSeries schwarzian_point_split(const MapSpec& ms, int n1, int n2, int T) {
    PointSplitExpansion e = schwarzian_point_split_expansion(ms, n1, n2, T);
    for (std::size_t m = 0; m < e.poles.size(); ++m) {
        if (!e.poles[m].is_zero()) {
            throw ConventionError("point-split pole delta^-" + std::to_string(m + 1) + " does not cancel: " +
                                  e.poles[m].to_string());
        }
    }
    return e.finite;
}

CompositionReport schwarzian_compose_report(const MapSpec& f, const MapSpec& g, int n1, int n2, int T) {
    check_compose_inputs(f, g);
    const int P = T + n1 + n2 + 2;

    const std::vector<GaussianRational> ft = map_taylor(f, P);
    const std::vector<GaussianRational> gt = map_taylor(g, P);
    MapSpec gf;
    gf.name = g.name + "_o_" + f.name;
    gf.has_essential_factor = false;
    gf.h_coeffs = compose_taylor(gt, ft, P);

    CompositionReport r;
    r.lhs = schwarzian_general(gf, n1, n2, T);

    LaurentSeries rhs = schwarzian_general(f, n1, n2, T);
    std::vector<LaurentSeries> df;
    for (int j = 1; j <= std::max(n1, n2); ++j) {
        df.push_back(map_derivative(f, j, P));
    }
    for (int k1 = 1; k1 <= n1; ++k1) {
        const LaurentSeries b1 = bell_generic<LaurentSeries>(n1, k1, df);
        for (int k2 = 1; k2 <= n2; ++k2) {
            const LaurentSeries b2 = bell_generic<LaurentSeries>(n2, k2, df);
            const LaurentSeries sg = schwarzian_general(g, k1, k2, P);
            const int Ps = std::min(P, sg.trunc());
            const LaurentSeries sgf = from_taylor(compose_taylor(to_taylor(sg, Ps), ft, Ps), Ps);
            rhs += b1 * b2 * sgf * q(fact(k1) * fact(k2), fact(n1) * fact(n2));
        }
    }
    r.rhs = rhs;
    const int window = std::min(r.lhs.trunc(), r.rhs.trunc());
    if (window < 0) {
        throw TruncationError("composition check: common window below eps^0");
    }
    r.holds = r.lhs.agrees_with(r.rhs);
    return r;
}

bool schwarzian_compose_check(const MapSpec& f, const MapSpec& g, int n1, int n2, int T) {
    return schwarzian_compose_report(f, g, n1, n2, T).holds;
}

} // namespace splab
