#pragma once

#include "splab/conformal_map.hpp"
#include "splab/gaussian_rational.hpp"
#include "splab/laurent_series.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace splab {

template <class R>
struct RingTraits;

template <>
struct RingTraits<GaussianRational> {
    static GaussianRational one() { return 1; }
    static GaussianRational zero() { return 0; }
};

template <>
struct RingTraits<LaurentSeries> {
    static LaurentSeries one() { return LaurentSeries::one(); }
    static LaurentSeries zero() { return LaurentSeries::zero(); }
};

template <class R>
concept BellRing = requires(R a, R b, GaussianRational c) {
    { a * b } -> std::convertible_to<R>;
    { a + b } -> std::convertible_to<R>;
    { a * c } -> std::convertible_to<R>;
    RingTraits<R>::one();
    RingTraits<R>::zero();
};

namespace detail {

inline mpz_class factorial(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline mpz_class pow_ui(const mpz_class& b, int e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

template <BellRing R>
void bell_pvectors(int j, int parts_left, int weight_left, std::span<const R> g,
                   std::vector<std::vector<R>>& powers, const mpq_class& coef, const R& partial, R& acc) {
    if (j == 0) {
        if (parts_left == 0 && weight_left == 0) {
            acc = acc + partial * GaussianRational(coef);
        }
        return;
    }
    // p_j copies of g_j; remaining indices 1..j-1 must supply the rest
    for (int p = 0; p <= parts_left && p * j <= weight_left; ++p) {
        const int rest_parts = parts_left - p;
        const int rest_weight = weight_left - p * j;
        // the smallest weight the rest can carry is rest_parts (all ones), the largest (j-1)*rest_parts
        if (rest_weight < rest_parts || rest_weight > (j - 1) * rest_parts) {
            continue;
        }
        auto& pw = powers[static_cast<std::size_t>(j)];
        while (static_cast<int>(pw.size()) <= p) {
            pw.push_back(pw.back() * g[static_cast<std::size_t>(j - 1)]);
        }
        mpq_class c = coef / (mpq_class(factorial(static_cast<unsigned long>(p))) *
                              mpq_class(pow_ui(factorial(static_cast<unsigned long>(j)), p)));
        bell_pvectors<R>(j - 1, rest_parts, rest_weight, g, powers, c,
                         p == 0 ? partial : partial * pw[static_cast<std::size_t>(p)], acc);
    }
}

} // namespace detail

/// Incomplete Bell polynomial
///   B_{n|k}(g_1, ..., g_{n-k+1}) = n! sum prod_j (g_j/j!)^{p_j} / p_j!
/// over p with sum p_j = k and sum j p_j = n. B_{0|0} = 1; zero when k > n or
/// exactly one of n, k is zero.
template <BellRing R>
R bell_generic(int n, int k, std::span<const R> g) {
    if (n < 0 || k < 0) {
        throw std::invalid_argument("bell_generic: n and k must be non-negative");
    }
    if (n == 0 && k == 0) {
        return RingTraits<R>::one();
    }
    if (k == 0 || k > n) {
        return RingTraits<R>::zero();
    }
    const int width = n - k + 1;
    if (static_cast<int>(g.size()) < width) {
        throw std::invalid_argument("bell_generic: B_{n|k} needs n-k+1 arguments");
    }
    std::vector<std::vector<R>> powers(static_cast<std::size_t>(width) + 1, std::vector<R>{RingTraits<R>::one()});
    R acc = RingTraits<R>::zero();
    detail::bell_pvectors<R>(width, k, n, g, powers, mpq_class(detail::factorial(static_cast<unsigned long>(n))),
                             RingTraits<R>::one(), acc);
    return acc;
}

template <BellRing R>
R bell_generic(int n, int k, const std::vector<R>& g) {
    return bell_generic<R>(n, k, std::span<const R>(g));
}

/// Complete Bell polynomial: sum_{k=0}^n B_{n|k}(g).
template <BellRing R>
R complete_bell(int n, std::span<const R> g) {
    R acc = RingTraits<R>::zero();
    for (int k = 0; k <= n; ++k) {
        acc = acc + bell_generic<R>(n, k, g);
    }
    return acc;
}

template <BellRing R>
R complete_bell(int n, const std::vector<R>& g) {
    return complete_bell<R>(n, std::span<const R>(g));
}

/// The same polynomial written as a sum over nondecreasing length-k partitions
/// n = n_1 + ... + n_k, each weighted by n!/(prod n_j! * prod_{distinct} q!),
/// where q is the multiplicity of a part. Independent enumeration from bell_generic.
template <BellRing R>
R bell_multiset(int n, int k, std::span<const R> g) {
    if (n == 0 && k == 0) {
        return RingTraits<R>::one();
    }
    if (k <= 0 || k > n) {
        return RingTraits<R>::zero();
    }
    R acc = RingTraits<R>::zero();
    std::vector<int> parts(static_cast<std::size_t>(k), 1);
    // iterate nondecreasing tuples with sum n: start from (1,...,1,n-k+1)
    parts.back() = n - k + 1;
    const mpz_class nfact = detail::factorial(static_cast<unsigned long>(n));
    for (;;) {
        mpz_class denom = 1;
        R term = RingTraits<R>::one();
        for (std::size_t a = 0; a < parts.size();) {
            std::size_t b = a;
            while (b < parts.size() && parts[b] == parts[a]) {
                term = term * g[static_cast<std::size_t>(parts[a] - 1)];
                denom *= detail::factorial(static_cast<unsigned long>(parts[a]));
                ++b;
            }
            denom *= detail::factorial(b - a);
            a = b;
        }
        acc = acc + term * GaussianRational(mpq_class(nfact, denom));
        // next nondecreasing tuple in lexicographic order
        int i = k - 2;
        for (; i >= 0; --i) {
            // raise parts[i] by one, reset parts[i+1..k-2] to the same value, the last absorbs the rest
            const int v = parts[static_cast<std::size_t>(i)] + 1;
            int used = 0;
            for (int a = 0; a < i; ++a) {
                used += parts[static_cast<std::size_t>(a)];
            }
            const int remaining = n - used - v * (k - 1 - i);
            if (remaining >= v) {
                for (int a = i; a < k - 1; ++a) {
                    parts[static_cast<std::size_t>(a)] = v;
                }
                parts.back() = remaining;
                break;
            }
        }
        if (i < 0) {
            break;
        }
    }
    return acc;
}

/// B_{n|k}(f(z); z) / f(z)^k, i.e. bell_generic over the ratios R_1, ..., R_{n-k+1}.
LaurentSeries bell_of_map(const MapSpec& ms, int n, int k, int T);

} // namespace splab
