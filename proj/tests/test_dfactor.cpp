#include "splab/bell.hpp"
#include "splab/conformal_map.hpp"
#include "splab/dfactor.hpp"

#include <doctest.h>

using splab::GaussianRational;
using splab::LaurentSeries;

namespace {

const GaussianRational I = GaussianRational::i();

GaussianRational fact(int n) { return GaussianRational(mpq_class(splab::detail::factorial(static_cast<unsigned long>(n)))); }

long stirling2(int n, int k) {
    if (n == 0 || k == 0) {
        return n == k ? 1 : 0;
    }
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

} // namespace

TEST_CASE("D(n) for h = 1") {
    const splab::MapSpec one = splab::builtin_map("one");
    CHECK(splab::dfactor(one, 1, 8) == LaurentSeries::monomial(-2, -1));
    CHECK(splab::dfactor(one, 2, 8) ==
          LaurentSeries({{-3, GaussianRational(-2) * I}, {-4, -I}}, LaurentSeries::kExact));
    for (int n = 1; n <= 10; ++n) {
        const LaurentSeries D = splab::dfactor(one, n, 8);
        // least singular term of D(n)/n! is (i/eps)^{n+1}
        CHECK(D.max_degree() == -(n + 1));
        CHECK(D.coeff(-(n + 1)) / fact(n) == splab::i_pow(n + 1));
        // every B_{n|k}(R) starts at eps^{-2n} with coefficient S2(n,k) (-i)^n
        CHECK(D.valuation() == -2 * n);
        GaussianRational lead = 0;
        for (int k = 1; k <= n; ++k) {
            const GaussianRational sign = k % 2 ? GaussianRational(1) : GaussianRational(-1);
            lead += sign * fact(k) * GaussianRational(stirling2(n, k));
        }
        CHECK(D.coeff(-2 * n) == -I * lead * splab::i_pow(-n));
    }
}

TEST_CASE("D(1) for h = cos is -1/eps^2 - tanh(eps)") {
    const LaurentSeries D = splab::dfactor(splab::builtin_map("cos"), 1, 8);
    CHECK(D.coeff(-2) == GaussianRational(-1));
    CHECK(D.coeff(-1) == GaussianRational(0));
    CHECK(D.coeff(0) == GaussianRational(0));
    CHECK(D.coeff(1) == GaussianRational(-1));
    CHECK(D.coeff(3) == GaussianRational(1, 3));
    CHECK(D.coeff(5) == GaussianRational(-2, 15));
    CHECK(D.coeff(7) == GaussianRational(17, 315));
}

TEST_CASE("D(n) is built from signed Bell sums") {
    const splab::MapSpec cos = splab::builtin_map("cos");
    for (int n = 1; n <= 5; ++n) {
        LaurentSeries acc;
        for (int k = 1; k <= n; ++k) {
            acc += splab::bell_of_map(cos, n, k, 10) * (GaussianRational(k % 2 ? 1 : -1) * fact(k));
        }
        CHECK(splab::dfactor(cos, n, 10).agrees_with(acc * -I));
    }
}
