#include "splab/bell.hpp"
#include "splab/conformal_map.hpp"
#include "splab/errors.hpp"
#include "splab/json_io.hpp"

#include <doctest.h>

#include <stdexcept>
#include <vector>

using splab::GaussianRational;
using splab::LaurentSeries;
using splab::MapSpec;

namespace {

const GaussianRational I = GaussianRational::i();

LaurentSeries ls(std::vector<std::pair<int, GaussianRational>> t, int T = LaurentSeries::kExact) {
    return LaurentSeries(t, T);
}

// tanh(eps) = sinh/cosh by plain long division of rational Taylor vectors
std::vector<mpq_class> tanh_taylor(int n) {
    std::vector<mpq_class> s(static_cast<std::size_t>(n) + 1, 0), c(static_cast<std::size_t>(n) + 1, 0);
    mpq_class f = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            f /= k;
        }
        (k % 2 ? s : c)[static_cast<std::size_t>(k)] = f;
    }
    std::vector<mpq_class> t(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 0; k <= n; ++k) {
        mpq_class acc = s[static_cast<std::size_t>(k)];
        for (int j = 0; j < k; ++j) {
            acc -= t[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(k - j)];
        }
        t[static_cast<std::size_t>(k)] = acc;
    }
    return t;
}

MapSpec plain(std::vector<GaussianRational> coeffs, bool polynomial = true) {
    MapSpec ms;
    ms.name = "plain";
    ms.has_essential_factor = false;
    ms.polynomial = polynomial;
    ms.h_coeffs = std::move(coeffs);
    return ms;
}

} // namespace

TEST_CASE("log-derivative examples") {
    const MapSpec one = splab::builtin_map("one");
    CHECK(splab::log_derivative(one, 10) == ls({{-2, -I}}));

    const MapSpec cos = splab::builtin_map("cos");
    const int T = 9;
    const LaurentSeries L = splab::log_derivative(cos, T);
    CHECK(L.trunc() >= T);
    const auto th = tanh_taylor(T);
    CHECK(L.coeff(-2) == -I);
    for (int d = -1; d <= T; ++d) {
        const GaussianRational want = d >= 0 ? GaussianRational(-th[static_cast<std::size_t>(d)]) * I : 0;
        CHECK(L.coeff(d) == want);
    }
    CHECK(L.coeff(1) == -I);
    CHECK(L.coeff(3) == I * GaussianRational(1, 3));

    MapSpec flat = one;
    flat.builtin = splab::BuiltinMap::none;
    flat.h_coeffs = {1};
    flat.polynomial = true;
    flat.has_essential_factor = false;
    CHECK(splab::log_derivative(flat, 5).is_zero());
}

TEST_CASE("h(0) = 0 is rejected for the essential class") {
    MapSpec ms;
    ms.name = "bad";
    ms.h_coeffs = {0, 1};
    CHECK_THROWS_AS(ms.validate(), std::invalid_argument);
    CHECK_THROWS_AS(splab::log_derivative(ms, 4), std::invalid_argument);
}

TEST_CASE("short coefficient lists raise truncation errors") {
    MapSpec ms;
    ms.name = "short";
    ms.h_coeffs = {1, 1, 1};
    CHECK_THROWS_AS(splab::log_derivative(ms, 6), splab::TruncationError);
    CHECK_NOTHROW(splab::log_derivative(ms, 1));
}

TEST_CASE("derivative ratios for h = 1") {
    const MapSpec one = splab::builtin_map("one");
    CHECK(splab::derivative_ratio(one, 0, 8) == LaurentSeries::one());
    CHECK(splab::derivative_ratio(one, 1, 8) == splab::log_derivative(one, 8));
    CHECK(splab::derivative_ratio(one, 2, 8) == ls({{-3, 2}, {-4, -1}}));
    CHECK(splab::derivative_ratio(one, 3, 8) == ls({{-4, GaussianRational(6) * I}, {-5, GaussianRational(-6) * I}, {-6, I}}));
}

TEST_CASE("leading-degree law for h = 1") {
    const MapSpec one = splab::builtin_map("one");
    const LaurentSeries L = splab::log_derivative(one, 6);
    for (int n = 1; n <= 10; ++n) {
        const LaurentSeries R = splab::derivative_ratio(one, n, 6);
        CHECK(R.valuation() == -2 * n);
        const LaurentSeries rest = R - pow(L, n);
        if (!rest.is_zero()) {
            CHECK(rest.valuation() >= -2 * n + 1);
        }
    }
}

TEST_CASE("Faa di Bruno closure: complete Bell of log-derivatives gives R_n") {
    for (const char* name : {"one", "cos"}) {
        const MapSpec ms = splab::builtin_map(name);
        const int T = 12;
        std::vector<LaurentSeries> u{splab::log_derivative(ms, T)};
        for (int k = 1; k < 10; ++k) {
            u.push_back(diff_z(u.back()));
        }
        for (int n = 1; n <= 10; ++n) {
            CHECK(splab::complete_bell<LaurentSeries>(n, u).agrees_with(splab::derivative_ratio(ms, n, T)));
        }
    }
}

TEST_CASE("plain maps reproduce polynomial derivatives") {
    // f = z + z^2: f' = 1 + 2z, f'' = 2, f''' = 0
    const MapSpec f = plain({0, 1, 1});
    CHECK(splab::map_derivative(f, 1, 6) == ls({{0, 1}, {1, GaussianRational(2) * I}}));
    CHECK(splab::map_derivative(f, 2, 6) == ls({{0, 2}}));
    CHECK(splab::map_derivative(f, 3, 6).is_zero());
    // f''/f' = 2/(1 + 2z) = 2 - 4z + 8z^2 - ...
    const LaurentSeries A = splab::derivative_over_first(f, 1, 4);
    for (int d = 0; d <= 4; ++d) {
        GaussianRational z_coeff = GaussianRational(2) * GaussianRational(mpq_class(mpz_class(d % 2 ? -1 : 1) << d));
        CHECK(A.coeff(d) == z_coeff * splab::i_pow(d));
    }
    CHECK_THROWS_AS(splab::map_derivative(splab::builtin_map("cos"), 1, 4), std::invalid_argument);
}

TEST_CASE("h-spec json") {
    const nlohmann::json j = nlohmann::json::parse(R"({"name":"lin","essential":true,"h_coeffs":[1,{"re":"1/2","im":"0"}]})");
    const MapSpec ms = splab::map_from_json(j);
    CHECK(ms.name == "lin");
    CHECK(ms.h_coefficient(1) == GaussianRational(1, 2));
    CHECK_THROWS_AS(ms.h_coefficient(2), splab::TruncationError);
    const MapSpec back = splab::map_from_json(splab::map_to_json(ms));
    CHECK(back.identity() == ms.identity());
    CHECK_THROWS_AS(splab::map_from_json(nlohmann::json::parse(R"({"name":"z","essential":true,"h_coeffs":[0,1]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(splab::load_map("no-such-map"), std::invalid_argument);
    CHECK(splab::load_map("cos").identity() == "cos");
}
