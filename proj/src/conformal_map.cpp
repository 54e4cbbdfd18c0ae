#include "splab/conformal_map.hpp"

#include "splab/errors.hpp"
#include "splab/json_io.hpp"
#include "splab/series_cache.hpp"

#include <fstream>
#include <stdexcept>

namespace splab {

namespace {

GaussianRational cos_coefficient(int k) {
    if (k % 2 != 0) {
        return {};
    }
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
    mpq_class c(mpz_class((k / 2) % 2 == 0 ? 1 : -1), fact);
    return GaussianRational(c);
}

std::string cache_key(const MapSpec& ms, const char* kind, int n, int T) {
    return ms.identity() + "|" + kind + "|" + std::to_string(n) + "|" + std::to_string(T);
}

} // namespace

bool MapSpec::knows_coefficient(int k) const {
    return builtin != BuiltinMap::none || polynomial || k < static_cast<int>(h_coeffs.size());
}

GaussianRational MapSpec::h_coefficient(int k) const {
    switch (builtin) {
    case BuiltinMap::one: return k == 0 ? GaussianRational{1} : GaussianRational{};
    case BuiltinMap::cos: return cos_coefficient(k);
    case BuiltinMap::none: break;
    }
    if (k < static_cast<int>(h_coeffs.size())) {
        return h_coeffs[static_cast<std::size_t>(k)];
    }
    if (polynomial) {
        return {};
    }
    throw TruncationError("truncation insufficient: map '" + name + "' lists " + std::to_string(h_coeffs.size()) +
                          " Taylor coefficients, z^" + std::to_string(k) + " requested");
}

std::string MapSpec::identity() const {
    switch (builtin) {
    case BuiltinMap::one: return "one";
    case BuiltinMap::cos: return "cos";
    case BuiltinMap::none: break;
    }
    return name + "#" + stable_hash(map_to_json(*this).dump());
}

void MapSpec::validate() const {
    if (has_essential_factor && h_coefficient(0).is_zero()) {
        throw std::invalid_argument("map '" + name + "': h(0) must be nonzero");
    }
}

MapSpec builtin_map(std::string_view name) {
    MapSpec ms;
    ms.name = std::string(name);
    ms.has_essential_factor = true;
    if (name == "one") {
        ms.builtin = BuiltinMap::one;
    } else if (name == "cos") {
        ms.builtin = BuiltinMap::cos;
    } else {
        throw std::invalid_argument("unknown builtin map '" + std::string(name) + "' (expected 'one' or 'cos')");
    }
    return ms;
}

MapSpec load_map(const std::string& name_or_path) {
    if (name_or_path == "one" || name_or_path == "cos") {
        return builtin_map(name_or_path);
    }
    std::ifstream in(name_or_path);
    if (!in) {
        throw std::invalid_argument("'" + name_or_path + "' is neither a builtin map nor a readable h-spec file");
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("h-spec file '" + name_or_path + "': " + e.what());
    }
    return map_from_json(j);
}

MapSpec map_from_json(const nlohmann::json& j) {
    MapSpec ms;
    try {
        ms.name = j.at("name").get<std::string>();
        ms.has_essential_factor = j.at("essential").get<bool>();
        ms.h_coeffs = j.at("h_coeffs").get<std::vector<GaussianRational>>();
        ms.polynomial = j.value("polynomial", false);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed h-spec: ") + e.what());
    }
    if (ms.h_coeffs.empty()) {
        throw std::invalid_argument("h-spec '" + ms.name + "' has no coefficients");
    }
    ms.validate();
    return ms;
}

nlohmann::json map_to_json(const MapSpec& ms) {
    nlohmann::json j{{"name", ms.name}, {"essential", ms.has_essential_factor}, {"h_coeffs", ms.h_coeffs}};
    if (ms.polynomial) {
        j["polynomial"] = true;
    }
    return j;
}

LaurentSeries h_series(const MapSpec& ms, int T) {
    if (T < 0) {
        return LaurentSeries::zero(T);
    }
    const bool exact = ms.builtin == BuiltinMap::one ||
                       (ms.polynomial && static_cast<int>(ms.h_coeffs.size()) <= T + 1);
    std::vector<std::pair<int, GaussianRational>> terms;
    for (int k = 0; k <= T; ++k) {
        if (ms.builtin == BuiltinMap::one && k > 0) {
            break;
        }
        terms.emplace_back(k, ms.h_coefficient(k) * i_pow(k));
    }
    return LaurentSeries(terms, exact ? LaurentSeries::kExact : T);
}

LaurentSeries log_derivative(const MapSpec& ms, int T) {
    return *SeriesCache::global().get_or_compute(cache_key(ms, "L", 1, T), [&] {
        if (ms.h_coefficient(0).is_zero()) {
            throw std::invalid_argument("map '" + ms.name + "': h(0) = 0 has no log-derivative at 0");
        }
        const LaurentSeries h = h_series(ms, T + 1);
        const LaurentSeries dh = diff_z(h);
        LaurentSeries L = h.is_exact() && h.terms().size() == 1 ? dh * invert(h) : dh * invert(h.truncated(T));
        if (ms.has_essential_factor) {
            // i/z^2 at z = i*eps
            L += LaurentSeries::monomial(-2, -GaussianRational::i());
        }
        return L;
    });
}

LaurentSeries derivative_ratio(const MapSpec& ms, int n, int T) {
    if (n < 0) {
        throw std::invalid_argument("derivative_ratio: n must be >= 0");
    }
    if (n == 0) {
        return LaurentSeries::one();
    }
    if (n == 1) {
        return log_derivative(ms, T);
    }
    return *SeriesCache::global().get_or_compute(cache_key(ms, "R", n, T), [&] {
        const LaurentSeries prev = derivative_ratio(ms, n - 1, T);
        return prev * log_derivative(ms, T) + diff_z(prev);
    });
}

LaurentSeries map_derivative(const MapSpec& ms, int n, int T) {
    if (ms.has_essential_factor) {
        throw std::invalid_argument("map_derivative: f with the essential factor has no Laurent expansion");
    }
    LaurentSeries d = h_series(ms, T + n);
    for (int j = 0; j < n; ++j) {
        d = diff_z(d);
    }
    return d;
}

LaurentSeries derivative_over_first(const MapSpec& ms, int j, int T) {
    if (j < 0) {
        throw std::invalid_argument("derivative_over_first: j must be >= 0");
    }
    if (j == 0) {
        return LaurentSeries::one();
    }
    return *SeriesCache::global().get_or_compute(cache_key(ms, "Y", j, T), [&] {
        if (ms.has_essential_factor) {
            return derivative_ratio(ms, j + 1, T) * invert(derivative_ratio(ms, 1, T));
        }
        LaurentSeries d1 = map_derivative(ms, 1, T);
        if (d1.is_exact() && d1.terms().size() > 1) {
            d1 = d1.truncated(T);
        }
        return map_derivative(ms, j + 1, T) * invert(d1);
    });
}

} // namespace splab
