#include "splab/json_io.hpp"

#include <stdexcept>

namespace splab {

namespace {

mpq_class rational_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return mpq_class(j.get<long>());
    }
    throw std::invalid_argument("expected a rational as \"a/b\" text or an integer, got " + j.dump());
}

} // namespace

void to_json(nlohmann::json& j, const GaussianRational& z) {
    j = nlohmann::json{{"re", rational_text(z.real())}, {"im", rational_text(z.imag())}};
}

void from_json(const nlohmann::json& j, GaussianRational& z) {
    if (!j.is_object()) {
        z = GaussianRational(rational_from_json(j));
        return;
    }
    mpq_class re = j.contains("re") ? rational_from_json(j.at("re")) : mpq_class(0);
    mpq_class im = j.contains("im") ? rational_from_json(j.at("im")) : mpq_class(0);
    z = GaussianRational(std::move(re), std::move(im));
}

void to_json(nlohmann::json& j, const LaurentSeries& s) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [d, c] : s.terms()) {
        terms.push_back(nlohmann::json::array({d, c}));
    }
    j = nlohmann::json{{"terms", std::move(terms)}};
    if (s.is_exact()) {
        j["trunc"] = nullptr;
    } else {
        j["trunc"] = s.trunc();
    }
}

void from_json(const nlohmann::json& j, LaurentSeries& s) {
    std::vector<std::pair<int, GaussianRational>> terms;
    for (const auto& t : j.at("terms")) {
        terms.emplace_back(t.at(0).get<int>(), t.at(1).get<GaussianRational>());
    }
    const auto& tr = j.at("trunc");
    s = LaurentSeries(terms, tr.is_null() ? LaurentSeries::kExact : tr.get<int>());
}

} // namespace splab
