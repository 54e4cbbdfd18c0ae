#pragma once

#include "splab/gaussian_rational.hpp"
#include "splab/laurent_series.hpp"

#include <json.hpp>

namespace splab {

// {"re": "a/b", "im": "c/d"}; integers and JSON numbers are accepted on input.
void to_json(nlohmann::json& j, const GaussianRational& z);
void from_json(const nlohmann::json& j, GaussianRational& z);

// {"terms": [[degree, {re, im}], ...], "trunc": T}; exact series carry "trunc": null.
void to_json(nlohmann::json& j, const LaurentSeries& s);
void from_json(const nlohmann::json& j, LaurentSeries& s);

} // namespace splab
