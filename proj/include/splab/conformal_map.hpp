#pragma once

#include "splab/gaussian_rational.hpp"
#include "splab/laurent_series.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace splab {

enum class BuiltinMap { none, one, cos };

/// A conformal map f(z) = h(z) * exp(-i/z) (or plain f = h when
/// `has_essential_factor` is false), with h given by its Taylor coefficients at 0.
///
/// f itself is never materialized: everything downstream consumes ratios
/// f^(n)/f or f^(n)/f', in which the essential factor cancels. f(0) is taken
/// as 0, the limit of exp(-i/z) along z = i*eps, eps -> 0+.
struct MapSpec {
    std::string name;
    std::vector<GaussianRational> h_coeffs; ///< index = power of z
    bool has_essential_factor = true;
    /// Coefficients past the end of h_coeffs are exactly zero (h is a polynomial).
    bool polynomial = false;
    BuiltinMap builtin = BuiltinMap::none;

    bool knows_coefficient(int k) const;
    /// Taylor coefficient of z^k; TruncationError when h_coeffs does not reach k.
    GaussianRational h_coefficient(int k) const;
    /// Stable key used by caches: builtin name, or name plus a content hash.
    std::string identity() const;
    /// Throws std::invalid_argument when h(0) = 0 for a map with the essential factor.
    void validate() const;
};

/// "one" (h = 1) or "cos" (h = cos z), both with the essential factor.
MapSpec builtin_map(std::string_view name);
/// Builtin name or path to an h-spec JSON file.
MapSpec load_map(const std::string& name_or_path);

/// h-spec file schema: {"name": str, "essential": bool, "h_coeffs": [{re, im}, ...]},
/// plus optional "polynomial": bool.
MapSpec map_from_json(const nlohmann::json& j);
nlohmann::json map_to_json(const MapSpec& ms);

/// h(i*eps) through eps^T (exact when h is a known polynomial of degree <= T).
LaurentSeries h_series(const MapSpec& ms, int T);

/// L = f'/f = h'/h + i/z^2 at z = i*eps, known through eps^T.
LaurentSeries log_derivative(const MapSpec& ms, int T);

/// R_n = f^(n)/f via R_0 = 1, R_{n+1} = R_n L + d/dz R_n. Memoized.
LaurentSeries derivative_ratio(const MapSpec& ms, int n, int T);

/// f^(n) itself; only for maps without the essential factor.
LaurentSeries map_derivative(const MapSpec& ms, int n, int T);

/// f^(j+1)/f' for j >= 0 (so j = 0 gives 1, j = 1 gives f''/f'). Works for both
/// map kinds; plain maps only need h'(0) != 0. Memoized.
LaurentSeries derivative_over_first(const MapSpec& ms, int j, int T);

} // namespace splab
