#pragma once

#include "splab/conformal_map.hpp"
#include "splab/gaussian_rational.hpp"
#include "splab/laurent_series.hpp"

#include <gmpxx.h>
#include <json.hpp>

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace splab {

/// One monomial of the partition formula: a product of generalized Schwarzians
/// S_{i|j}^{nu_ij} (i <= j) and one-point factors D(n)^{p_n}.
struct TermDescriptor {
    int N1 = 0;
    int N2 = 0;
    std::map<int, int> m;                ///< j -> m_j, number of derivative-j insertions
    std::map<std::pair<int, int>, int> nu; ///< (i, j), i <= j -> pairing count
    std::map<int, int> d_part;           ///< n -> p_n

    int N() const { return N1 + N2; }
    int Q() const;
    /// Checks all constraints for the given (N, Q); throws std::invalid_argument when violated.
    void validate(int N, int Q) const;
    /// e.g. "S11*D1^2", "D1*D3"; "1" for the empty product.
    std::string label() const;

    /// Lexicographic by (N1, m-vector, nu-matrix, d_part).
    friend auto operator<=>(const TermDescriptor& a, const TermDescriptor& b) = default;
};

nlohmann::json descriptor_to_json(const TermDescriptor& td);

/// Every descriptor with N1 + N2 = N, sum j m_j = N1, a full pairing of the m_j,
/// and a length-Q partition of N2; sorted, duplicate-free. Requires 1 <= Q <= N.
std::vector<TermDescriptor> enumerate_terms(int N, int Q);

/// Wick pairing count times (1/n!)^{p_n}:
///   prod_i m_i! / (2^{nu_ii} nu_ii! prod_{j>i} nu_ij!) * prod_n (1/n!)^{p_n}.
GaussianRational term_weight(const TermDescriptor& td);

/// weight * prod S_{i|j}^{nu_ij} * prod D(n)^{p_n}, factors evaluated with window T.
LaurentSeries evaluate_term(const TermDescriptor& td, const MapSpec& ms, int T);

/// (-i)^M times the eps^{-M} coefficient of s.
GaussianRational epsilon_order(const LaurentSeries& s, int M);

struct LambdaOptions {
    /// Initial window on the L series; default 2(N+Q)+4.
    std::optional<int> window;
    /// Extra doublings of the window allowed on truncation.
    int max_retries = 3;
    /// Evaluate terms on this many threads (1 = sequential).
    unsigned threads = 1;
    /// Replaces the weight of a term (used to inject faults in verification tests).
    std::function<GaussianRational(const TermDescriptor&, const GaussianRational&)> weight_hook;
};

struct TermRecord {
    TermDescriptor descriptor;
    GaussianRational weight;
    GaussianRational contribution;
};

struct LambdaBreakdown {
    int N = 0;
    int Q = 0;
    std::string h;
    int window = 0;
    std::vector<TermRecord> terms;
    GaussianRational total;

    /// Integer value when total is a real integer.
    std::optional<mpz_class> lambda() const;
    nlohmann::json to_json() const;
};

/// Evaluates every term; retries with a doubled window on truncation.
/// Q = 0 yields an empty breakdown with total 1 if N = 0 and 0 otherwise.
LambdaBreakdown lambda_breakdown(int N, int Q, const MapSpec& ms, const LambdaOptions& opt = {});

/// lambda(N|Q) from the conformal formula. Throws ConventionError (with the
/// breakdown JSON as detail) when the total is not a real integer.
mpz_class lambda_cft(int N, int Q, const MapSpec& ms, const LambdaOptions& opt = {});

} // namespace splab
