#pragma once

#include "splab/conformal_map.hpp"
#include "splab/laurent_series.hpp"

#include <vector>

namespace splab {

/// S_{1|1}(f) = (1/6) A' - (1/12) A^2 with A = f''/f'.
LaurentSeries schwarzian_11(const MapSpec& ms, int T);

/// Generalized Schwarzian S_{n1|n2}(f) from the closed multi-sum over Bell
/// polynomials of f^(j+1)/f'. Arguments are used in the order given. Memoized.
LaurentSeries schwarzian_general(const MapSpec& ms, int n1, int n2, int T);

/// Laurent expansion of the point-split bilocal in the splitting distance delta.
struct PointSplitExpansion {
    LaurentSeries finite;             ///< delta^0 coefficient divided by n1! n2!
    std::vector<LaurentSeries> poles; ///< poles[m-1] = delta^-m coefficient (undivided)
};

/// Independent route: expand the bilocal built from f(z + delta/2), f(z - delta/2)
/// in delta, subtract the flat-space singularity, keep all orders <= 0.
/// Needs f'/f to be a Laurent unit (maps with the essential factor, or h(0) != 0).
PointSplitExpansion schwarzian_point_split_expansion(const MapSpec& ms, int n1, int n2, int T);

/// Finite part of the point-split expansion; throws ConventionError if any pole survives.
LaurentSeries schwarzian_point_split(const MapSpec& ms, int n1, int n2, int T);

/// Both sides of the composition law
///   S_{n1|n2}(g o f) = sum_{k1,k2} (k1! k2!/(n1! n2!)) B_{n1|k1}(f) B_{n2|k2}(f) [S_{k1|k2}(g) o f]
///                      + S_{n1|n2}(f)
/// for plain maps f, g with f(0) = 0 and f'(0), g'(0) != 0.
struct CompositionReport {
    LaurentSeries lhs;
    LaurentSeries rhs;
    bool holds = false; ///< lhs and rhs agree on their common window
};

CompositionReport schwarzian_compose_report(const MapSpec& f, const MapSpec& g, int n1, int n2, int T);
bool schwarzian_compose_check(const MapSpec& f, const MapSpec& g, int n1, int n2, int T);

} // namespace splab
