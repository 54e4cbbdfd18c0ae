#pragma once

#include "splab/conformal_map.hpp"
#include "splab/laurent_series.hpp"

namespace splab {

/// One-point factor D(n) = -i sum_{k=1}^n (-1)^{k+1} k! B_{n|k}(f(z); z) / f(z)^k,
/// the regulated derivative n-fold of log f. Memoized.
LaurentSeries dfactor(const MapSpec& ms, int n, int T);

} // namespace splab
