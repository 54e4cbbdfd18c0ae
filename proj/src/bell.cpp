#include "splab/bell.hpp"

namespace splab {

LaurentSeries bell_of_map(const MapSpec& ms, int n, int k, int T) {
    if (k < 1 || k > n) {
        throw std::invalid_argument("bell_of_map: need 1 <= k <= n");
    }
    std::vector<LaurentSeries> ratios;
    for (int j = 1; j <= n - k + 1; ++j) {
        ratios.push_back(derivative_ratio(ms, j, T));
    }
    return bell_generic<LaurentSeries>(n, k, ratios);
}

} // namespace splab
