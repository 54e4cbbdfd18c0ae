#include "splab/dfactor.hpp"

#include "splab/bell.hpp"
#include "splab/series_cache.hpp"

#include <stdexcept>
#include <string>

namespace splab {

LaurentSeries dfactor(const MapSpec& ms, int n, int T) {
    if (n < 1) {
        throw std::invalid_argument("dfactor: n must be >= 1");
    }
    const std::string key = ms.identity() + "|D|" + std::to_string(n) + "|" + std::to_string(T);
    return *SeriesCache::global().get_or_compute(key, [&] {
        LaurentSeries acc;
        for (int k = 1; k <= n; ++k) {
            GaussianRational c(mpq_class(detail::factorial(static_cast<unsigned long>(k))));
            if (k % 2 == 0) {
                c = -c;
            }
            acc += bell_of_map(ms, n, k, T) * c;
        }
        return acc * GaussianRational(0, 1, -1, 1);
    });
}

} // namespace splab
