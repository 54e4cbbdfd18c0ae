#include "splab/delta_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace splab {

DeltaPoly DeltaPoly::constant(const LaurentSeries& c, int order) {
    DeltaPoly p(order);
    p.set(0, c);
    return p;
}

LaurentSeries DeltaPoly::operator[](int k) const {
    if (k > order_) {
        throw std::out_of_range("DeltaPoly: coefficient beyond delta order");
    }
    if (k < 0 || k >= static_cast<int>(c_.size())) {
        return LaurentSeries::zero();
    }
    return c_[static_cast<std::size_t>(k)];
}

void DeltaPoly::set(int k, LaurentSeries c) {
    if (k < 0 || k > order_) {
        return;
    }
    if (k >= static_cast<int>(c_.size())) {
        c_.resize(static_cast<std::size_t>(k) + 1);
    }
    c_[static_cast<std::size_t>(k)] = std::move(c);
}

DeltaPoly operator+(const DeltaPoly& a, const DeltaPoly& b) {
    DeltaPoly out(std::min(a.order_, b.order_));
    const int n = static_cast<int>(std::max(a.c_.size(), b.c_.size()));
    for (int k = 0; k < n && k <= out.order_; ++k) {
        out.set(k, a[k] + b[k]);
    }
    return out;
}

DeltaPoly operator-(const DeltaPoly& a, const DeltaPoly& b) {
    return a + b * GaussianRational(-1);
}

DeltaPoly operator*(const DeltaPoly& a, const DeltaPoly& b) {
    DeltaPoly out(std::min(a.order_, b.order_));
    const int na = static_cast<int>(a.c_.size());
    const int nb = static_cast<int>(b.c_.size());
    for (int i = 0; i < na && i <= out.order_; ++i) {
        if (a.c_[static_cast<std::size_t>(i)].is_zero()) {
            continue;
        }
        for (int j = 0; j < nb && i + j <= out.order_; ++j) {
            if (b.c_[static_cast<std::size_t>(j)].is_zero()) {
                continue;
            }
            out.set(i + j, out[i + j] + a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

DeltaPoly operator*(const DeltaPoly& a, const GaussianRational& c) {
    DeltaPoly out = a;
    for (auto& x : out.c_) {
        x *= c;
    }
    return out;
}

DeltaPoly operator*(const DeltaPoly& a, const LaurentSeries& c) {
    DeltaPoly out = a;
    for (auto& x : out.c_) {
        x = x * c;
    }
    return out;
}

DeltaPoly exp_series(const DeltaPoly& a) {
    if (a.order() == DeltaPoly::kUnbounded) {
        throw std::invalid_argument("exp_series: needs a finite delta order");
    }
    if (!a[0].is_zero()) {
        throw std::invalid_argument("exp_series: argument must have zero constant term");
    }
    DeltaPoly result = DeltaPoly::constant(LaurentSeries::one(), a.order());
    DeltaPoly term = result;
    for (int k = 1; k <= a.order(); ++k) {
        term = term * a * GaussianRational(mpq_class(1, k));
        result = result + term;
    }
    return result;
}

DeltaPoly invert(const DeltaPoly& a) {
    if (a.order() == DeltaPoly::kUnbounded) {
        throw std::invalid_argument("invert(DeltaPoly): needs a finite delta order");
    }
    const LaurentSeries lead_inv = invert(a[0]);
    DeltaPoly out(a.order());
    out.set(0, lead_inv);
    for (int j = 1; j <= a.order(); ++j) {
        LaurentSeries acc = LaurentSeries::zero();
        for (int t = 1; t <= j; ++t) {
            acc += a[t] * out[j - t];
        }
        out.set(j, -(acc * lead_inv));
    }
    return out;
}

DeltaPoly pow(const DeltaPoly& a, int k) {
    DeltaPoly out = RingTraits<DeltaPoly>::one();
    for (int j = 0; j < k; ++j) {
        out = out * a;
    }
    return out;
}

} // namespace splab
