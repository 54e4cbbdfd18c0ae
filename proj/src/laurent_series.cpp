#include "splab/laurent_series.hpp"

#include "splab/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace splab {

namespace {

int clamp_trunc(long t) {
    return static_cast<int>(std::min<long>(t, LaurentSeries::kExact));
}

} // namespace

LaurentSeries::LaurentSeries(const std::vector<std::pair<int, GaussianRational>>& terms, int trunc)
    : trunc_(clamp_trunc(trunc)) {
    for (const auto& [d, c] : terms) {
        if (d > trunc_) {
            throw std::invalid_argument("LaurentSeries: degree " + std::to_string(d) +
                                        " beyond truncation order " + std::to_string(trunc_));
        }
        if (!c.is_zero()) {
            coeffs_[d] += c;
            if (coeffs_[d].is_zero()) {
                coeffs_.erase(d);
            }
        }
    }
}

LaurentSeries LaurentSeries::constant(const GaussianRational& c, int trunc) {
    return LaurentSeries({{0, c}}, trunc);
}

LaurentSeries LaurentSeries::monomial(int degree, const GaussianRational& c, int trunc) {
    return LaurentSeries({{degree, c}}, trunc);
}

int LaurentSeries::valuation() const noexcept {
    if (coeffs_.empty()) {
        return trunc_ >= kExact ? kExact : trunc_ + 1;
    }
    return coeffs_.begin()->first;
}

int LaurentSeries::max_degree() const {
    if (coeffs_.empty()) {
        throw std::logic_error("max_degree of a zero series");
    }
    return coeffs_.rbegin()->first;
}

GaussianRational LaurentSeries::coeff(int d) const {
    if (d > trunc_) {
        throw TruncationError("truncation insufficient: coefficient of eps^" + std::to_string(d) +
                              " requested, series known through eps^" + std::to_string(trunc_));
    }
    auto it = coeffs_.find(d);
    return it == coeffs_.end() ? GaussianRational{} : it->second;
}

LaurentSeries LaurentSeries::truncated(int t) const {
    if (t >= trunc_) {
        return *this;
    }
    LaurentSeries out;
    out.trunc_ = t;
    for (auto it = coeffs_.begin(); it != coeffs_.end() && it->first <= t; ++it) {
        out.coeffs_.emplace(it->first, it->second);
    }
    return out;
}

void LaurentSeries::insert_or_drop(int d, GaussianRational c) {
    if (d > trunc_) {
        return;
    }
    auto [it, inserted] = coeffs_.try_emplace(d, std::move(c));
    if (!inserted) {
        it->second += c;
    }
    if (it->second.is_zero()) {
        coeffs_.erase(it);
    }
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
    if (o.trunc_ < trunc_) {
        *this = truncated(o.trunc_);
    }
    for (const auto& [d, c] : o.coeffs_) {
        if (d > trunc_) {
            break;
        }
        insert_or_drop(d, c);
    }
    return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) {
    return *this += -o;
}

LaurentSeries& LaurentSeries::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [d, v] : coeffs_) {
        v *= c;
    }
    return *this;
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries out = *this;
    for (auto& [d, v] : out.coeffs_) {
        v = -v;
    }
    return out;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    const long va = a.valuation();
    const long vb = b.valuation();
    LaurentSeries out;
    out.trunc_ = (a.is_exact() && b.is_exact()) ? LaurentSeries::kExact : clamp_trunc(std::min<long>(a.trunc_ + vb, b.trunc_ + va));
    for (const auto& [da, ca] : a.coeffs_) {
        if (da + vb > out.trunc_) {
            break;
        }
        for (const auto& [db, cb] : b.coeffs_) {
            const int d = da + db;
            if (d > out.trunc_) {
                break;
            }
            out.insert_or_drop(d, ca * cb);
        }
    }
    return out;
}

bool LaurentSeries::agrees_with(const LaurentSeries& o) const {
    const int t = std::min(trunc_, o.trunc_);
    return truncated(t).coeffs_ == o.truncated(t).coeffs_;
}

std::string LaurentSeries::to_string() const {
    std::ostringstream os;
    if (coeffs_.empty()) {
        os << "0";
    }
    bool first = true;
    for (const auto& [d, c] : coeffs_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << c << ")";
        if (d != 0) {
            os << "*eps^" << d;
        }
    }
    if (!is_exact()) {
        os << " + O(eps^" << (trunc_ + 1) << ")";
    }
    return os.str();
}

LaurentSeries invert(const LaurentSeries& a) {
    if (a.is_zero()) {
        throw SingularRatioError("cannot invert a series with no nonzero coefficient in its window");
    }
    const int v = a.valuation();
    const GaussianRational lead_inv = a.coeff(v).inverse();
    if (a.is_exact()) {
        if (a.terms().size() != 1) {
            throw std::invalid_argument("inverse of an exact multi-term series is not finite; truncate it first");
        }
        return LaurentSeries::monomial(-v, lead_inv);
    }
    // a = eps^v (a_0 + a_1 eps + ...), b = eps^-v (b_0 + b_1 eps + ...), b_j fixed by a*b = 1.
    const int width = a.trunc() - v;
    std::vector<GaussianRational> b(static_cast<std::size_t>(width) + 1);
    std::vector<std::pair<int, GaussianRational>> tail; // (offset, coefficient), offset >= 1
    for (const auto& [d, c] : a.terms()) {
        if (d > v) {
            tail.emplace_back(d - v, c);
        }
    }
    for (int j = 0; j <= width; ++j) {
        GaussianRational acc = j == 0 ? GaussianRational{1} : GaussianRational{};
        for (const auto& [off, c] : tail) {
            if (off > j) {
                break;
            }
            acc -= c * b[static_cast<std::size_t>(j - off)];
        }
        b[static_cast<std::size_t>(j)] = acc * lead_inv;
    }
    std::vector<std::pair<int, GaussianRational>> terms;
    terms.reserve(b.size());
    for (int j = 0; j <= width; ++j) {
        terms.emplace_back(j - v, std::move(b[static_cast<std::size_t>(j)]));
    }
    return LaurentSeries(terms, width - v);
}

LaurentSeries diff_z(const LaurentSeries& a) {
    std::vector<std::pair<int, GaussianRational>> terms;
    terms.reserve(a.terms().size());
    for (const auto& [d, c] : a.terms()) {
        if (d != 0) {
            terms.emplace_back(d - 1, c * GaussianRational(mpq_class(0), mpq_class(-d)));
        }
    }
    return LaurentSeries(terms, a.is_exact() ? LaurentSeries::kExact : a.trunc() - 1);
}

LaurentSeries pow(const LaurentSeries& a, int k) {
    if (k < 0) {
        throw std::invalid_argument("pow: negative exponent");
    }
    LaurentSeries out = LaurentSeries::one();
    for (int j = 0; j < k; ++j) {
        out = out * a;
    }
    return out;
}

} // namespace splab
