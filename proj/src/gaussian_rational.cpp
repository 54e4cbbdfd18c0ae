#include "splab/gaussian_rational.hpp"

#include <ostream>
#include <stdexcept>

namespace splab {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational::GaussianRational(long num, long den, long im_num, long im_den) {
    if (den == 0 || im_den == 0) {
        throw std::domain_error("GaussianRational: zero denominator");
    }
    re_ = mpq_class(num, den);
    im_ = mpq_class(im_num, im_den);
    re_.canonicalize();
    im_.canonicalize();
}

bool GaussianRational::is_integer() const {
    return is_real() && re_.get_den() == 1;
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) {
        throw std::domain_error("GaussianRational: division by zero");
    }
    mpq_class n = norm();
    return {mpq_class(re_ / n), mpq_class(-im_ / n)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (o.is_real()) {
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    return *this *= o.inverse();
}

std::string GaussianRational::to_string() const {
    if (is_real()) {
        return rational_text(re_);
    }
    std::string im_part;
    if (im_ == 1) {
        im_part = "i";
    } else if (im_ == -1) {
        im_part = "-i";
    } else {
        im_part = rational_text(im_) + "i";
    }
    if (sgn(re_) == 0) {
        return im_part;
    }
    return rational_text(re_) + (sgn(im_) > 0 ? "+" : "") + im_part;
}

GaussianRational i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
    case 0: return {1};
    case 1: return GaussianRational::i();
    case 2: return {-1};
    default: return -GaussianRational::i();
    }
}

mpq_class parse_rational(const std::string& text) {
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
    if (q.get_den() == 0) {
        throw std::invalid_argument("zero denominator in '" + text + "'");
    }
    q.canonicalize();
    return q;
}

std::string rational_text(const mpq_class& q) {
    return q.get_str(10);
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    return os << z.to_string();
}

} // namespace splab
