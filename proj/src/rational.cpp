#include "blaschke2d/rational.hpp"

#include <stdexcept>

namespace blaschke2d {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

Rational rational_pow(const Rational& base, unsigned exp) {
    Rational acc = 1, b = base;
    while (exp) {
        if (exp & 1u) acc *= b;
        exp >>= 1u;
        if (exp) b *= b;
    }
    return acc;
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inverse();
}

GaussianRational GaussianRational::inverse() const {
    Rational n2 = norm2();
    if (n2 == 0) throw std::domain_error("division by zero Gaussian rational");
    return {re / n2, -im / n2};
}

GaussianRational gaussian_pow(const GaussianRational& base, unsigned exp) {
    GaussianRational acc(1), b = base;
    while (exp) {
        if (exp & 1u) acc *= b;
        exp >>= 1u;
        if (exp) b *= b;
    }
    return acc;
}

std::string to_string(const GaussianRational& g) {
    if (g.im == 0) return to_string(g.re);
    std::string im_part = to_string(g.im) + "i";
    if (g.re == 0) return im_part;
    if (g.im > 0) return to_string(g.re) + "+" + im_part;
    return to_string(g.re) + im_part;  // im negative carries its own sign
}

}  // namespace blaschke2d
