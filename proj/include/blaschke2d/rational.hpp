#pragma once
// Exact scalar arithmetic: arbitrary-precision rationals (GMP-backed) and
// Gaussian rationals, the coefficient field for all exact polynomial work.
// Conjugation-closed so the conjugated zeros in the lift stay in the field.

#include <complex>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace blaschke2d {

// mpq_class already maintains the invariants the artifact needs: canonical
// lowest terms and positive denominator.
using Rational = mpq_class;

// "num/den" or "num"; throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);
double to_double(const Rational& r);
Rational rational_pow(const Rational& base, unsigned exp);

struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}  // NOLINT: implicit for literals
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    GaussianRational conj() const { return {re, -im}; }
    // |x|^2, exact.
    Rational norm2() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);

    GaussianRational& operator+=(const GaussianRational& o) { re += o.re; im += o.im; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { re -= o.re; im -= o.im; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }
    GaussianRational& operator/=(const GaussianRational& o) { *this = *this / o; return *this; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
    // Lexicographic (re, im); used only for canonical ordering of point sets.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        int c = cmp(a.re, b.re);
        if (c != 0) return c < 0;
        return cmp(a.im, b.im) < 0;
    }

    GaussianRational inverse() const;

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

GaussianRational gaussian_pow(const GaussianRational& base, unsigned exp);

// "a/b" or "a/b+c/di" style, exact; e.g. "1/2", "-3/4+1/5i", "2i".
std::string to_string(const GaussianRational& g);

}  // namespace blaschke2d
