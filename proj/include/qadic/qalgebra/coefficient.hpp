#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qadic {

using Rational = boost::multiprecision::cpp_rational;

/// Exact complex number with rational parts.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
    GaussianRational(long long n) : re(n), im(0) {}                                                 // NOLINT
    GaussianRational(int n) : re(n), im(0) {}                                                       // NOLINT

    bool is_zero() const { return re == 0 && im == 0; }
    GaussianRational conj() const { return {re, -im}; }
    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

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
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    /// "(re)", "(im i)" or "(re + im i)".
    std::string to_string() const {
        if (im == 0) return "(" + re.str() + ")";
        if (re == 0) return "(" + im.str() + " i)";
        return "(" + re.str() + " + " + im.str() + " i)";
    }
};

template <class C>
struct coeff_traits;

template <>
struct coeff_traits<GaussianRational> {
    static constexpr bool exact = true;
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return {1}; }
    static bool is_zero(const GaussianRational& c) { return c.is_zero(); }
    static bool equal(const GaussianRational& a, const GaussianRational& b) { return a == b; }
    static GaussianRational conj(const GaussianRational& c) { return c.conj(); }
    static std::complex<double> to_complex(const GaussianRational& c) { return c.to_complex(); }
    static std::string to_string(const GaussianRational& c) { return c.to_string(); }
};

template <>
struct coeff_traits<std::complex<double>> {
    using C = std::complex<double>;
    static constexpr bool exact = false;
    static constexpr double kZeroTol = 1e-12;
    static C zero() { return {}; }
    static C one() { return {1.0, 0.0}; }
    static bool is_zero(const C& c) { return std::abs(c) <= kZeroTol; }
    static bool equal(const C& a, const C& b) { return std::abs(a - b) <= kZeroTol; }
    static C conj(const C& c) { return std::conj(c); }
    static C to_complex(const C& c) { return c; }
    static std::string to_string(const C& c) {
        char buf[96];
        if (c.imag() == 0.0)
            std::snprintf(buf, sizeof buf, "(%.17g)", c.real());
        else
            std::snprintf(buf, sizeof buf, "(%.17g + %.17g i)", c.real(), c.imag());
        return buf;
    }
};

}  // namespace qadic
