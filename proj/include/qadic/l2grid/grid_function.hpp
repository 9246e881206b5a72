#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qadic/l2grid/fft.hpp"
#include "qadic/numbers.hpp"

namespace qadic {

using cplx = std::complex<double>;

/// How a function refines to a finer grid: smooth functions use band-limited
/// interpolation, piecewise-constant ones repeat each sample.
enum class GridStyle { Smooth, PiecewiseConstant };

/// Samples of a compactly supported function at n * 2^-g, n = start, start + 1, ...
/// Leading and trailing exact zeros are trimmed; the zero function has no samples.
class GridFunction {
public:
    GridFunction() = default;

    GridFunction(int g, std::int64_t start, std::vector<cplx> samples, GridStyle style = GridStyle::Smooth)
        : g_(g), start_(start), samples_(std::move(samples)), style_(style) {
        trim();
    }

    /// fn at every grid point n h with lo <= n h < hi.
    static GridFunction sample(const std::function<cplx(double)>& fn, int g, double lo, double hi,
                               GridStyle style = GridStyle::Smooth) {
        const double inv_h = std::ldexp(1.0, g);
        auto first = static_cast<std::int64_t>(std::ceil(lo * inv_h));
        auto last = static_cast<std::int64_t>(std::ceil(hi * inv_h)) - 1;
        std::vector<cplx> s;
        for (std::int64_t n = first; n <= last; ++n) s.push_back(fn(std::ldexp(static_cast<double>(n), -g)));
        return GridFunction(g, first, std::move(s), style);
    }

    /// Indicator of [lo, hi); exact when lo and hi lie on the grid.
    static GridFunction indicator(double lo, double hi, int g) {
        return sample([](double) { return cplx(1.0); }, g, lo, hi, GridStyle::PiecewiseConstant);
    }

    int spacing_exp() const { return g_; }
    double spacing() const { return std::ldexp(1.0, -g_); }
    std::int64_t start() const { return start_; }
    std::int64_t end() const { return start_ + static_cast<std::int64_t>(samples_.size()); }
    std::size_t size() const { return samples_.size(); }
    bool is_zero() const { return samples_.empty(); }
    GridStyle style() const { return style_; }
    const std::vector<cplx>& samples() const { return samples_; }

    double x_of(std::int64_t n) const { return std::ldexp(static_cast<double>(n), -g_); }
    double support_lo() const { return x_of(start_); }
    double support_hi() const { return x_of(end()); }

    /// Sample at absolute index n, zero outside the stored range.
    cplx at(std::int64_t n) const {
        if (n < start_ || n >= end()) return {};
        return samples_[static_cast<std::size_t>(n - start_)];
    }

    /// Value at any real x: linear interpolation for smooth functions, cell value otherwise.
    cplx eval(double x) const {
        double pos = std::ldexp(x, g_);
        double fl = std::floor(pos);
        auto n = static_cast<std::int64_t>(fl);
        if (style_ == GridStyle::PiecewiseConstant) return at(n);
        double w = pos - fl;
        if (w == 0.0) return at(n);
        return (1.0 - w) * at(n) + w * at(n + 1);
    }

    GridFunction with_style(GridStyle s) const {
        GridFunction out = *this;
        out.style_ = s;
        return out;
    }

    GridFunction& operator*=(cplx c) {
        for (auto& v : samples_) v *= c;
        trim();
        return *this;
    }

private:
    friend GridFunction reindex(const GridFunction&, int, std::int64_t);

    void trim() {
        std::size_t lo = 0, hi = samples_.size();
        while (lo < hi && samples_[lo] == cplx()) ++lo;
        while (hi > lo && samples_[hi - 1] == cplx()) --hi;
        if (lo == hi) {
            samples_.clear();
            start_ = 0;
            return;
        }
        if (lo > 0 || hi < samples_.size()) {
            samples_ = std::vector<cplx>(samples_.begin() + static_cast<std::ptrdiff_t>(lo),
                                         samples_.begin() + static_cast<std::ptrdiff_t>(hi));
            start_ += static_cast<std::int64_t>(lo);
        }
    }

    int g_ = 0;
    std::int64_t start_ = 0;
    std::vector<cplx> samples_;
    GridStyle style_ = GridStyle::Smooth;
};

/// Same samples reinterpreted on spacing 2^-g starting at index start.
inline GridFunction reindex(const GridFunction& f, int g, std::int64_t start) {
    GridFunction out = f;
    out.g_ = g;
    out.start_ = f.is_zero() ? 0 : start;
    return out;
}

/// Resamples onto the finer spacing 2^-g (g >= current spacing exponent).
inline GridFunction refine(const GridFunction& f, int g) {
    const int d = g - f.spacing_exp();
    if (d < 0) throw Error("refine: target grid is coarser than the input");
    if (d == 0 || f.is_zero()) return reindex(f, g, f.start() * (std::int64_t{1} << d));
    const std::size_t r = std::size_t{1} << d;
    const std::size_t L = f.size();
    std::vector<cplx> out(L * r);
    if (f.style() == GridStyle::PiecewiseConstant) {
        for (std::size_t k = 0; k < L; ++k)
            for (std::size_t q = 0; q < r; ++q) out[k * r + q] = f.samples()[k];
    } else {
        // Zero-padded spectrum; the padding keeps the periodic extension from wrapping.
        const std::size_t P = std::bit_ceil(2 * L);
        std::vector<cplx> x(P);
        std::copy(f.samples().begin(), f.samples().end(), x.begin());
        std::vector<cplx> X = detail::dft(x, -1);
        std::vector<cplx> Y(P * r);
        for (std::size_t k = 0; k < P / 2; ++k) Y[k] = X[k];
        for (std::size_t k = P / 2 + 1; k < P; ++k) Y[P * r - (P - k)] = X[k];
        Y[P / 2] = 0.5 * X[P / 2];
        Y[P * r - P / 2] = 0.5 * X[P / 2];
        std::vector<cplx> y = detail::dft(Y, +1);
        for (std::size_t i = 0; i < L * r; ++i) out[i] = y[i] / static_cast<double>(P);
    }
    return GridFunction(g, f.start() * static_cast<std::int64_t>(r), std::move(out), f.style());
}

/// Both arguments on the finer of their two spacings.
inline std::pair<GridFunction, GridFunction> on_common_grid(const GridFunction& a, const GridFunction& b) {
    int g = std::max(a.spacing_exp(), b.spacing_exp());
    return {refine(a, g), refine(b, g)};
}

/// (T_b f)(x) = f(x - b); refines first when b is finer than the grid.
inline GridFunction translate(const GridFunction& f, const DyadicRational& b) {
    GridFunction base = b.exponent() > f.spacing_exp() ? refine(f, b.exponent()) : f;
    std::int64_t shift = b.mul_pow2(base.spacing_exp()).numerator();
    return reindex(base, base.spacing_exp(), detail::checked_add(base.start(), shift));
}

/// (D_a f)(x) = a^(-1/2) f(x / a): same samples on spacing a h, scaled.
inline GridFunction dilate(const GridFunction& f, PowerOfTwo a) {
    GridFunction out = reindex(f, f.spacing_exp() - a.exponent(), f.start());
    out *= 1.0 / std::sqrt(a.value());
    return out;
}

inline GridFunction operator*(cplx c, GridFunction f) {
    f *= c;
    return f;
}

inline GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    auto [x, y] = on_common_grid(a, b);
    std::int64_t lo = std::min(x.start(), y.start()), hi = std::max(x.end(), y.end());
    std::vector<cplx> s(static_cast<std::size_t>(hi - lo));
    for (std::int64_t n = lo; n < hi; ++n) s[static_cast<std::size_t>(n - lo)] = x.at(n) + y.at(n);
    GridStyle style = x.style() == y.style() ? x.style() : GridStyle::Smooth;
    return GridFunction(x.spacing_exp(), lo, std::move(s), style);
}

inline GridFunction operator-(const GridFunction& a, const GridFunction& b) { return a + (-1.0) * b; }

/// Integral of conj(a) b as h times the sum over common grid points.
inline cplx inner(const GridFunction& a, const GridFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    auto [x, y] = on_common_grid(a, b);
    cplx s = 0;
    for (std::int64_t n = std::max(x.start(), y.start()); n < std::min(x.end(), y.end()); ++n)
        s += std::conj(x.at(n)) * y.at(n);
    return s * x.spacing();
}

inline double norm(const GridFunction& f) { return std::sqrt(std::max(0.0, inner(f, f).real())); }

/// Largest sample modulus of a - b on the common grid.
inline double sup_distance(const GridFunction& a, const GridFunction& b) {
    GridFunction d = a - b;
    double r = 0.0;
    for (const auto& v : d.samples()) r = std::max(r, std::abs(v));
    return r;
}

/// Integral of conj(a(t)) b(K t + beta) dt for K a power of two and beta dyadic.
/// The t-grid 2^-gt resolves both factors and K t + beta lands on b's grid 2^-(gt - log2 K),
/// so products of piecewise-constant functions integrate exactly.
inline cplx inner_affine(const GridFunction& a, const GridFunction& b, PowerOfTwo K, const DyadicRational& beta) {
    if (a.is_zero() || b.is_zero()) return {};
    const int k = K.exponent();
    const int gt = std::max({a.spacing_exp(), b.spacing_exp() + k, beta.exponent() + k});
    const GridFunction x = refine(a, gt), y = refine(b, gt - k);
    const std::int64_t shift = beta.mul_pow2(gt - k).numerator();
    cplx s = 0;
    for (std::int64_t n = std::max(x.start(), y.start() - shift); n < std::min(x.end(), y.end() - shift); ++n)
        s += std::conj(x.at(n)) * y.at(n + shift);
    return s * x.spacing();
}

/// CSV with header "x,re,im" and one row per sample.
inline void write_csv(std::ostream& os, const GridFunction& f) {
    os << "x,re,im\n";
    char buf[96];
    for (std::int64_t n = f.start(); n < f.end(); ++n) {
        cplx v = f.at(n);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.x_of(n), v.real(), v.imag());
        os << buf;
    }
}

/// Reads write_csv output; the spacing must be a power of two and the rows contiguous.
inline GridFunction read_csv(std::istream& is, GridStyle style = GridStyle::Smooth) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("x,re,im", 0) != 0) throw Error("grid csv: missing header x,re,im");
    std::vector<double> xs;
    std::vector<cplx> vs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        double x, re, im;
        char c1, c2;
        if (!(row >> x >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',')
            throw Error("grid csv: malformed row '" + line + "'");
        xs.push_back(x);
        vs.emplace_back(re, im);
    }
    if (xs.empty()) return {};
    if (xs.size() == 1) throw Error("grid csv: spacing cannot be inferred from one row");
    double h = xs[1] - xs[0];
    int e;
    double mant = std::frexp(h, &e);
    if (h <= 0 || mant != 0.5) throw Error("grid csv: spacing is not a power of two");
    int g = 1 - e;
    double start = std::ldexp(xs[0], g);
    if (start != std::round(start)) throw Error("grid csv: first abscissa is off the grid");
    for (std::size_t k = 1; k < xs.size(); ++k)
        if (std::ldexp(xs[k], g) != start + static_cast<double>(k)) throw Error("grid csv: rows are not contiguous");
    return GridFunction(g, static_cast<std::int64_t>(start), std::move(vs), style);
}

}  // namespace qadic
