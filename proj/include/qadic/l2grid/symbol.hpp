#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

#include "qadic/l2grid/fourier.hpp"

namespace qadic {

/// f = 1; its inverse transform is a point mass and cannot be evaluated.
struct ConstantSymbol {
    cplx value{1.0};
};

/// f(x) = A exp(-pi ((x - mu) / sigma)^2) e(nu x).
struct GaussianSymbol {
    cplx amplitude{1.0};
    double center = 0.0;
    double width = 1.0;
    double modulation = 0.0;
};

/// Inverse transform is the triangle of unit mass on [-w, w]; f(x) = sinc^2(w x).
struct BumpSymbol {
    double width = 1.0;
};

/// f and its inverse transform given by samples.
struct TabulatedSymbol {
    GridFunction f;
    GridFunction f_check;
};

/// f in C_0(R) together with its inverse Fourier transform (f check)(s) = integral e(-s x) f(x) dx.
class SymbolFunction {
public:
    using Variant = std::variant<ConstantSymbol, GaussianSymbol, BumpSymbol, TabulatedSymbol>;

    SymbolFunction() : v_(ConstantSymbol{}) {}
    SymbolFunction(ConstantSymbol s) : v_(s) {}  // NOLINT
    SymbolFunction(GaussianSymbol s) : v_(s) {   // NOLINT
        if (!(s.width > 0)) throw Error("gaussian symbol needs positive width");
    }
    SymbolFunction(BumpSymbol s) : v_(s) {  // NOLINT
        if (!(s.width > 0)) throw Error("bump symbol needs positive width");
    }
    /// Throws unless fourier(f_check) reproduces f within tol on f's grid.
    static SymbolFunction tabulated(GridFunction f, GridFunction f_check, double tol = 1e-6);

    static SymbolFunction one() { return ConstantSymbol{}; }

    const Variant& variant() const { return v_; }
    bool has_check() const { return !std::holds_alternative<ConstantSymbol>(v_); }

    cplx f(double x) const {
        return std::visit(
            [x](const auto& s) -> cplx {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, ConstantSymbol>) {
                    return s.value;
                } else if constexpr (std::is_same_v<T, GaussianSymbol>) {
                    double y = (x - s.center) / s.width;
                    return s.amplitude * std::exp(-std::numbers::pi * y * y) * e_of(s.modulation * x);
                } else if constexpr (std::is_same_v<T, BumpSymbol>) {
                    double y = std::numbers::pi * s.width * x;
                    double sinc = y == 0.0 ? 1.0 : std::sin(y) / y;
                    return sinc * sinc;
                } else {
                    return s.f.eval(x);
                }
            },
            v_);
    }

    cplx f_check(double s_) const {
        return std::visit(
            [s_](const auto& s) -> cplx {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, ConstantSymbol>) {
                    throw Error("the inverse transform of a constant symbol is not a function");
                } else if constexpr (std::is_same_v<T, GaussianSymbol>) {
                    double y = s.width * (s_ - s.modulation);
                    return s.amplitude * s.width * e_of(-(s_ - s.modulation) * s.center) *
                           std::exp(-std::numbers::pi * y * y);
                } else if constexpr (std::is_same_v<T, BumpSymbol>) {
                    double r = 1.0 - std::abs(s_) / s.width;
                    return r > 0 ? r / s.width : 0.0;
                } else {
                    return s.f_check.eval(s_);
                }
            },
            v_);
    }

    /// An interval outside which |f check| is below 1e-16 (exactly zero for compact support).
    std::pair<double, double> check_support() const {
        return std::visit(
            [](const auto& s) -> std::pair<double, double> {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, ConstantSymbol>) {
                    throw Error("the inverse transform of a constant symbol is not a function");
                } else if constexpr (std::is_same_v<T, GaussianSymbol>) {
                    double peak = std::abs(s.amplitude) * s.width;
                    if (peak <= kTailCutoff) return {s.modulation, s.modulation};
                    double r = std::sqrt(std::log(peak / kTailCutoff) / std::numbers::pi) / s.width;
                    return {s.modulation - r, s.modulation + r};
                } else if constexpr (std::is_same_v<T, BumpSymbol>) {
                    return {-s.width, s.width};
                } else {
                    return {s.f_check.support_lo(), s.f_check.support_hi()};
                }
            },
            v_);
    }

    /// sup |f|.
    double sup_abs() const {
        return std::visit(
            [](const auto& s) -> double {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, ConstantSymbol>) {
                    return std::abs(s.value);
                } else if constexpr (std::is_same_v<T, GaussianSymbol>) {
                    return std::abs(s.amplitude);
                } else if constexpr (std::is_same_v<T, BumpSymbol>) {
                    return 1.0;
                } else {
                    double r = 0.0;
                    for (const auto& v : s.f.samples()) r = std::max(r, std::abs(v));
                    return r;
                }
            },
            v_);
    }

    static constexpr double kTailCutoff = 1e-16;

private:
    Variant v_;
};

inline SymbolFunction SymbolFunction::tabulated(GridFunction f, GridFunction f_check, double tol) {
    GridFunction back = fourier(f_check, FourierGrid{f.spacing_exp(), std::max(std::abs(f.support_lo()),
                                                                               std::abs(f.support_hi()))});
    double scale = 0.0;
    for (const auto& v : f.samples()) scale = std::max(scale, std::abs(v));
    for (std::int64_t n = f.start(); n < f.end(); ++n)
        if (std::abs(back.at(n) - f.at(n)) > tol * std::max(scale, 1.0))
            throw Error("tabulated symbol: f is not the Fourier transform of f check");
    SymbolFunction out;
    out.v_ = TabulatedSymbol{std::move(f), std::move(f_check)};
    return out;
}

/// g(x) = f((x - b) / a), i.e. the symbol transported by the affine map (b, a).
inline GaussianSymbol transport(const GaussianSymbol& f, double b, double a) {
    GaussianSymbol out;
    out.center = b + a * f.center;
    out.width = a * f.width;
    out.modulation = f.modulation / a;
    out.amplitude = f.amplitude * e_of(-f.modulation * b / a);
    return out;
}

/// Pointwise product of two Gaussian symbols.
inline GaussianSymbol product(const GaussianSymbol& f1, const GaussianSymbol& f2) {
    double p1 = 1.0 / (f1.width * f1.width), p2 = 1.0 / (f2.width * f2.width);
    GaussianSymbol out;
    out.width = 1.0 / std::sqrt(p1 + p2);
    out.center = (p1 * f1.center + p2 * f2.center) / (p1 + p2);
    out.modulation = f1.modulation + f2.modulation;
    double gap = f1.center - f2.center;
    out.amplitude = f1.amplitude * f2.amplitude *
                    std::exp(-std::numbers::pi * gap * gap / (f1.width * f1.width + f2.width * f2.width));
    return out;
}

/// (M_f xi)(x) = f(x) xi(x) at the sample points.
inline GridFunction multiply(const SymbolFunction& f, const GridFunction& xi) {
    std::vector<cplx> s(xi.size());
    for (std::int64_t n = xi.start(); n < xi.end(); ++n)
        s[static_cast<std::size_t>(n - xi.start())] = f.f(xi.x_of(n)) * xi.at(n);
    return GridFunction(xi.spacing_exp(), xi.start(), std::move(s), xi.style());
}

/// pi(f (x) 1_(b,a)) xi = M_f T_b D_a xi.
inline GridFunction pi_apply(const SymbolFunction& f, const DyadicRational& b, PowerOfTwo a, const GridFunction& xi) {
    GridFunction moved = translate(dilate(xi, a), b);
    if (const auto* c = std::get_if<ConstantSymbol>(&f.variant())) return c->value * moved;
    return multiply(f, moved);
}

}  // namespace qadic
