#pragma once

#include <cmath>
#include <string>

#include "qadic/bimodule/x0.hpp"

namespace qadic {

/// The elementary element f (x) 1_{(d, c)} of C_0(R) x| (Z[1/2] x| <2>).
struct RElement {
    SymbolFunction f;
    DyadicRational d;
    PowerOfTwo c;
};

/// (f1, d1, c1)(f2, d2, c2) = (f1 f2((. - d1) / c1), d1 + c1 d2, c1 c2); Gaussian symbols only.
inline RElement multiply(const RElement& x, const RElement& y) {
    const auto* g1 = std::get_if<GaussianSymbol>(&x.f.variant());
    const auto* g2 = std::get_if<GaussianSymbol>(&y.f.variant());
    if (!g1 || !g2) throw Error("closed-form products need Gaussian symbols");
    return {product(*g1, transport(*g2, x.d.to_double(), x.c.value())), x.d + x.c.to_dyadic() * y.d, x.c * y.c};
}

/// Largest indicator refinement the 2-adic phase may force.
inline constexpr int kMaxPhaseSplit = 16;

/// (x phi)(z, t, a) = c^(1/2) e(-p(z a d)) e(t a d) integral e(s d) fcheck(s) phi(z, t + s / a, a c) ds.
/// The phase is constant on classes mod 2^max(k, denominator exponent of a d), so each tensor
/// splits into those classes with exact root-of-unity coefficients; classes finer than
/// 2^-precision are rejected.
inline X0Element left_act_R(const SymbolFunction& f, const DyadicRational& d, PowerOfTwo c, const X0Element& phi,
                            int precision = PadicInt::kMaxPrecision) {
    X0Element out;
    for (const auto& t : phi.tensors()) {
        const PowerOfTwo a = t.m / c;
        const DyadicRational ad = a.to_dyadic() * d;
        const int level = std::max(t.level(), ad.exponent());
        if (level - t.level() > kMaxPhaseSplit || level > precision)
            throw InsufficientPrecision("phase e(-p(z a d)) needs indicators mod 2^" + std::to_string(level));
        GridFunction zeta = std::sqrt(c.value()) * eta(f, d, a.inverse(), t.xi);
        const std::int64_t step = detail::pow2(t.level());
        for (std::int64_t r = t.l; r < detail::pow2(level); r += step) {
            cplx phase = RootOfUnity(-(DyadicRational(r) * ad)).value();
            out.add(ElementaryTensor::make(r, PowerOfTwo(level), phase * zeta, a));
        }
    }
    return out;
}

inline X0Element left_act_R(const RElement& x, const X0Element& phi, int precision = PadicInt::kMaxPrecision) {
    return left_act_R(x.f, x.d, x.c, phi, precision);
}

/// Phi(f (x) 1_{(d, c)}) at (t, a, [r, x]) = c^-1 e((r + t) d) e(-p(x d)) fcheck(t) [a = c].
inline cplx phi_eval_raw(const SymbolFunction& f, const DyadicRational& d, PowerOfTwo c, double t, PowerOfTwo a,
                         double r, const PadicNumber& x) {
    if (a != c) return {};
    return e_of(t * d.to_double()) * f.f_check(t) * chi_eval_raw(r, x, d) / c.value();
}

inline cplx phi_eval(const SymbolFunction& f, const DyadicRational& d, PowerOfTwo c, double t, PowerOfTwo a,
                     const SolenoidPoint& point) {
    if (a != c) return {};
    return e_of(t * d.to_double()) * f.f_check(t) * chi_eval(point, d) / c.value();
}

}  // namespace qadic
