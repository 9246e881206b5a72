#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qadic/bimodule/action.hpp"
#include "qadic/bimodule/inner.hpp"

namespace qadic {

/// Finite sum of simple tensors phi (x) e_n in X (x)_{Q_2} l^2(Z); coefficients live in phi.
struct InducedVector {
    std::vector<std::pair<X0Element, std::int64_t>> legs;

    bool empty() const { return legs.empty(); }
    InducedVector& operator+=(const InducedVector& o) {
        legs.insert(legs.end(), o.legs.begin(), o.legs.end());
        return *this;
    }
    friend InducedVector operator*(cplx c, InducedVector v) {
        for (auto& [phi, n] : v.legs) phi = c * phi;
        return v;
    }
};

/// W xi = (1_{Z_2} (x) xi (x) 1_1) (x) e_0.
inline InducedVector induce_W(const GridFunction& xi) {
    if (xi.is_zero()) return {};
    return {{{X0Element::simple(0, PowerOfTwo(0), xi), 0}}};
}

/// <phi1 (x) e_m, phi2 (x) e_n> = <e_m, lambda_2(<phi1, phi2>_Q) e_n>.
inline cplx induced_inner(const InducedVector& v1, const InducedVector& v2) {
    cplx s = 0;
    for (const auto& [phi1, m] : v1.legs) {
        for (const auto& [phi2, n] : v2.legs) {
            SparseVector<cplx> col = lambda2_apply(q_inner(phi1, phi2), basis_vector<cplx>(n));
            if (auto it = col.find(m); it != col.end()) s += it->second;
        }
    }
    return s;
}

inline double induced_norm(const InducedVector& v) { return std::sqrt(std::max(0.0, induced_inner(v, v).real())); }

inline double induced_distance(const InducedVector& a, const InducedVector& b) {
    InducedVector d = a;
    d += cplx(-1.0) * b;
    return induced_norm(d);
}

/// The induced representation: the left R-action on every bimodule leg.
inline InducedVector induced_act(const SymbolFunction& f, const DyadicRational& d, PowerOfTwo c,
                                 const InducedVector& v, int precision = PadicInt::kMaxPrecision) {
    InducedVector out;
    for (const auto& [phi, n] : v.legs) {
        X0Element x = left_act_R(f, d, c, phi, precision);
        if (!x.is_zero()) out.legs.emplace_back(std::move(x), n);
    }
    return out;
}

/// |<W xi1, Ind(x) W xi2> - <xi1, F pi(x) F^-1 xi2>| / (||xi1|| ||xi2||) for x = f (x) 1_{(d, c)}.
inline double verify_theorem(const SymbolFunction& f, const DyadicRational& d, PowerOfTwo c, const GridFunction& xi1,
                             const GridFunction& xi2, int precision = PadicInt::kMaxPrecision) {
    const double scale = norm(xi1) * norm(xi2);
    if (scale == 0.0) return 0.0;
    cplx lhs = induced_inner(induce_W(xi1), induced_act(f, d, c, induce_W(xi2), precision));
    GridFunction mid = pi_apply(f, d, c, fourier_inv(xi2));
    double W = std::max({std::abs(xi1.support_lo()), std::abs(xi1.support_hi()), 1.0});
    W = std::min(W, std::ldexp(1.0, mid.spacing_exp() - 1));
    cplx rhs = inner(xi1, fourier(mid, FourierGrid{xi1.spacing_exp(), W}));
    return std::abs(lhs - rhs) / scale;
}

/// Tolerance of the full pipeline: tighter when no dilation is involved.
inline double theorem_tolerance(PowerOfTwo c) { return c.exponent() == 0 ? 1e-3 : 5e-3; }

struct TheoremReport {
    nlohmann::json f;
    DyadicRational d;
    PowerOfTwo c;
    double residual = 0.0;
    double tolerance = 0.0;
    int g = 0;
    double window = 0.0;
    bool pass = false;
};

inline nlohmann::json to_json(const TheoremReport& r) {
    return {{"case", {{"f", r.f}, {"d", r.d.to_string()}, {"c", r.c.to_string()}}},
            {"residual", r.residual},
            {"tolerances", {{"residual", r.tolerance}}},
            {"grid", {{"g", r.g}, {"window", r.window}}},
            {"pass", r.pass}};
}

}  // namespace qadic
