#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qadic/bimodule/x0.hpp"

namespace qadic {

namespace detail {

inline constexpr double kCaseConsistencyTol = 1e-9;

using ShiftCoefficients = std::vector<std::pair<std::int64_t, cplx>>;

inline QMonomial projection_monomial(const ElementaryTensor& t) {
    return QMonomial::from_word(t.l, t.level(), t.level(), -t.l);
}

// m1 <= m2, L = m2 / m1: m1 <xi1, xi2((. + b) / L)> for b in L supp xi2 - supp xi1.
inline ShiftCoefficients coefficients_case1(const ElementaryTensor& x, const ElementaryTensor& y) {
    const int e = (y.m / x.m).exponent();
    const int g = std::max(x.xi.spacing_exp(), y.xi.spacing_exp() - e);
    const GridFunction a = refine(x.xi, g), b = refine(y.xi, g + e);
    const double L = std::ldexp(1.0, e);
    const auto lo = static_cast<std::int64_t>(std::floor(L * b.support_lo() - a.support_hi()));
    const auto hi = static_cast<std::int64_t>(std::ceil(L * b.support_hi() - a.support_lo()));
    ShiftCoefficients out;
    for (std::int64_t n = lo; n <= hi; ++n)
        out.emplace_back(n, x.m.value() * inner_affine(a, b, PowerOfTwo(-e), DyadicRational::make(n, e)));
    return out;
}

// m1 >= m2, K = m1 / m2: m1 <xi1, xi2(K . + b)> for b in supp xi2 - K supp xi1.
inline ShiftCoefficients coefficients_case2(const ElementaryTensor& x, const ElementaryTensor& y) {
    const int e = (x.m / y.m).exponent();
    const int g = std::max(x.xi.spacing_exp(), y.xi.spacing_exp() + e);
    const GridFunction a = refine(x.xi, g), b = refine(y.xi, g - e);
    const double K = std::ldexp(1.0, e);
    const auto lo = static_cast<std::int64_t>(std::floor(b.support_lo() - K * a.support_hi()));
    const auto hi = static_cast<std::int64_t>(std::ceil(b.support_hi() - K * a.support_lo()));
    ShiftCoefficients out;
    for (std::int64_t n = lo; n <= hi; ++n) {
        cplx c = e == 0 ? std::conj(inner_affine(b, a, PowerOfTwo(0), DyadicRational(-n)))  // <xi2, xi1(. - b)>^*
                        : inner_affine(a, b, PowerOfTwo(e), DyadicRational(n));
        out.emplace_back(n, x.m.value() * c);
    }
    return out;
}

inline void check_case_consistency(const ElementaryTensor& x, const ElementaryTensor& y, const ShiftCoefficients& c1,
                                   const ShiftCoefficients& c2) {
    const double scale = std::max(1.0, x.m.value() * norm(x.xi) * norm(y.xi));
    if (c1.size() != c2.size()) throw UnresolvedConvention("inner product branches use different shift ranges");
    for (std::size_t k = 0; k < c1.size(); ++k)
        if (c1[k].first != c2[k].first || std::abs(c1[k].second - c2[k].second) > kCaseConsistencyTol * scale)
            throw UnresolvedConvention("inner product branches disagree at b = " + std::to_string(c1[k].first));
}

}  // namespace detail

/// The Q_2-valued inner product, conjugate-linear in the first argument. Per pair of tensors
/// with m1 <= m2 the terms are c_b P1 u^-b s_{m2/m1} P2, otherwise c_b P1 s_{m1/m2}^* u^-b P2,
/// where P = u^l e_k u^-l is the projection onto the indicator's class.
inline NumericElement q_inner(const X0Element& phi1, const X0Element& phi2) {
    std::vector<NumericElement::Term> raw;
    for (const auto& x : phi1.tensors()) {
        for (const auto& y : phi2.tensors()) {
            const QMonomial p1 = detail::projection_monomial(x), p2 = detail::projection_monomial(y);
            const bool first = x.m <= y.m;
            detail::ShiftCoefficients coeffs = first ? detail::coefficients_case1(x, y) : detail::coefficients_case2(x, y);
            if (x.m == y.m) detail::check_case_consistency(x, y, coeffs, detail::coefficients_case2(x, y));
            const int e = std::abs((y.m / x.m).exponent());
            for (const auto& [b, c] : coeffs) {
                if (c == cplx()) continue;
                QMonomial w = first ? QMonomial::from_word(-b, e, 0, 0) : QMonomial::from_word(0, 0, e, -b);
                if (auto wp = compose(w, p2))
                    if (auto m = compose(p1, *wp)) raw.emplace_back(*m, c);
            }
        }
    }
    return NumericElement::from_terms(raw);
}

}  // namespace qadic
