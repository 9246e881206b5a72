#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qadic/qalgebra/element.hpp"

namespace qadic {

using ExactVector = SparseVector<GaussianRational>;

/// An isometry n -> 2^i n + c of l^2(Z), i.e. a monomial with full domain.
class MonomialIsometry {
public:
    explicit MonomialIsometry(const QMonomial& m) : m_(m) {
        if (!m.is_isometry()) throw UnsupportedIsometry("monomial " + to_string(m) + " is not defined on all of Z");
    }

    /// Accepts only a single monomial with coefficient 1.
    static MonomialIsometry from_element(const ExactElement& e) {
        if (e.size() != 1 || !(e.terms().begin()->second == GaussianRational(1)))
            throw UnsupportedIsometry("only single monomials with coefficient 1 are supported");
        return MonomialIsometry(e.terms().begin()->first);
    }

    const QMonomial& monomial() const { return m_; }
    int level() const { return m_.i; }
    std::int64_t offset() const { return m_.m0; }
    ExactElement element() const { return ExactElement::monomial(m_); }
    ExactElement adjoint_element() const { return ExactElement::monomial(qadic::adjoint(m_)); }

    std::int64_t apply(std::int64_t n) const { return m_.apply(n); }

    /// S^* e_n is e_k or zero.
    std::optional<std::int64_t> apply_adjoint(std::int64_t n) const { return qadic::adjoint(m_).act(n); }

private:
    QMonomial m_;
};

enum class UnitarySupport { Empty, FixedPoint, AllOfZ };

struct WoldData {
    MonomialIsometry isometry;
    UnitarySupport support;
    std::int64_t fixed_point = 0;  // meaningful for FixedPoint only; f(fixed_point) = fixed_point
};

/// Support of the restriction of S to the intersection of im(S^k).
inline WoldData unitary_part(const MonomialIsometry& S) {
    if (S.level() == 0) return {S, UnitarySupport::AllOfZ, 0};
    // im(S^k) shrinks to the 2-adic fixed point c / (1 - 2^i).
    std::int64_t q = detail::pow2(S.level()) - 1;
    std::int64_t c = S.offset();
    if (c % q != 0) return {S, UnitarySupport::Empty, 0};
    return {S, UnitarySupport::FixedPoint, -c / q};
}

/// Throws CuntzRelationViolation unless S0 S0^* + S1 S1^* = 1.
inline void check_cuntz(const MonomialIsometry& S0, const MonomialIsometry& S1) {
    ExactElement sum = S0.element() * S0.adjoint_element() + S1.element() * S1.adjoint_element();
    if (!equals(sum, ExactElement::identity()))
        throw CuntzRelationViolation("S0 S0^* + S1 S1^* = " + std::to_string(sum.size()) + "-term element, not 1");
}

/// Sum over i = 0..n of S0^i S1 S0^* S1^*^i.
inline ExactElement build_Vn(const MonomialIsometry& S0, const MonomialIsometry& S1, int n) {
    check_cuntz(S0, S1);
    const ExactElement core = S1.element() * S0.adjoint_element();
    ExactElement left = ExactElement::identity();
    ExactElement right = ExactElement::identity();
    ExactElement out;
    for (int i = 0; i <= n; ++i) {
        out += left * core * right;
        left = left * S0.element();
        right = S1.adjoint_element() * right;
    }
    return out;
}

namespace detail {

// V e_k, the terminating sum of S0^i S1 S0^* w_i with w_i = S1^*^i e_k.
inline std::optional<std::int64_t> V_on_basis(const MonomialIsometry& S0, const MonomialIsometry& S1,
                                              const WoldData& w1, std::int64_t k, std::int64_t guard) {
    std::optional<std::int64_t> w = k;
    for (std::int64_t i = 0;; ++i) {
        if (i > guard) throw NonTermination("V-limit did not stabilise for e_" + std::to_string(k));
        if (!w) return std::nullopt;
        // On the S1 fixed point S1^* acts trivially and S0^* vanishes, so no later term contributes.
        if (w1.support == UnitarySupport::FixedPoint && *w == w1.fixed_point) return std::nullopt;
        if (auto t = S0.apply_adjoint(*w)) {
            std::int64_t out = S1.apply(*t);
            for (std::int64_t p = 0; p < i; ++p) out = S0.apply(out);
            return out;  // ranges of S0 and S1 are disjoint, so at most one i contributes
        }
        w = S1.apply_adjoint(*w);
    }
}

inline std::int64_t max_index(const ExactVector& v) {
    std::int64_t r = 0;
    for (const auto& [n, c] : v) r = std::max(r, n < 0 ? -n : n);
    return r;
}

}  // namespace detail

/// The strong limit of V_n applied to a finitely supported vector.
inline ExactVector apply_V_limit(const MonomialIsometry& S0, const MonomialIsometry& S1, const ExactVector& v) {
    check_cuntz(S0, S1);
    const WoldData w1 = unitary_part(S1);
    const std::int64_t guard = 64 * std::max<std::int64_t>(1, detail::max_index(v));
    ExactVector out;
    for (const auto& [k, c] : v)
        if (auto n = detail::V_on_basis(S0, S1, w1, k, guard)) out[*n] += c;
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

/// U = V + W, with W sending the S1 fixed-point vector to phase times the S0 fixed-point vector.
class ExtensionUnitary {
public:
    ExtensionUnitary(const MonomialIsometry& S0, const MonomialIsometry& S1, GaussianRational phase = 1)
        : S0_(S0), S1_(S1), w0_(unitary_part(S0)), w1_(unitary_part(S1)), phase_(std::move(phase)) {
        if (w0_.support != w1_.support)
            throw HypothesisViolation("unitary parts of S0 and S1 are not unitarily equivalent");
        if (w0_.support == UnitarySupport::AllOfZ)
            throw UnsupportedIsometry("unitary isometries cannot satisfy the Cuntz relation");
        check_cuntz(S0_, S1_);
    }

    const WoldData& wold0() const { return w0_; }
    const WoldData& wold1() const { return w1_; }

    ExactVector apply(std::int64_t n) const {
        if (w1_.support == UnitarySupport::FixedPoint && n == w1_.fixed_point) return {{w0_.fixed_point, phase_}};
        const std::int64_t guard = 64 * std::max<std::int64_t>(1, n < 0 ? -n : n);
        if (auto m = detail::V_on_basis(S0_, S1_, w1_, n, guard)) return {{*m, GaussianRational(1)}};
        return {};
    }

    ExactVector apply(const ExactVector& v) const {
        ExactVector out;
        for (const auto& [n, c] : v)
            for (const auto& [m, d] : apply(n)) out[m] += c * d;
        for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return out;
    }

private:
    MonomialIsometry S0_;
    MonomialIsometry S1_;
    WoldData w0_;
    WoldData w1_;
    GaussianRational phase_;
};

struct WoldReport {
    std::int64_t window = 0;
    std::map<std::int64_t, ExactVector> table;  // n -> U e_n
    bool u1_holds = true;                        // U S0 = S1 on the window
    bool u2_holds = true;                        // S0 U = U^2 S0 on the window
    bool permutation = true;                     // U permutes basis vectors up to phase
};

/// The table of U on [-N, N] together with the (U1), (U2) and permutation checks.
inline WoldReport build_extension_unitary(const MonomialIsometry& S0, const MonomialIsometry& S1, std::int64_t N,
                                          const GaussianRational& phase = 1) {
    ExtensionUnitary U(S0, S1, phase);
    WoldReport rep;
    rep.window = N;
    const ExactElement s0 = S0.element();
    const ExactElement s1 = S1.element();
    std::map<std::int64_t, std::int64_t> seen;
    for (std::int64_t n = -N; n <= N; ++n) {
        ExactVector e = basis_vector<GaussianRational>(n);
        ExactVector Un = U.apply(n);
        rep.table[n] = Un;
        if (U.apply(lambda2_apply(s0, e)) != lambda2_apply(s1, e)) rep.u1_holds = false;
        if (lambda2_apply(s0, Un) != U.apply(U.apply(lambda2_apply(s0, e)))) rep.u2_holds = false;
        if (Un.size() != 1 || !seen.emplace(Un.begin()->first, n).second) rep.permutation = false;
    }
    return rep;
}

}  // namespace qadic
