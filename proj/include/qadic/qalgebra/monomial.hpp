#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "qadic/numbers.hpp"

namespace qadic {

/// u^a s^i s*^j u^b.
struct Word {
    std::int64_t a = 0;
    int i = 0;
    int j = 0;
    std::int64_t b = 0;

    friend bool operator==(const Word&, const Word&) = default;
};

/// Partial map of Z: n -> 2^(i-j) (n - r) + m0 on the class r + 2^j Z, zero elsewhere.
/// Invariant: 0 <= r < 2^j; the image class is m0 + 2^i Z.
struct QMonomial {
    static constexpr int kMaxLevel = 60;

    int j = 0;
    std::int64_t r = 0;
    int i = 0;
    std::int64_t m0 = 0;

    friend auto operator<=>(const QMonomial&, const QMonomial&) = default;

    static QMonomial identity() { return {}; }

    static QMonomial make(int j, std::int64_t r, int i, std::int64_t m0) {
        check_level(j);
        check_level(i);
        if (r < 0 || r >= detail::pow2(j)) throw Error("QMonomial residue out of range");
        return {j, r, i, m0};
    }

    static QMonomial from_word(std::int64_t a, int i, int j, std::int64_t b) {
        check_level(i);
        check_level(j);
        std::int64_t r = detail::mod_pow2(detail::checked_sub(0, b), j);
        std::int64_t q = detail::floor_shr(detail::checked_add(r, b), j);
        return {j, r, i, detail::checked_add(detail::checked_shl(q, i), a)};
    }

    Word to_word() const {
        std::int64_t a = detail::mod_pow2(m0, i);
        std::int64_t k = detail::floor_shr(m0 - a, i);
        return {a, i, j, detail::checked_add(-r, detail::checked_shl(k, j))};
    }

    bool in_domain(std::int64_t n) const { return detail::mod_pow2(n, j) == r; }

    /// f(n); requires in_domain(n).
    std::int64_t apply(std::int64_t n) const {
        std::int64_t q = detail::floor_shr(detail::checked_sub(n, r), j);
        return detail::checked_add(detail::checked_shl(q, i), m0);
    }

    std::optional<std::int64_t> act(std::int64_t n) const {
        if (!in_domain(n)) return std::nullopt;
        return apply(n);
    }

    /// The affine extension x -> 2^e x + c to Q.
    int slope_exponent() const { return i - j; }
    DyadicRational intercept() const { return DyadicRational(m0) - DyadicRational::make(r, j - i); }

    bool is_identity_map() const { return i == j && m0 == r; }
    bool is_isometry() const { return j == 0; }

    static void check_level(int level) {
        if (level < 0 || level > kMaxLevel) throw ArithmeticOverflow("monomial level out of range");
    }
};

/// m1 o m2 (apply m2 first), or nullopt when the product vanishes.
inline std::optional<QMonomial> compose(const QMonomial& m1, const QMonomial& m2) {
    int s = std::max(0, m1.j - m2.i);
    int t = std::min(m2.i, m1.j);
    std::int64_t diff = detail::checked_sub(m1.r, m2.m0);
    if (detail::mod_pow2(diff, t) != 0) return std::nullopt;
    std::int64_t k0 = s > 0 ? detail::mod_pow2(detail::floor_shr(diff, m2.i), s) : 0;
    QMonomial out;
    out.j = m2.j + s;
    out.i = m1.i + m2.i + s - m1.j;
    QMonomial::check_level(out.j);
    QMonomial::check_level(out.i);
    out.r = detail::checked_add(m2.r, detail::checked_shl(k0, m2.j));
    std::int64_t num = detail::checked_add(detail::checked_sub(m2.m0, m1.r), detail::checked_shl(k0, m2.i));
    out.m0 = detail::checked_add(m1.m0, detail::checked_shl(detail::floor_shr(num, m1.j), m1.i));
    return out;
}

inline QMonomial adjoint(const QMonomial& m) {
    QMonomial out;
    out.j = m.i;
    out.i = m.j;
    out.r = detail::mod_pow2(m.m0, m.i);
    std::int64_t q = detail::floor_shr(detail::checked_sub(out.r, m.m0), m.i);
    out.m0 = detail::checked_add(detail::checked_shl(q, m.j), m.r);
    return out;
}

/// "u^a s^i s^*^j u^b" with trivial factors omitted; "1" for the identity.
inline std::string to_string(const Word& w) {
    std::string out;
    auto add = [&out](const std::string& piece) {
        if (!out.empty()) out += ' ';
        out += piece;
    };
    auto upow = [](std::int64_t k) { return k == 1 ? std::string("u") : "u^" + std::to_string(k); };
    if (w.a != 0) add(upow(w.a));
    if (w.i != 0) add(w.i == 1 ? std::string("s") : "s^" + std::to_string(w.i));
    if (w.j != 0) add(w.j == 1 ? std::string("s^*") : "s^*^" + std::to_string(w.j));
    if (w.b != 0) add(upow(w.b));
    return out.empty() ? "1" : out;
}

inline std::string to_string(const QMonomial& m) { return to_string(m.to_word()); }

}  // namespace qadic
