#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>

#include "qadic/errors.hpp"

namespace qadic {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("int64 addition overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("int64 subtraction overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("int64 multiplication overflow");
    return r;
}

inline std::int64_t checked_shl(std::int64_t a, int k) {
    if (k < 0) throw ArithmeticOverflow("negative shift");
    if (a == 0) return 0;
    if (k >= 63) throw ArithmeticOverflow("int64 shift overflow");
    std::int64_t r = a * (std::int64_t{1} << k);
    if ((r >> k) != a) throw ArithmeticOverflow("int64 shift overflow");
    return r;
}

inline std::int64_t pow2(int k) { return checked_shl(1, k); }

// Floor division by 2^k (arithmetic shift rounds toward -inf).
inline std::int64_t floor_shr(std::int64_t a, int k) { return k >= 63 ? (a < 0 ? -1 : 0) : (a >> k); }

// Representative of a mod 2^k in [0, 2^k).
inline std::int64_t mod_pow2(std::int64_t a, int k) {
    if (k == 0) return 0;
    if (k >= 63) throw ArithmeticOverflow("modulus 2^k too large");
    return a & ((std::int64_t{1} << k) - 1);
}

inline int ctz64(std::uint64_t v) { return v == 0 ? 64 : std::countr_zero(v); }

}  // namespace detail

/// e(t) = exp(2 pi i t); the argument is reduced mod 1 before evaluation.
inline std::complex<double> e_of(double t) {
    double f = t - std::round(t);
    double a = 2.0 * std::numbers::pi * f;
    return {std::cos(a), std::sin(a)};
}

/// Element n / 2^e of Z[1/2]. Invariant: e = 0 or n odd; zero is 0 / 2^0.
class DyadicRational {
public:
    static constexpr int kMaxExponent = 62;

    DyadicRational() = default;
    DyadicRational(std::int64_t n) : num_(n) {}  // NOLINT: integers embed implicitly

    /// n / 2^e in canonical form; e may be negative (then n is scaled up).
    static DyadicRational make(std::int64_t n, int e) {
        DyadicRational q;
        if (n == 0) return q;
        if (e < 0) {
            q.num_ = detail::checked_shl(n, -e);
            return q;
        }
        int tz = std::min(detail::ctz64(static_cast<std::uint64_t>(n)), e);
        q.num_ = n >> tz;
        q.exp_ = e - tz;
        if (q.exp_ > kMaxExponent) throw ArithmeticOverflow("dyadic exponent exceeds 62");
        return q;
    }

    std::int64_t numerator() const { return num_; }
    int exponent() const { return exp_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return exp_ == 0; }

    std::int64_t floor() const { return detail::floor_shr(num_, exp_); }
    DyadicRational frac() const { return make(detail::mod_pow2(num_, exp_), exp_); }
    double to_double() const { return std::ldexp(static_cast<double>(num_), -exp_); }

    /// this * 2^k for any integer k.
    DyadicRational mul_pow2(int k) const {
        if (num_ == 0) return {};
        return make(num_, exp_ - k);
    }

    DyadicRational operator-() const { return make(detail::checked_sub(0, num_), exp_); }

    friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
        int e = std::max(a.exp_, b.exp_);
        std::int64_t x = detail::checked_shl(a.num_, e - a.exp_);
        std::int64_t y = detail::checked_shl(b.num_, e - b.exp_);
        return make(detail::checked_add(x, y), e);
    }
    friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) { return a + (-b); }
    friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
        return make(detail::checked_mul(a.num_, b.num_), a.exp_ + b.exp_);
    }
    DyadicRational& operator+=(const DyadicRational& o) { return *this = *this + o; }
    DyadicRational& operator-=(const DyadicRational& o) { return *this = *this - o; }
    DyadicRational& operator*=(const DyadicRational& o) { return *this = *this * o; }

    friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
    friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
        int e = std::max(a.exp_, b.exp_);
        __int128 x = static_cast<__int128>(a.num_) << (e - a.exp_);
        __int128 y = static_cast<__int128>(b.num_) << (e - b.exp_);
        return x <=> y;
    }

    /// "n" or "n/2^e".
    std::string to_string() const {
        if (exp_ == 0) return std::to_string(num_);
        return std::to_string(num_) + "/2^" + std::to_string(exp_);
    }

    /// Accepts "n", "n/2^e" and "n/q" with q a power of two.
    static DyadicRational parse(std::string_view s) {
        auto trim = [](std::string_view v) {
            while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
            while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
            return v;
        };
        auto to_int = [](std::string_view v) -> std::int64_t {
            std::string t(v);
            std::size_t pos = 0;
            long long r = 0;
            try {
                r = std::stoll(t, &pos);
            } catch (const std::exception&) {
                throw ParseError(0, {"integer"}, "bad integer '" + t + "'");
            }
            if (pos != t.size()) throw ParseError(pos, {"integer"}, "bad integer '" + t + "'");
            return r;
        };
        s = trim(s);
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return DyadicRational(to_int(s));
        std::int64_t n = to_int(trim(s.substr(0, slash)));
        std::string_view den = trim(s.substr(slash + 1));
        if (den.size() > 2 && den.substr(0, 2) == "2^") return make(n, static_cast<int>(to_int(den.substr(2))));
        std::int64_t q = to_int(den);
        if (q <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(q)))
            throw ParseError(slash + 1, {"power of two"}, "denominator must be a power of two");
        return make(n, std::countr_zero(static_cast<std::uint64_t>(q)));
    }

private:
    std::int64_t num_ = 0;
    int exp_ = 0;
};

inline DyadicRational dyadic_normalize(std::int64_t n, int e) { return DyadicRational::make(n, e); }

/// 2^k for k in Z; exponent arithmetic is overflow checked.
class PowerOfTwo {
public:
    static constexpr int kMaxExponent = 1 << 20;

    PowerOfTwo() = default;
    explicit PowerOfTwo(int exponent) : exp_(exponent) { check(exp_); }

    int exponent() const { return exp_; }
    double value() const { return std::ldexp(1.0, exp_); }
    bool is_integer() const { return exp_ >= 0; }
    PowerOfTwo inverse() const { return PowerOfTwo(-exp_); }

    /// Exact value; requires |exponent| <= 62.
    DyadicRational to_dyadic() const {
        if (exp_ > DyadicRational::kMaxExponent || -exp_ > DyadicRational::kMaxExponent)
            throw ArithmeticOverflow("power of two out of dyadic range");
        return DyadicRational::make(1, -exp_);
    }

    friend PowerOfTwo operator*(PowerOfTwo a, PowerOfTwo b) {
        int e;
        if (__builtin_add_overflow(a.exp_, b.exp_, &e)) throw ArithmeticOverflow("exponent overflow");
        return PowerOfTwo(e);
    }
    friend PowerOfTwo operator/(PowerOfTwo a, PowerOfTwo b) { return a * b.inverse(); }
    friend bool operator==(PowerOfTwo, PowerOfTwo) = default;
    friend auto operator<=>(PowerOfTwo, PowerOfTwo) = default;

    std::string to_string() const { return "2^" + std::to_string(exp_); }

    /// Accepts "2^k", or any dyadic string whose value is a power of two.
    static PowerOfTwo parse(std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        if (s.size() > 2 && s.substr(0, 2) == "2^") {
            std::string t(s.substr(2));
            std::size_t pos = 0;
            int k = 0;
            try {
                k = std::stoi(t, &pos);
            } catch (const std::exception&) {
                throw ParseError(2, {"integer"}, "bad exponent");
            }
            if (pos != t.size()) throw ParseError(2 + pos, {"integer"}, "bad exponent");
            return PowerOfTwo(k);
        }
        DyadicRational q = DyadicRational::parse(s);
        std::int64_t n = q.numerator();
        if (n <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(n)))
            throw ParseError(0, {"power of two"}, "value is not a power of two");
        return PowerOfTwo(std::countr_zero(static_cast<std::uint64_t>(n)) - q.exponent());
    }

private:
    static void check(int e) {
        if (e > kMaxExponent || e < -kMaxExponent) throw ArithmeticOverflow("power-of-two exponent out of range");
    }
    int exp_ = 0;
};

/// Truncated 2-adic integer: residue mod 2^N, N in [0, 64]. N = 0 means no known digits.
class PadicInt {
public:
    static constexpr int kMaxPrecision = 64;

    PadicInt() = default;
    PadicInt(std::uint64_t residue, int precision) : residue_(residue & mask(precision)), prec_(precision) {
        if (precision < 0 || precision > kMaxPrecision) throw Error("PadicInt precision must lie in [0, 64]");
    }

    static PadicInt from_int(std::int64_t v, int precision = kMaxPrecision) {
        return PadicInt(static_cast<std::uint64_t>(v), precision);
    }

    std::uint64_t residue() const { return residue_; }
    int precision() const { return prec_; }

    PadicInt reduce(int m) const {
        if (m > prec_) throw InsufficientPrecision("cannot raise precision by reduction");
        return PadicInt(residue_, m);
    }

    /// 2-adic valuation, capped at the precision.
    int valuation() const { return std::min(detail::ctz64(residue_), prec_); }

    /// Representative in [-2^(N-1), 2^(N-1)).
    std::int64_t to_signed() const {
        if (prec_ == 0) return 0;
        if (prec_ == 64) return static_cast<std::int64_t>(residue_);
        std::uint64_t half = std::uint64_t{1} << (prec_ - 1);
        return residue_ >= half ? static_cast<std::int64_t>(residue_) - (std::int64_t{1} << prec_)
                                : static_cast<std::int64_t>(residue_);
    }

    /// Residue mod 2^level; reading beyond the known digits throws.
    std::uint64_t low_bits(int level) const {
        if (level > prec_) throw InsufficientPrecision("requested " + std::to_string(level) + " digits, " +
                                                       std::to_string(prec_) + " known");
        return residue_ & mask(level);
    }

    /// this * 2^k; precision grows by k, capped at 64.
    PadicInt shifted_left(int k) const {
        std::uint64_t r = k >= 64 ? 0 : residue_ << k;
        return PadicInt(r, std::min(kMaxPrecision, prec_ + k));
    }

    /// this / 2^k; requires the low k digits to be known zeros.
    PadicInt shifted_right(int k) const {
        if (low_bits(k) != 0) throw Error("PadicInt not divisible by 2^k");
        return PadicInt(k >= 64 ? 0 : residue_ >> k, prec_ - k);
    }

    PadicInt operator-() const { return PadicInt(~residue_ + 1, prec_); }
    friend PadicInt operator+(const PadicInt& a, const PadicInt& b) {
        return PadicInt(a.residue_ + b.residue_, std::min(a.prec_, b.prec_));
    }
    friend PadicInt operator-(const PadicInt& a, const PadicInt& b) { return a + (-b); }
    friend PadicInt operator*(const PadicInt& a, const PadicInt& b) {
        return PadicInt(a.residue_ * b.residue_, std::min(a.prec_, b.prec_));
    }

    friend bool operator==(const PadicInt&, const PadicInt&) = default;

    /// Equality at the common known precision.
    bool agrees_with(const PadicInt& o) const {
        int m = std::min(prec_, o.prec_);
        return (residue_ & mask(m)) == (o.residue_ & mask(m));
    }

private:
    static std::uint64_t mask(int n) { return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1); }

    std::uint64_t residue_ = 0;
    int prec_ = kMaxPrecision;
};

/// Truncated element unit / 2^shift of Q_2. Invariant: shift = 0 or the unit is odd (or has no known digits).
class PadicNumber {
public:
    PadicNumber() = default;
    explicit PadicNumber(PadicInt unit, int shift = 0) : unit_(unit), shift_(shift) {
        if (shift < 0) throw Error("PadicNumber shift must be non-negative");
        normalize();
    }

    static PadicNumber from_dyadic(const DyadicRational& q, int precision = PadicInt::kMaxPrecision) {
        return PadicNumber(PadicInt::from_int(q.numerator(), precision), q.exponent());
    }

    const PadicInt& unit() const { return unit_; }
    int shift() const { return shift_; }
    int precision() const { return unit_.precision(); }
    /// The value is known modulo 2^absolute_precision().
    int absolute_precision() const { return unit_.precision() - shift_; }
    bool in_z2() const { return shift_ == 0; }

    PadicNumber operator-() const { return PadicNumber(-unit_, shift_); }
    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
        int v = std::max(a.shift_, b.shift_);
        return PadicNumber(a.unit_.shifted_left(v - a.shift_) + b.unit_.shifted_left(v - b.shift_), v);
    }
    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }
    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
        return PadicNumber(a.unit_ * b.unit_, a.shift_ + b.shift_);
    }
    /// Exact dyadic factors cost no precision.
    friend PadicNumber operator*(const PadicNumber& a, const DyadicRational& q) {
        PadicInt n(static_cast<std::uint64_t>(q.numerator()), a.unit_.precision());
        return PadicNumber(a.unit_ * n, a.shift_ + q.exponent());
    }
    friend PadicNumber operator+(const PadicNumber& a, const DyadicRational& q) {
        return a + from_dyadic(q, a.precision());
    }

    /// Equality at the common known precision.
    bool agrees_with(const PadicNumber& o) const {
        if (shift_ != o.shift_) return false;
        return unit_.agrees_with(o.unit_);
    }

    /// x - p(x), an element of Z_2 known mod 2^(N - shift).
    PadicInt integral_part() const {
        if (shift_ > unit_.precision()) throw InsufficientPrecision("fractional digits beyond known precision");
        std::uint64_t low = unit_.low_bits(shift_);
        return (unit_ - PadicInt(low, unit_.precision())).shifted_right(shift_);
    }

private:
    void normalize() {
        while (shift_ > 0 && unit_.precision() > 0 && (unit_.residue() & 1u) == 0) {
            unit_ = unit_.shifted_right(1);
            --shift_;
        }
    }

    PadicInt unit_{0, PadicInt::kMaxPrecision};
    int shift_ = 0;
};

/// p: Q_2 -> Z[1/2] with p(x) in [0,1) and x - p(x) in Z_2.
inline DyadicRational p_map(const PadicNumber& x) {
    int v = x.shift();
    if (v == 0) return {};
    if (v > x.precision())
        throw InsufficientPrecision("p_map needs " + std::to_string(v) + " digits, " +
                                    std::to_string(x.precision()) + " known");
    if (v > DyadicRational::kMaxExponent) throw ArithmeticOverflow("p_map denominator exceeds 2^62");
    return DyadicRational::make(static_cast<std::int64_t>(x.unit().low_bits(v)), v);
}

/// e(angle) with angle a dyadic rational reduced into [0,1).
class RootOfUnity {
public:
    RootOfUnity() = default;
    explicit RootOfUnity(const DyadicRational& angle) : angle_(angle.frac()) {}

    const DyadicRational& angle() const { return angle_; }

    RootOfUnity inverse() const { return RootOfUnity(-angle_); }
    friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) { return RootOfUnity(a.angle_ + b.angle_); }
    friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;

    /// Exact on the fourth roots of unity.
    std::complex<double> value() const {
        if (angle_.exponent() <= 2) {
            switch (angle_.numerator() << (2 - angle_.exponent())) {
                case 0: return {1.0, 0.0};
                case 1: return {0.0, 1.0};
                case 2: return {-1.0, 0.0};
                case 3: return {0.0, -1.0};
                default: break;
            }
        }
        return e_of(angle_.to_double());
    }

private:
    DyadicRational angle_;
};

inline RootOfUnity chi0(const PadicNumber& x) { return RootOfUnity(p_map(x)); }

/// Canonical representative of [r, x] in (R x Q_2) / Z[1/2]: r in [0,1), z in Z_2.
struct SolenoidPoint {
    double r = 0.0;
    PadicInt z;
};

inline SolenoidPoint solenoid_canonical(double r, const PadicNumber& x) {
    DyadicRational b = p_map(x);
    PadicInt z = x.integral_part();
    double r1 = r - b.to_double();
    double n = std::floor(r1);
    double r2 = r1 - n;
    if (r2 >= 1.0) {
        r2 -= 1.0;
        n += 1.0;
    }
    z = z - PadicInt::from_int(static_cast<std::int64_t>(n), z.precision());
    return {r2, z};
}

/// chi([r, x])(b) = e(r b) e(-p(x b)) on an arbitrary representative.
inline std::complex<double> chi_eval_raw(double r, const PadicNumber& x, const DyadicRational& b) {
    return e_of(r * b.to_double()) * RootOfUnity(-p_map(x * b)).value();
}

inline std::complex<double> chi_eval(const SolenoidPoint& pt, const DyadicRational& b) {
    return chi_eval_raw(pt.r, PadicNumber(pt.z), b);
}

}  // namespace qadic
