#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qadic/qalgebra.hpp"

namespace qadic {

namespace detail {

// Recursive descent over
//   expr    := ('+'|'-')? term (('+'|'-') term)*
//   term    := factor ('*'? factor)*
//   factor  := scalar | atom trailer* | '(' expr ')' trailer*
//   atom    := 'u' | 's' | '1' | '0'
//   trailer := '^*' | '^' int
//   scalar  := '(' number ')' | '(' number 'i' ')' | '(' number ('+'|'-') number 'i' ')'
// where number is an optionally signed integer, fraction p/q or decimal.
class ExprParser {
public:
    explicit ExprParser(std::string_view src) : src_(src) {}

    ExactElement parse() {
        ExactElement e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail({"'+'", "'-'", "'*'", "factor", "end of input"}, "unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail) const {
        throw ParseError(pos_, std::move(expected), detail);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail({std::string("'") + c + "'"}, "missing token");
    }

    static bool starts_factor(char c) { return c == 'u' || c == 's' || c == '1' || c == '0' || c == '('; }

    ExactElement expr() {
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        ExactElement out = term();
        if (negate) out = -out;
        for (;;) {
            if (accept('+')) out += term();
            else if (accept('-')) out = out - term();
            else return out;
        }
    }

    ExactElement term() {
        ExactElement out = factor();
        for (;;) {
            if (accept('*')) out = out * factor();
            else if (starts_factor(peek())) out = out * factor();
            else return out;
        }
    }

    ExactElement factor() {
        char c = peek();
        ExactElement base;
        bool is_s = false;
        bool is_u = false;
        if (c == '(') {
            const std::size_t save = pos_;
            if (auto s = try_scalar()) return ExactElement::scalar(*s);
            pos_ = save;
            ++pos_;
            base = expr();
            expect(')');
        } else if (c == 'u') {
            ++pos_;
            base = ExactElement::u();
            is_u = true;
        } else if (c == 's') {
            ++pos_;
            base = ExactElement::s();
            is_s = true;
        } else if (c == '1') {
            ++pos_;
            base = ExactElement::identity();
        } else if (c == '0') {
            ++pos_;
            base = ExactElement();
        } else {
            fail({"'u'", "'s'", "'1'", "'0'", "'('"}, c == '\0' ? "unexpected end of input" : "unexpected character");
        }
        while (accept('^')) {
            if (accept('*')) {
                base = base.adjoint();
                is_s = false;
                continue;
            }
            const std::size_t at = pos_;
            std::int64_t n = integer();
            if (n < 0) {
                if (!is_u) {
                    pos_ = at;
                    fail({"'*'", "non-negative integer"}, is_s ? "s is not invertible; use s^*" : "negative power");
                }
                base = ExactElement::u(n);
            } else if (is_u) {
                base = ExactElement::u(n);
            } else {
                if (n > QMonomial::kMaxLevel) fail({"exponent <= 60"}, "exponent too large");
                base = base.pow(static_cast<int>(n));
            }
            is_s = false;
            is_u = false;
        }
        return base;
    }

    std::int64_t integer() {
        skip_ws();
        bool neg = false;
        if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) neg = src_[pos_++] == '-';
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) fail({"integer"}, "missing exponent");
        std::int64_t v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, src_[pos_] - '0', &v))
                fail({"64-bit integer"}, "integer overflow");
            ++pos_;
        }
        return neg ? -v : v;
    }

    // Optionally signed integer, p/q or decimal with optional exponent; nullopt leaves pos_ unspecified.
    std::optional<Rational> number() {
        skip_ws();
        std::size_t p = pos_;
        bool neg = false;
        if (p < src_.size() && (src_[p] == '-' || src_[p] == '+')) neg = src_[p++] == '-';
        std::size_t digits = p;
        while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
        if (p == digits) return std::nullopt;
        Rational v{boost::multiprecision::cpp_int(std::string(src_.substr(digits, p - digits)))};
        if (p < src_.size() && src_[p] == '.') {
            std::size_t f = ++p;
            while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
            if (p > f) {
                boost::multiprecision::cpp_int scale = 1;
                for (std::size_t k = f; k < p; ++k) scale *= 10;
                v += Rational(boost::multiprecision::cpp_int(std::string(src_.substr(f, p - f))), scale);
            }
        }
        if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
            std::size_t q = p + 1;
            bool eneg = false;
            if (q < src_.size() && (src_[q] == '-' || src_[q] == '+')) eneg = src_[q++] == '-';
            std::size_t ed = q;
            while (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q]))) ++q;
            if (q > ed && q - ed <= 4) {
                int ex = std::stoi(std::string(src_.substr(ed, q - ed)));
                boost::multiprecision::cpp_int scale = 1;
                for (int k = 0; k < ex; ++k) scale *= 10;
                v = eneg ? v / Rational(scale) : v * Rational(scale);
                p = q;
            }
        }
        pos_ = p;
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '/') {
            ++pos_;
            skip_ws();
            std::size_t d = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (pos_ == d) fail({"denominator"}, "missing denominator");
            boost::multiprecision::cpp_int den(std::string(src_.substr(d, pos_ - d)));
            if (den == 0) fail({"non-zero denominator"}, "division by zero");
            v /= Rational(den);
        }
        return neg ? Rational(-v) : v;
    }

    std::optional<GaussianRational> try_scalar() {
        if (!accept('(')) return std::nullopt;
        auto first = number();
        if (!first) return std::nullopt;
        if (accept(')')) return GaussianRational(*first);
        if (accept('i')) {
            if (!accept(')')) return std::nullopt;
            return GaussianRational(Rational(0), *first);
        }
        char sign = peek();
        if (sign != '+' && sign != '-') return std::nullopt;
        ++pos_;
        skip_ws();
        auto second = number();
        if (!second || !accept('i') || !accept(')')) return std::nullopt;
        return GaussianRational(*first, sign == '-' ? Rational(-*second) : *second);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the surface syntax into canonical form; accepts the output of to_text for exact elements.
inline ExactElement parse_expr(std::string_view src) { return detail::ExprParser(src).parse(); }

}  // namespace qadic
