#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "qadic/l2grid.hpp"
#include "qadic/qalgebra.hpp"

namespace qadic {

/// 1_{l + k Z_2} (x) xi (x) 1_{m}, with k a non-negative power of two and 0 <= l < k.
struct ElementaryTensor {
    std::int64_t l = 0;
    PowerOfTwo k;
    GridFunction xi;
    PowerOfTwo m;

    static ElementaryTensor make(std::int64_t l, PowerOfTwo k, GridFunction xi, PowerOfTwo m) {
        if (!k.is_integer()) throw Error("indicator modulus must be a non-negative power of two");
        QMonomial::check_level(k.exponent());
        return {detail::mod_pow2(l, k.exponent()), k, std::move(xi), m};
    }

    int level() const { return k.exponent(); }

    bool contains(const PadicInt& z) const {
        return z.low_bits(level()) == static_cast<std::uint64_t>(l);
    }

    cplx eval(const PadicInt& z, double t, PowerOfTwo a) const {
        if (a != m || !contains(z)) return {};
        return xi.eval(t);
    }
};

/// Finite sum of elementary tensors. Tensors with equal (l, k, m) and equal grid spacing are merged.
class X0Element {
public:
    X0Element() = default;
    explicit X0Element(ElementaryTensor t) { add(std::move(t)); }

    static X0Element simple(std::int64_t l, PowerOfTwo k, GridFunction xi, PowerOfTwo m = PowerOfTwo(0)) {
        return X0Element(ElementaryTensor::make(l, k, std::move(xi), m));
    }

    const std::vector<ElementaryTensor>& tensors() const { return tensors_; }
    bool is_zero() const { return tensors_.empty(); }

    void add(ElementaryTensor t) {
        if (t.xi.is_zero()) return;
        for (auto it = tensors_.begin(); it != tensors_.end(); ++it) {
            if (it->l == t.l && it->k == t.k && it->m == t.m && it->xi.spacing_exp() == t.xi.spacing_exp()) {
                it->xi = it->xi + t.xi;
                if (it->xi.is_zero()) tensors_.erase(it);
                return;
            }
        }
        tensors_.push_back(std::move(t));
    }

    cplx eval(const PadicInt& z, double t, PowerOfTwo a) const {
        cplx s = 0;
        for (const auto& e : tensors_) s += e.eval(z, t, a);
        return s;
    }

    X0Element& operator+=(const X0Element& o) {
        for (const auto& t : o.tensors_) add(t);
        return *this;
    }
    friend X0Element operator+(X0Element a, const X0Element& b) { return a += b; }
    friend X0Element operator*(cplx c, X0Element a) {
        X0Element out;
        for (auto& t : a.tensors_) {
            t.xi *= c;
            out.add(std::move(t));
        }
        return out;
    }
    friend X0Element operator-(X0Element a, const X0Element& b) { return a += cplx(-1.0) * b; }

private:
    std::vector<ElementaryTensor> tensors_;
};

/// L^2 distance for Haar measure on Z_2, Lebesgue measure in t and counting measure on the a-leg.
inline double distance(const X0Element& a, const X0Element& b) {
    int L = 0;
    for (const auto* x : {&a, &b})
        for (const auto& t : x->tensors()) L = std::max(L, t.level());
    std::map<std::pair<std::int64_t, int>, GridFunction> diff;  // (residue mod 2^L, log2 m)
    auto accumulate = [&](const X0Element& x, double sign) {
        for (const auto& t : x.tensors()) {
            const std::int64_t step = detail::pow2(t.level());
            for (std::int64_t r = t.l; r < detail::pow2(L); r += step) {
                auto& slot = diff[{r, t.m.exponent()}];
                slot = slot + sign * t.xi;
            }
        }
    };
    accumulate(a, 1.0);
    accumulate(b, -1.0);
    double s = 0.0;
    for (const auto& [key, f] : diff) s += std::pow(norm(f), 2);
    return std::sqrt(std::ldexp(s, -L));
}

/// (phi u^n)(z, t, a) = phi(z + n, t + n, a).
inline X0Element act_u_pow(const X0Element& phi, std::int64_t n) {
    X0Element out;
    for (const auto& t : phi.tensors())
        out.add(ElementaryTensor::make(t.l - n, t.k, translate(t.xi, DyadicRational(-n)), t.m));
    return out;
}

inline X0Element act_u(const X0Element& phi) { return act_u_pow(phi, 1); }
inline X0Element act_u_inv(const X0Element& phi) { return act_u_pow(phi, -1); }

/// (phi s_2)(z, t, a) = phi(2z, 2t, a / 2).
inline X0Element act_s2(const X0Element& phi) {
    X0Element out;
    for (const auto& t : phi.tensors()) {
        GridFunction xi = reindex(t.xi, t.xi.spacing_exp() + 1, t.xi.start());
        if (t.level() == 0) {
            out.add(ElementaryTensor::make(0, t.k, std::move(xi), t.m * PowerOfTwo(1)));
        } else if (t.l % 2 == 0) {
            out.add(ElementaryTensor::make(t.l / 2, PowerOfTwo(t.level() - 1), std::move(xi), t.m * PowerOfTwo(1)));
        }
    }
    return out;
}

/// (phi s_2^*)(z, t, a) = 1_{2 Z_2}(z) phi(z / 2, t / 2, 2a).
inline X0Element act_s2_star(const X0Element& phi) {
    X0Element out;
    for (const auto& t : phi.tensors()) {
        GridFunction xi = reindex(t.xi, t.xi.spacing_exp() - 1, t.xi.start());
        out.add(ElementaryTensor::make(2 * t.l, PowerOfTwo(t.level() + 1), std::move(xi), t.m / PowerOfTwo(1)));
    }
    return out;
}

/// Right action of q, monomial by monomial along u^a s^i s^*j u^b.
template <class C>
X0Element act_q(const X0Element& phi, const QElement<C>& q) {
    X0Element out;
    for (const auto& [mono, c] : q.terms()) {
        Word w = mono.to_word();
        X0Element x = act_u_pow(phi, w.a);
        for (int k = 0; k < w.i; ++k) x = act_s2(x);
        for (int k = 0; k < w.j; ++k) x = act_s2_star(x);
        out += coeff_traits<C>::to_complex(c) * act_u_pow(x, w.b);
    }
    return out;
}

}  // namespace qadic
