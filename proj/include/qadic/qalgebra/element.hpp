#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "qadic/qalgebra/coefficient.hpp"
#include "qadic/qalgebra/monomial.hpp"

namespace qadic {

/// Finitely supported vector in l^2(Z).
template <class C>
using SparseVector = std::map<std::int64_t, C>;

namespace detail {

struct AffineKey {
    int e;
    DyadicRational c;
    friend auto operator<=>(const AffineKey&, const AffineKey&) = default;
};

// Binary trie over residue digits, least significant first. A node at depth L
// stands for one class mod 2^L; its coefficient applies to the whole class.
template <class C>
class ClassTrie {
public:
    using traits = coeff_traits<C>;

    void insert(int level, std::int64_t residue, const C& c) {
        int n = 0;
        for (int t = 0; t < level; ++t) {
            int bit = static_cast<int>((residue >> t) & 1);
            if (nodes_[n].child[bit] < 0) {
                nodes_[n].child[bit] = static_cast<int>(nodes_.size());
                nodes_.push_back(Node{});
            }
            n = nodes_[n].child[bit];
        }
        nodes_[n].coeff += c;
    }

    /// Disjoint, maximally merged classes carrying non-zero values.
    std::vector<std::tuple<int, std::int64_t, C>> classes() const {
        std::vector<std::tuple<int, std::int64_t, C>> out;
        Collected root = collect(0, 0, 0, traits::zero(), out);
        if (root.uniform && !traits::is_zero(root.value)) out.emplace_back(0, 0, root.value);
        return out;
    }

private:
    struct Node {
        C coeff = coeff_traits<C>::zero();
        int child[2] = {-1, -1};
    };

    struct Collected {
        bool uniform;
        C value;
    };

    // Returns whether the subtree is constant; non-constant subtrees have already
    // emitted their classes into out.
    Collected collect(int node, int level, std::int64_t residue, const C& acc,
                      std::vector<std::tuple<int, std::int64_t, C>>& out) const {
        const Node& nd = nodes_[node];
        C total = acc + nd.coeff;
        if (nd.child[0] < 0 && nd.child[1] < 0) return {true, total};
        std::vector<std::tuple<int, std::int64_t, C>> parts[2];
        Collected side[2];
        for (int bit = 0; bit < 2; ++bit) {
            std::int64_t res = residue + (bit ? (std::int64_t{1} << level) : 0);
            side[bit] = nd.child[bit] < 0 ? Collected{true, total}
                                          : collect(nd.child[bit], level + 1, res, total, parts[bit]);
        }
        if (side[0].uniform && side[1].uniform && traits::equal(side[0].value, side[1].value))
            return {true, side[0].value};
        for (int bit = 0; bit < 2; ++bit) {
            std::int64_t res = residue + (bit ? (std::int64_t{1} << level) : 0);
            if (side[bit].uniform) {
                if (!traits::is_zero(side[bit].value)) out.emplace_back(level + 1, res, side[bit].value);
            } else {
                out.insert(out.end(), parts[bit].begin(), parts[bit].end());
            }
        }
        return {false, traits::zero()};
    }

    std::vector<Node> nodes_{1};
};

}  // namespace detail

/// Finite linear combination of monomials, always in canonical form:
/// per affine map the classes are disjoint and no two siblings carry equal coefficients.
template <class C>
class QElement {
public:
    using coeff_type = C;
    using traits = coeff_traits<C>;
    using Term = std::pair<QMonomial, C>;

    QElement() = default;

    static QElement from_terms(const std::vector<Term>& raw) {
        QElement e;
        e.terms_ = canonicalize(raw);
        return e;
    }

    static QElement monomial(const QMonomial& m, const C& c = traits::one()) { return from_terms({{m, c}}); }
    static QElement scalar(const C& c) { return monomial(QMonomial::identity(), c); }
    static QElement identity() { return scalar(traits::one()); }
    static QElement word(std::int64_t a, int i, int j, std::int64_t b) {
        return monomial(QMonomial::from_word(a, i, j, b));
    }
    static QElement u(std::int64_t k = 1) { return word(k, 0, 0, 0); }
    static QElement s() { return word(0, 1, 0, 0); }
    static QElement s_star() { return word(0, 0, 1, 0); }
    /// e_{2^k} = s_2^k s_2^*k.
    static QElement e(int k) { return word(0, k, k, 0); }
    /// u^l e_{2^k} u^-l, the projection onto l + 2^k Z.
    static QElement projection(std::int64_t l, int k) { return word(l, k, k, -l); }

    const std::map<QMonomial, C>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    QElement adjoint() const {
        std::vector<Term> raw;
        raw.reserve(terms_.size());
        for (const auto& [m, c] : terms_) raw.emplace_back(qadic::adjoint(m), traits::conj(c));
        return from_terms(raw);
    }

    QElement operator-() const {
        QElement out = *this;
        for (auto& [m, c] : out.terms_) c = traits::zero() - c;
        return out;
    }

    friend QElement operator+(const QElement& a, const QElement& b) {
        std::vector<Term> raw(a.terms_.begin(), a.terms_.end());
        raw.insert(raw.end(), b.terms_.begin(), b.terms_.end());
        return from_terms(raw);
    }
    friend QElement operator-(const QElement& a, const QElement& b) { return a + (-b); }

    friend QElement operator*(const QElement& a, const QElement& b) {
        std::vector<Term> raw;
        for (const auto& [m1, c1] : a.terms_)
            for (const auto& [m2, c2] : b.terms_)
                if (auto m = compose(m1, m2)) raw.emplace_back(*m, c1 * c2);
        return from_terms(raw);
    }

    friend QElement operator*(const C& s, const QElement& a) {
        std::vector<Term> raw;
        raw.reserve(a.terms_.size());
        for (const auto& [m, c] : a.terms_) raw.emplace_back(m, s * c);
        return from_terms(raw);
    }

    QElement& operator+=(const QElement& o) { return *this = *this + o; }
    QElement& operator*=(const QElement& o) { return *this = *this * o; }

    QElement pow(int n) const {
        if (n < 0) throw Error("negative power of a QElement");
        QElement out = identity();
        for (int k = 0; k < n; ++k) out = out * *this;
        return out;
    }

    /// Structural equality of canonical forms (operator equality in exact mode).
    friend bool operator==(const QElement& a, const QElement& b) { return a.terms_ == b.terms_; }

    /// Drops coefficients of modulus <= tol.
    QElement pruned(double tol) const {
        QElement out;
        for (const auto& [m, c] : terms_)
            if (std::abs(traits::to_complex(c)) > tol) out.terms_.emplace(m, c);
        return out;
    }

    double max_abs_coeff() const {
        double r = 0.0;
        for (const auto& [m, c] : terms_) r = std::max(r, std::abs(traits::to_complex(c)));
        return r;
    }

private:
    static std::map<QMonomial, C> canonicalize(const std::vector<Term>& raw) {
        std::map<detail::AffineKey, detail::ClassTrie<C>> groups;
        for (const auto& [m, c] : raw) {
            if (traits::is_zero(c)) continue;
            groups[detail::AffineKey{m.slope_exponent(), m.intercept()}].insert(m.j, m.r, c);
        }
        std::map<QMonomial, C> out;
        for (const auto& [key, trie] : groups) {
            for (auto& [level, res, c] : trie.classes()) {
                QMonomial m;
                m.j = level;
                m.r = res;
                m.i = level + key.e;
                DyadicRational image = DyadicRational::make(res, -key.e) + key.c;
                if (m.i < 0 || !image.is_integer()) throw Error("canonicalize produced an invalid class");
                m.m0 = image.numerator();
                out.emplace(m, c);
            }
        }
        return out;
    }

    std::map<QMonomial, C> terms_;
};

using ExactElement = QElement<GaussianRational>;
using NumericElement = QElement<std::complex<double>>;

inline NumericElement to_numeric(const ExactElement& e) {
    std::vector<NumericElement::Term> raw;
    for (const auto& [m, c] : e.terms()) raw.emplace_back(m, c.to_complex());
    return NumericElement::from_terms(raw);
}

inline NumericElement to_numeric(const NumericElement& e) { return e; }

/// Zero threshold applied after mixed exact/numeric arithmetic.
inline constexpr double kMixedZeroTol = 1e-9;

inline NumericElement operator*(const ExactElement& a, const NumericElement& b) {
    return (to_numeric(a) * b).pruned(kMixedZeroTol);
}
inline NumericElement operator*(const NumericElement& a, const ExactElement& b) {
    return (a * to_numeric(b)).pruned(kMixedZeroTol);
}
inline NumericElement operator+(const ExactElement& a, const NumericElement& b) {
    return (to_numeric(a) + b).pruned(kMixedZeroTol);
}
inline NumericElement operator+(const NumericElement& a, const ExactElement& b) {
    return (a + to_numeric(b)).pruned(kMixedZeroTol);
}
inline NumericElement operator-(const ExactElement& a, const NumericElement& b) {
    return (to_numeric(a) - b).pruned(kMixedZeroTol);
}
inline NumericElement operator-(const NumericElement& a, const ExactElement& b) {
    return (a - to_numeric(b)).pruned(kMixedZeroTol);
}

template <class C>
bool equals(const QElement<C>& a, const QElement<C>& b) {
    return (a - b).is_zero();
}

/// Coefficient-wise comparison of the canonical difference.
template <class C1, class C2>
bool approx_equals(const QElement<C1>& a, const QElement<C2>& b, double tol) {
    return (to_numeric(a) - to_numeric(b)).max_abs_coeff() <= tol;
}

template <class C>
SparseVector<C> lambda2_apply(const QElement<C>& e, const SparseVector<C>& v) {
    SparseVector<C> out;
    for (const auto& [n, x] : v)
        for (const auto& [m, c] : e.terms())
            if (m.in_domain(n)) out[m.apply(n)] += c * x;
    for (auto it = out.begin(); it != out.end();)
        it = coeff_traits<C>::is_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
}

template <class C>
SparseVector<C> basis_vector(std::int64_t n) {
    return {{n, coeff_traits<C>::one()}};
}

/// Theta: keeps the terms acting as the identity on their class.
template <class C>
QElement<C> cond_expectation(const QElement<C>& e) {
    std::vector<typename QElement<C>::Term> raw;
    for (const auto& [m, c] : e.terms())
        if (m.is_identity_map()) raw.emplace_back(m, c);
    return QElement<C>::from_terms(raw);
}

}  // namespace qadic
