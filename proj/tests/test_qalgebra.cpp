#include <gtest/gtest.h>

#include <random>

#include "qadic/qalgebra.hpp"
#include "support/random_elements.hpp"

using namespace qadic;
using E = ExactElement;
using qadic::testing::random_element;
using qadic::testing::lambda2_agree;

namespace {

// Independent canonicalizer: expand every term to the finest level present and
// collect coefficients per (monomial at that level).
std::map<QMonomial, GaussianRational> expand_to_level(const std::vector<E::Term>& raw, int level) {
    std::map<QMonomial, GaussianRational> out;
    for (const auto& [m, c] : raw) {
        std::int64_t count = std::int64_t{1} << (level - m.j);
        for (std::int64_t t = 0; t < count; ++t) {
            std::int64_t n = m.r + (t << m.j);
            QMonomial child{level, n, m.i + level - m.j, m.apply(n)};
            out[child] += c;
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

std::vector<E::Term> terms_of(const E& e) { return {e.terms().begin(), e.terms().end()}; }

}  // namespace

TEST(QMonomial, WordExamples) {
    EXPECT_EQ(QMonomial::from_word(1, 0, 0, 0), (QMonomial{0, 0, 0, 1}));
    EXPECT_EQ(QMonomial::from_word(0, 1, 0, 0), (QMonomial{0, 0, 1, 0}));
    EXPECT_EQ(QMonomial::from_word(0, 0, 1, 0), (QMonomial{1, 0, 0, 0}));
}

TEST(QMonomial, WordRoundTrip) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 2000; ++t) {
        int i = static_cast<int>(rng() % 7), j = static_cast<int>(rng() % 7);
        std::int64_t a = static_cast<std::int64_t>(rng() % 41) - 20;
        std::int64_t b = static_cast<std::int64_t>(rng() % 41) - 20;
        QMonomial m = QMonomial::from_word(a, i, j, b);
        EXPECT_GE(m.r, 0);
        EXPECT_LT(m.r, std::int64_t{1} << j);
        EXPECT_EQ(QMonomial::from_word(m.to_word().a, m.to_word().i, m.to_word().j, m.to_word().b), m);
        Word w = m.to_word();
        EXPECT_GE(w.a, 0);
        EXPECT_LT(w.a, std::int64_t{1} << w.i);
        // Semantics: u^a s^i s*^j u^b on basis vectors.
        for (std::int64_t n = -40; n <= 40; ++n) {
            std::int64_t x = n + b;
            bool defined = detail::mod_pow2(x, j) == 0;
            EXPECT_EQ(m.in_domain(n), defined);
            if (defined) {
                EXPECT_EQ(m.apply(n), (detail::floor_shr(x, j) << i) + a);
            }
        }
    }
}

TEST(QMonomial, ComposeExamples) {
    QMonomial e2 = QMonomial::from_word(0, 1, 1, 0);
    QMonomial ue2u = QMonomial::from_word(1, 1, 1, -1);
    EXPECT_FALSE(compose(e2, ue2u).has_value());
    QMonomial s = QMonomial::from_word(0, 1, 0, 0), u = QMonomial::from_word(1, 0, 0, 0);
    QMonomial u2 = QMonomial::from_word(2, 0, 0, 0), ss = QMonomial::from_word(0, 0, 1, 0);
    EXPECT_EQ(*compose(s, u), (QMonomial{0, 0, 1, 2}));
    EXPECT_EQ(*compose(u2, s), (QMonomial{0, 0, 1, 2}));
    auto us = compose(u, s);
    ASSERT_TRUE(us.has_value());
    EXPECT_FALSE(compose(ss, *us).has_value());
}

TEST(QMonomial, ComposeMatchesPointwiseOracle) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 2000; ++t) {
        auto rand_m = [&] {
            return QMonomial::from_word(static_cast<std::int64_t>(rng() % 21) - 10, static_cast<int>(rng() % 5),
                                        static_cast<int>(rng() % 5), static_cast<std::int64_t>(rng() % 21) - 10);
        };
        QMonomial a = rand_m(), b = rand_m();
        auto ab = compose(a, b);
        for (std::int64_t n = -64; n <= 64; ++n) {
            std::optional<std::int64_t> expect;
            if (auto y = b.act(n)) expect = a.act(*y);
            std::optional<std::int64_t> got = ab ? ab->act(n) : std::nullopt;
            EXPECT_EQ(got, expect);
        }
        QMonomial aa = adjoint(a);
        EXPECT_EQ(adjoint(aa), a);
        for (std::int64_t n = -64; n <= 64; ++n)
            if (auto y = a.act(n)) {
                EXPECT_EQ(aa.act(*y), n);
            }
    }
}

TEST(QElement, NormalizeExamples) {
    E s = E::s(), u = E::u(), ui = E::u(-1), ss = E::s_star();
    EXPECT_EQ(s * ss + u * s * ss * ui, E::identity());
    E sum8;
    for (int l = 0; l < 8; ++l) sum8 += E::projection(l, 3);
    EXPECT_EQ(sum8, E::identity());
    EXPECT_EQ(E::projection(0, 2) + E::projection(2, 2), E::e(1));
}

TEST(QElement, CanonicalFormMatchesExpansionOracle) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 500; ++t) {
        std::vector<E::Term> raw;
        int count = 1 + static_cast<int>(rng() % 6);
        int level = 0;
        for (int k = 0; k < count; ++k) {
            E w = random_element(rng, 1, 6);
            for (const auto& term : w.terms()) {
                GaussianRational c(static_cast<long long>(rng() % 5) - 2);
                raw.emplace_back(term.first, c);
                level = std::max(level, term.first.j);
            }
        }
        // Add siblings of a random term to provoke merges.
        if (!raw.empty() && rng() % 2) {
            const auto [m, c] = raw.front();
            for (std::int64_t tt = 0; tt < 2; ++tt) {
                std::int64_t n = m.r + (tt << m.j);
                raw.emplace_back(QMonomial{m.j + 1, n, m.i + 1, m.apply(n)}, c);
            }
            level = std::max(level, m.j + 1);
        }
        E e = E::from_terms(raw);
        for (const auto& [m, c] : e.terms()) EXPECT_LE(m.j, level);
        EXPECT_EQ(expand_to_level(terms_of(e), level), expand_to_level(raw, level));
        // No sibling pair with equal affine map and equal coefficient survives.
        for (const auto& [m, c] : e.terms()) {
            if (m.j == 0 || m.i == 0) continue;
            std::int64_t sib = m.r ^ (std::int64_t{1} << (m.j - 1));
            DyadicRational img = DyadicRational(m.m0) + DyadicRational::make(sib - m.r, m.j - m.i);
            auto it = e.terms().find(QMonomial{m.j, sib, m.i, img.numerator()});
            if (it != e.terms().end()) {
                EXPECT_FALSE(it->second == c);
            }
        }
        // Idempotent.
        EXPECT_EQ(E::from_terms(terms_of(e)), e);
    }
}

TEST(QElement, AdjointAndProductExamples) {
    EXPECT_EQ(E::u().adjoint() * E::u(), E::identity());
    EXPECT_EQ(E::s().adjoint() * E::s(), E::identity());
    E w = E::u(3) * E::s().pow(2) * E::s_star() * E::u(5);
    E expect = E::u(-5) * E::s() * E::s_star().pow(2) * E::u(-3);
    EXPECT_EQ(w.adjoint(), expect);
}

TEST(QElement, EqualsExamples) {
    EXPECT_TRUE(equals(E::s() * E::u(), E::u(2) * E::s()));
    EXPECT_TRUE(equals(E::s_star() * E::u() * E::s(), E()));
    EXPECT_FALSE(equals(E::u(), E::u(-1)));
}

TEST(QElement, Lambda2Examples) {
    auto v = lambda2_apply(E::u(), basis_vector<GaussianRational>(5));
    EXPECT_EQ(v, basis_vector<GaussianRational>(6));
    EXPECT_TRUE(lambda2_apply(E::s_star(), basis_vector<GaussianRational>(3)).empty());
    EXPECT_EQ(lambda2_apply(E::e(2), basis_vector<GaussianRational>(8)), basis_vector<GaussianRational>(8));
    EXPECT_TRUE(lambda2_apply(E::e(2), basis_vector<GaussianRational>(6)).empty());
}

TEST(QElement, ConditionalExpectationExamples) {
    EXPECT_EQ(cond_expectation(E::e(1)), E::e(1));
    EXPECT_TRUE(cond_expectation(E::u()).is_zero());
    EXPECT_EQ(cond_expectation(E::e(1) + GaussianRational(3) * (E::u() * E::e(1))), E::e(1));
}

TEST(QElement, AdjointInvolutiveAndAntiMultiplicative) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        E a = random_element(rng, 3, 4), b = random_element(rng, 3, 4);
        EXPECT_EQ(a.adjoint().adjoint(), a);
        EXPECT_EQ((a * b).adjoint(), b.adjoint() * a.adjoint());
    }
}

TEST(QElement, OracleEquivalenceSample) {
    std::mt19937_64 rng(21);
    int equal_pairs = 0;
    for (int t = 0; t < 300; ++t) {
        auto [a, b] = qadic::testing::random_pair(rng);
        bool sym = equals(a, b);
        equal_pairs += sym;
        EXPECT_EQ(sym, lambda2_agree(a, b, 64));
    }
    EXPECT_GT(equal_pairs, 50);
}

TEST(QElement, NumericModeAndPromotion) {
    NumericElement x = to_numeric(E::s() * E::s_star());
    NumericElement y = NumericElement::scalar({1e-13, 0}) + to_numeric(E::u());
    EXPECT_EQ(y, to_numeric(E::u()));
    NumericElement z = E::u() * x;
    EXPECT_TRUE(approx_equals(z, E::u() * E::e(1), 1e-12));
    NumericElement almost = NumericElement::scalar({1.0 + 1e-10, 0}) - E::identity();
    EXPECT_TRUE(almost.is_zero());
}

TEST(Theta12, GeneratorsAndMatrixUnits) {
    using M = Matrix2<GaussianRational>;
    M tu = matrix_embed_theta12(E::u());
    EXPECT_EQ(tu.a[0][1], E::u());
    EXPECT_EQ(tu.a[1][0], E::identity());
    EXPECT_TRUE(tu.a[0][0].is_zero() && tu.a[1][1].is_zero());
    M ts = matrix_embed_theta12(E::s());
    EXPECT_EQ(ts.a[0][0], E::s());
    EXPECT_EQ(ts.a[0][1], E::u() * E::s());
    EXPECT_EQ(matrix_embed_theta12(E::e(1) * E::u(-1)), M::unit(0, 1));
    EXPECT_EQ(matrix_embed_theta12(E::e(1)), M::unit(0, 0));
    EXPECT_EQ(matrix_embed_theta12(E::u() * E::e(1) * E::u(-1)), M::unit(1, 1));
    EXPECT_EQ(matrix_embed_theta12(E::u() * E::e(1)), M::unit(1, 0));
}

TEST(Theta12, HomomorphismOnSamples) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        E a = random_element(rng, 2, 4), b = random_element(rng, 2, 4);
        EXPECT_EQ(matrix_embed_theta12(a * b), matrix_embed_theta12(a) * matrix_embed_theta12(b));
        EXPECT_EQ(matrix_embed_theta12(a.adjoint()), matrix_embed_theta12(a).adjoint());
    }
}

TEST(TruncateMatrix, Examples) {
    auto id = truncate_matrix(E::identity(), 2);
    EXPECT_EQ(id.entries.size(), 5u);
    EXPECT_FALSE(id.boundary_loss);
    for (const auto& en : id.entries) EXPECT_EQ(en.row, en.col);
    auto sh = truncate_matrix(E::u(), 2);
    EXPECT_TRUE(sh.boundary_loss);
    EXPECT_EQ(sh.entries.size(), 4u);
    for (const auto& en : sh.entries) EXPECT_EQ(en.row, en.col + 1);
    auto p = truncate_matrix(E::e(1), 2);
    ASSERT_EQ(p.entries.size(), 3u);
    EXPECT_EQ(p.entries[0].row, -2);
    EXPECT_EQ(p.entries[1].row, 0);
    EXPECT_EQ(p.entries[2].row, 2);
}

TEST(Serialize, TextAndJson) {
    EXPECT_EQ(to_text(E()), "0");
    EXPECT_EQ(to_text(E::identity()), "1");
    EXPECT_EQ(to_text(E::s_star()), "s^*");
    EXPECT_EQ(to_text(GaussianRational(Rational(1, 2), Rational(-3)) * E::u(-2)), "(1/2 + -3 i) * u^-2");
    auto j = to_json(E::s());
    ASSERT_EQ(j["terms"].size(), 1u);
    EXPECT_EQ(j["terms"][0]["i"], 1);
    EXPECT_EQ(j["terms"][0]["re"], "1");
}
