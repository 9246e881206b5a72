#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "qadic/qalgebra/element.hpp"

namespace qadic {

template <class C>
struct Matrix2 {
    std::array<std::array<QElement<C>, 2>, 2> a;

    static Matrix2 identity() {
        Matrix2 m;
        m.a[0][0] = m.a[1][1] = QElement<C>::identity();
        return m;
    }

    /// The matrix unit e_{row,col}.
    static Matrix2 unit(int row, int col) {
        Matrix2 m;
        m.a[row][col] = QElement<C>::identity();
        return m;
    }

    Matrix2 adjoint() const {
        Matrix2 m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) m.a[r][c] = a[c][r].adjoint();
        return m;
    }

    friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
        Matrix2 m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) m.a[r][c] = x.a[r][0] * y.a[0][c] + x.a[r][1] * y.a[1][c];
        return m;
    }
    friend Matrix2 operator+(const Matrix2& x, const Matrix2& y) {
        Matrix2 m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) m.a[r][c] = x.a[r][c] + y.a[r][c];
        return m;
    }
    friend Matrix2 operator-(const Matrix2& x, const Matrix2& y) {
        Matrix2 m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) m.a[r][c] = x.a[r][c] - y.a[r][c];
        return m;
    }
    friend Matrix2 operator*(const C& s, const Matrix2& x) {
        Matrix2 m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) m.a[r][c] = s * x.a[r][c];
        return m;
    }
    friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

namespace detail {

// theta(u)^(2q) = diag(u^q, u^q) and theta(u)^(2q+1) = [[0, u^(q+1)], [u^q, 0]].
template <class C>
Matrix2<C> theta12_u_power(std::int64_t k) {
    std::int64_t q = floor_shr(k, 1);
    Matrix2<C> m;
    if ((k & 1) == 0) {
        m.a[0][0] = m.a[1][1] = QElement<C>::u(q);
    } else {
        m.a[0][1] = QElement<C>::u(q + 1);
        m.a[1][0] = QElement<C>::u(q);
    }
    return m;
}

template <class C>
Matrix2<C> theta12_s() {
    Matrix2<C> m;
    m.a[0][0] = QElement<C>::s();
    m.a[0][1] = QElement<C>::u() * QElement<C>::s();
    return m;
}

}  // namespace detail

/// The unital *-homomorphism Q_2 -> M_2(Q_2) with u -> [[0,u],[1,0]], s -> [[s, u s],[0,0]].
template <class C>
Matrix2<C> matrix_embed_theta12(const QElement<C>& e) {
    Matrix2<C> out;
    const Matrix2<C> s = detail::theta12_s<C>();
    const Matrix2<C> s_star = s.adjoint();
    for (const auto& [m, c] : e.terms()) {
        Word w = m.to_word();
        Matrix2<C> t = detail::theta12_u_power<C>(w.a);
        for (int k = 0; k < w.i; ++k) t = t * s;
        for (int k = 0; k < w.j; ++k) t = t * s_star;
        t = t * detail::theta12_u_power<C>(w.b);
        out = out + c * t;
    }
    return out;
}

struct MatrixEntry {
    std::int64_t row;
    std::int64_t col;
    std::complex<double> value;
};

struct TruncatedMatrix {
    std::int64_t window = 0;
    std::vector<MatrixEntry> entries;  // column-major scan order
    bool boundary_loss = false;
};

/// Entries (m, n) of lambda_2(e) for |m|, |n| <= N.
template <class C>
TruncatedMatrix truncate_matrix(const QElement<C>& e, std::int64_t N) {
    TruncatedMatrix out;
    out.window = N;
    for (std::int64_t n = -N; n <= N; ++n) {
        SparseVector<C> col = lambda2_apply(e, basis_vector<C>(n));
        for (const auto& [m, c] : col) {
            if (m < -N || m > N) {
                out.boundary_loss = true;
                continue;
            }
            out.entries.push_back({m, n, coeff_traits<C>::to_complex(c)});
        }
    }
    return out;
}

}  // namespace qadic
