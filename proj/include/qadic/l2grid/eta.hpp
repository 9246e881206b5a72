#pragma once

#include <cmath>

#include "qadic/l2grid/symbol.hpp"

namespace qadic {

/// eta(t) = e(t d / c) integral e(s d) fcheck(s) xi(t + s c) ds.
/// Quadrature nodes s_j = j h / c put t + s_j c on xi's grid; weight h / c.
inline GridFunction eta(const SymbolFunction& f, const DyadicRational& d, PowerOfTwo c, const GridFunction& xi) {
    if (xi.is_zero()) return {};
    const double h = xi.spacing(), cv = c.value(), dv = d.to_double();
    const double step = h / cv;
    auto [slo, shi] = f.check_support();
    const auto jlo = static_cast<std::int64_t>(std::ceil(slo / step));
    const auto jhi = static_cast<std::int64_t>(std::floor(shi / step));
    std::vector<cplx> w;
    for (std::int64_t j = jlo; j <= jhi; ++j) {
        double s = static_cast<double>(j) * step;
        w.push_back(step * e_of(s * dv) * f.f_check(s));
    }
    const std::int64_t nlo = xi.start() - jhi, nhi = xi.end() - 1 - jlo;
    std::vector<cplx> out(static_cast<std::size_t>(std::max<std::int64_t>(0, nhi - nlo + 1)));
    for (std::int64_t n = nlo; n <= nhi; ++n) {
        cplx acc = 0;
        std::int64_t j0 = std::max(jlo, xi.start() - n), j1 = std::min(jhi, xi.end() - 1 - n);
        for (std::int64_t j = j0; j <= j1; ++j) acc += w[static_cast<std::size_t>(j - jlo)] * xi.at(n + j);
        out[static_cast<std::size_t>(n - nlo)] = e_of(xi.x_of(n) * dv / cv) * acc;
    }
    return GridFunction(xi.spacing_exp(), nlo, std::move(out), xi.style());
}

/// || D_c^* eta - F pi(f (x) 1_(d,c)) F^-1 xi || / || xi ||, both sides on the grid of D_c^* eta.
inline double verify_intertwining(const SymbolFunction& f, const DyadicRational& d, PowerOfTwo c,
                                  const GridFunction& xi) {
    const double nx = norm(xi);
    if (nx == 0.0) return 0.0;
    GridFunction lhs = dilate(eta(f, d, c, xi), c.inverse());
    GridFunction mid = pi_apply(f, d, c, fourier_inv(xi));
    double W = std::max({std::abs(lhs.support_lo()), std::abs(lhs.support_hi()), 1.0});
    W = std::min(W, std::ldexp(1.0, mid.spacing_exp() - 1));
    GridFunction rhs = fourier(mid, FourierGrid{lhs.spacing_exp(), W});
    return norm(lhs - rhs) / nx;
}

}  // namespace qadic
