#pragma once

#include <cmath>
#include <optional>

#include "qadic/l2grid/grid_function.hpp"

namespace qadic {

/// Output grid of a Fourier transform: spacing 2^-g and samples on [-half_width, half_width).
/// Unset fields default to the input spacing and the smallest power of two covering the
/// input support, capped at the Nyquist half-width 2^(g - 1).
struct FourierGrid {
    std::optional<int> g;
    std::optional<double> half_width;
};

namespace detail {

// h sum_n xi_n e(sign t_j n h), exact at every output grid point t_j: with
// M = 2^(g + g_t) the phase depends on n only mod M, so samples are folded first.
inline GridFunction fourier_sum(const GridFunction& xi, const FourierGrid& grid, int sign) {
    const int g = xi.spacing_exp();
    const int gt = grid.g.value_or(g);
    double W = 0.0;
    if (grid.half_width) {
        W = *grid.half_width;
    } else {
        double extent = std::max({std::abs(xi.support_lo()), std::abs(xi.support_hi()), 1.0});
        W = std::min(std::ldexp(1.0, static_cast<int>(std::ceil(std::log2(extent)))), std::ldexp(1.0, g - 1));
    }
    const int logM = g + gt;
    if (logM < 1 || logM > 26) throw Error("fourier: unsupported grid combination");
    const std::int64_t M = std::int64_t{1} << logM;
    const auto J = static_cast<std::int64_t>(std::ceil(std::ldexp(W, gt)));
    if (xi.is_zero() || J <= 0) return {};
    std::vector<cplx> folded(static_cast<std::size_t>(M));
    for (std::int64_t n = xi.start(); n < xi.end(); ++n) folded[static_cast<std::size_t>(mod_pow2(n, logM))] += xi.at(n);
    std::vector<cplx> spec = dft(folded, sign);
    std::vector<cplx> out(static_cast<std::size_t>(2 * J));
    const double h = xi.spacing();
    for (std::int64_t j = -J; j < J; ++j) out[static_cast<std::size_t>(j + J)] = h * spec[static_cast<std::size_t>(mod_pow2(j, logM))];
    return GridFunction(gt, -J, std::move(out), GridStyle::Smooth);
}

}  // namespace detail

/// (F xi)(t) = integral e(t x) xi(x) dx by the sampled sum.
inline GridFunction fourier(const GridFunction& xi, const FourierGrid& grid = {}) {
    return detail::fourier_sum(xi, grid, +1);
}

/// (F^-1 xi)(x) = integral e(-x t) xi(t) dt by the sampled sum.
inline GridFunction fourier_inv(const GridFunction& xi, const FourierGrid& grid = {}) {
    return detail::fourier_sum(xi, grid, -1);
}

}  // namespace qadic
