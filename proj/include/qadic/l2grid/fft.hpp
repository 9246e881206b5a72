#pragma once

#include <complex>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace qadic::detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

/// Unnormalised DFT: out[k] = sum_n in[n] exp(sign 2 pi i k n / size).
inline std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& in, int sign) {
    const int n = static_cast<int>(in.size());
    std::vector<std::complex<double>> out(in.size());
    if (n == 0) return out;
    std::vector<std::complex<double>> buf(in);
    auto* src = reinterpret_cast<fftw_complex*>(buf.data());
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(n, src, dst, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace qadic::detail
