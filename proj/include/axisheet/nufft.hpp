// nufft.hpp
//
// Type-1 and Type-2 nonuniform discrete Fourier transforms on [0,2pi) to a
// prescribed relative accuracy:
//
//   Type-1:  fhat_k = sum_{j<N} f_j exp(-i k x_j),   k = -M/2 .. M/2-1
//   Type-2:  f_j    = sum_{|k|<=M/2} fhat_k exp(+i k x_j)
//
// Gridding with a truncated Gaussian at oversampling factor 2: sources are
// spread onto a fine uniform grid, transformed with the uniform FFT, and
// deconvolved by the kernel's Fourier factor. The kernel half-width w and
// decay tau are chosen so both the aliasing and truncation errors fall
// below eps_rel (relative to sum |f_j|).

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "axisheet/spectral.hpp"

namespace axisheet {

/// Sample locations on the periodic interval, wrapped into [0,2pi).
struct NodeSet {
    std::vector<double> x;

    explicit NodeSet(std::vector<double> nodes) : x(std::move(nodes)) {
        for (auto& xi : x) {
            if (!std::isfinite(xi)) throw NonFiniteError("non-finite NUFFT node");
            xi = std::fmod(xi, kTwoPi);
            if (xi < 0.0) xi += kTwoPi;
        }
    }
    std::size_t size() const { return x.size(); }
};

/// Precomputed gridding parameters for a fixed mode count and accuracy.
/// Plans are immutable; execution is pure and thread-safe.
struct NufftPlan {
    std::size_t modes;      // M, even
    double eps_rel;         // requested relative accuracy
    std::size_t fine_n;     // oversampled grid size (power of two >= 2M)
    double tau;             // Gaussian decay: kernel exp(-d^2 / (4 tau))
    int half_width;         // spread half-width in fine-grid nodes

    NufftPlan(std::size_t m, double eps) : modes(m), eps_rel(eps) {
        if (m == 0 || m % 2 != 0) throw std::invalid_argument("NUFFT mode count must be even");
        if (!(eps >= 1e-15 && eps <= 1e-2))
            throw std::invalid_argument("NUFFT eps_rel must lie in [1e-15, 1e-2]");
        std::size_t fine = 16;
        while (fine < 2 * m) fine <<= 1;
        fine_n = fine;
        const double safety = std::log(1.0 / eps) + 2.0;
        tau = 2.0 * safety / (static_cast<double>(fine_n) * static_cast<double>(fine_n));
        half_width = static_cast<int>(std::ceil(std::sqrt(2.0) * safety / kPi)) + 1;
    }
};

namespace detail {

// Spread one source of strength c at location x onto the fine grid using
// the fast Gaussian recurrence (three multiplies per point).
inline void spread_source(std::vector<std::complex<double>>& grid, double x,
                          std::complex<double> c, const NufftPlan& plan,
                          const std::vector<double>& e3) {
    const double h = kTwoPi / static_cast<double>(plan.fine_n);
    const auto m0 = static_cast<long>(std::lround(x / h));
    const double xi = x - h * static_cast<double>(m0);  // in [-h/2, h/2]
    const double e1 = std::exp(-xi * xi / (4.0 * plan.tau));
    const double e2 = std::exp(xi * h / (2.0 * plan.tau));
    const auto n = static_cast<long>(plan.fine_n);

    // l = 0 term, then walk outwards in both directions
    double pp = e1, pm = e1;  // running e1 * e2^{+-l}
    {
        long idx = ((m0 % n) + n) % n;
        grid[static_cast<std::size_t>(idx)] += c * e1;
    }
    double acc_p = 1.0, acc_m = 1.0;
    for (int l = 1; l <= plan.half_width; ++l) {
        acc_p *= e2;
        acc_m /= e2;
        const double wp = pp * acc_p * e3[static_cast<std::size_t>(l)];
        const double wm = pm * acc_m * e3[static_cast<std::size_t>(l)];
        long ip = (((m0 + l) % n) + n) % n;
        long im = (((m0 - l) % n) + n) % n;
        grid[static_cast<std::size_t>(ip)] += c * wp;
        grid[static_cast<std::size_t>(im)] += c * wm;
    }
}

inline std::vector<double> kernel_table(const NufftPlan& plan) {
    const double h = kTwoPi / static_cast<double>(plan.fine_n);
    std::vector<double> e3(static_cast<std::size_t>(plan.half_width) + 1);
    for (int l = 0; l <= plan.half_width; ++l)
        e3[static_cast<std::size_t>(l)] = std::exp(-(l * h) * (l * h) / (4.0 * plan.tau));
    return e3;
}

inline double kernel_fourier(const NufftPlan& plan, int k) {
    // continuous transform of exp(-x^2/(4 tau)) at frequency k
    return std::sqrt(4.0 * kPi * plan.tau) * std::exp(-plan.tau * static_cast<double>(k) * k);
}

}  // namespace detail

/// Type-1: fhat_k = sum_j f_j exp(-i k x_j) for k = -M/2 .. M/2-1,
/// returned in that order.
inline std::vector<std::complex<double>> nufft_type1(std::span<const std::complex<double>> f,
                                                     const NodeSet& nodes,
                                                     const NufftPlan& plan) {
    if (f.size() != nodes.size())
        throw std::invalid_argument("nufft_type1: strengths and nodes differ in length");
    const auto m = static_cast<long>(plan.modes);

    std::vector<std::complex<double>> grid(plan.fine_n, {0.0, 0.0});
    const auto e3 = detail::kernel_table(plan);
    for (std::size_t j = 0; j < nodes.size(); ++j)
        detail::spread_source(grid, nodes.x[j], f[j], plan, e3);

    detail::fft_unscaled(grid, -1);  // sum_m grid_m exp(-i k xi_m)

    std::vector<std::complex<double>> out(plan.modes);
    const double front = kTwoPi / static_cast<double>(plan.fine_n);
    for (long k = -m / 2; k < m / 2; ++k) {
        const std::size_t src =
            static_cast<std::size_t>(k >= 0 ? k : k + static_cast<long>(plan.fine_n));
        out[static_cast<std::size_t>(k + m / 2)] =
            grid[src] * (front / detail::kernel_fourier(plan, static_cast<int>(k)));
    }
    return out;
}

/// Type-2: f_j = sum_k fhat_k exp(+i k x_j); `fhat` is ordered k = -M/2 .. M/2-1.
inline std::vector<std::complex<double>> nufft_type2(std::span<const std::complex<double>> fhat,
                                                     const NodeSet& nodes,
                                                     const NufftPlan& plan) {
    if (fhat.size() != plan.modes)
        throw std::invalid_argument("nufft_type2: coefficient count does not match plan");
    const auto m = static_cast<long>(plan.modes);
    const auto n = static_cast<long>(plan.fine_n);

    // deconvolve and zero-pad into fine FFT order
    std::vector<std::complex<double>> grid(plan.fine_n, {0.0, 0.0});
    const double front = kTwoPi / static_cast<double>(plan.fine_n);
    for (long k = -m / 2; k < m / 2; ++k) {
        const std::size_t dst = static_cast<std::size_t>(k >= 0 ? k : k + n);
        grid[dst] = fhat[static_cast<std::size_t>(k + m / 2)] *
                    (front / detail::kernel_fourier(plan, static_cast<int>(k)));
    }
    detail::fft_unscaled(grid, +1);  // g(xi_m) = sum_k c_k exp(+i k xi_m)

    const auto e3 = detail::kernel_table(plan);
    const double h = kTwoPi / static_cast<double>(plan.fine_n);
    std::vector<std::complex<double>> out(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double x = nodes.x[j];
        const auto m0 = static_cast<long>(std::lround(x / h));
        const double xi = x - h * static_cast<double>(m0);
        const double e1 = std::exp(-xi * xi / (4.0 * plan.tau));
        const double e2 = std::exp(xi * h / (2.0 * plan.tau));
        std::complex<double> acc =
            grid[static_cast<std::size_t>(((m0 % n) + n) % n)] * e1;
        double acc_p = 1.0, acc_m = 1.0;
        for (int l = 1; l <= plan.half_width; ++l) {
            acc_p *= e2;
            acc_m /= e2;
            const double wl = e3[static_cast<std::size_t>(l)];
            acc += grid[static_cast<std::size_t>((((m0 + l) % n) + n) % n)] * (e1 * acc_p * wl);
            acc += grid[static_cast<std::size_t>((((m0 - l) % n) + n) % n)] * (e1 * acc_m * wl);
        }
        out[j] = acc;
    }
    return out;
}

}  // namespace axisheet
