// spectral.hpp
//
// Uniform-grid periodic Fourier toolbox on [0,2pi): forward/inverse
// transforms, spectral derivative and antiderivative, band-limited
// resampling, and the three filters used by the solver (Krasny cutoff,
// Hilbert multiplier, Gaussian heat-kernel smoothing).
//
// Conventions, fixed once and used everywhere:
//   chat(k) = (1/N) sum_j f_j exp(-i k a_j),   a_j = 2*pi*j/N
//   f_j     =       sum_k chat(k) exp(+i k a_j),  k = -N/2 .. N/2-1
// Grid sizes are powers of two, N >= 8. The Nyquist mode k = -N/2 is
// zeroed by operators for which it carries no usable sign information
// (derivative, Hilbert).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace axisheet {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Thrown when a field stops being finite (the integrator catches this
/// and aborts with the last good state).
struct NonFiniteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void check_grid_size(std::size_t n) {
    if (n < 8 || !is_pow2(n))
        throw std::invalid_argument("grid size must be a power of two >= 8, got " +
                                    std::to_string(n));
}

// Twiddle factors exp(-2*pi*i*j/n), j < n/2, cached per size. Entries are
// immutable once built, so handing out references is safe across threads.
inline const std::vector<std::complex<double>>& twiddles(std::size_t n) {
    static std::mutex mtx;
    static std::map<std::size_t, std::unique_ptr<std::vector<std::complex<double>>>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[n];
    if (!slot) {
        auto tw = std::make_unique<std::vector<std::complex<double>>>(n / 2);
        for (std::size_t j = 0; j < n / 2; ++j) {
            double ph = -kTwoPi * static_cast<double>(j) / static_cast<double>(n);
            (*tw)[j] = {std::cos(ph), std::sin(ph)};
        }
        slot = std::move(tw);
    }
    return *slot;
}

// In-place radix-2 DIT transform, unscaled. sign=-1 computes
// sum f_j exp(-i k a_j); sign=+1 the conjugate-exponent sum.
inline void fft_unscaled(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    if (!is_pow2(n)) throw std::invalid_argument("fft size must be a power of two");

    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const auto& tw = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> w = tw[k * stride];
                if (sign > 0) w = std::conj(w);
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

}  // namespace detail

/// Real periodic samples f(a_j) on the uniform grid a_j = 2*pi*j/N.
struct Samples {
    std::vector<double> v;

    Samples() = default;
    explicit Samples(std::size_t n, double fill = 0.0) : v(n, fill) {
        detail::check_grid_size(n);
    }
    explicit Samples(std::vector<double> vals) : v(std::move(vals)) {
        detail::check_grid_size(v.size());
        for (double x : v)
            if (!std::isfinite(x)) throw NonFiniteError("non-finite sample value");
    }

    std::size_t size() const { return v.size(); }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
};

/// Fourier coefficients chat(k), k = -N/2 .. N/2-1, stored in FFT order
/// (index j holds k = j for j < N/2, else k = j - N).
struct Spectrum {
    std::vector<std::complex<double>> c;

    Spectrum() = default;
    explicit Spectrum(std::size_t n) : c(n) { detail::check_grid_size(n); }

    std::size_t size() const { return c.size(); }

    int wavenumber(std::size_t idx) const {
        const auto n = static_cast<long>(c.size());
        auto j = static_cast<long>(idx);
        return static_cast<int>(j < n / 2 ? j : j - n);
    }
    std::complex<double>& at_mode(int k) { return c[index_of(k)]; }
    const std::complex<double>& at_mode(int k) const { return c[index_of(k)]; }

  private:
    std::size_t index_of(int k) const {
        const auto n = static_cast<long>(c.size());
        if (k < -n / 2 || k > n / 2 - 1) throw std::out_of_range("wavenumber out of range");
        return static_cast<std::size_t>(k >= 0 ? k : k + n);
    }
};

inline double mean(const Samples& f) {
    return std::accumulate(f.v.begin(), f.v.end(), 0.0) / static_cast<double>(f.size());
}

/// chat(k) = (1/N) sum_j f_j exp(-i k a_j).
inline Spectrum forward(const Samples& f) {
    const std::size_t n = f.size();
    Spectrum s(n);
    for (std::size_t j = 0; j < n; ++j) s.c[j] = f.v[j];
    detail::fft_unscaled(s.c, -1);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& z : s.c) z *= scale;
    return s;
}

/// f_j = sum_k chat(k) exp(+i k a_j); the imaginary residual of a
/// conjugate-symmetric spectrum is discarded.
inline Samples inverse(const Spectrum& s) {
    std::vector<std::complex<double>> work = s.c;
    detail::fft_unscaled(work, +1);
    Samples f(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) f.v[j] = work[j].real();
    return f;
}

/// Spectral d/da. The Nyquist mode is zeroed.
inline Samples derivative(const Samples& f) {
    Spectrum s = forward(f);
    const auto n = static_cast<long>(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        const int k = s.wavenumber(j);
        s.c[j] *= std::complex<double>(0.0, static_cast<double>(k));
    }
    s.c[static_cast<std::size_t>(n / 2)] = 0.0;  // k = -N/2
    return inverse(s);
}

/// F(a_j) with F' = f and F(0) = 0: mean(f)*a plus the periodic
/// antiderivative of the zero-mean part. The Nyquist mode integrates to
/// samples that vanish on the grid and is dropped.
inline Samples antiderivative_from_zero(const Samples& f) {
    Spectrum s = forward(f);
    const auto n = static_cast<long>(s.size());
    const double mu = s.c[0].real();
    s.c[0] = 0.0;
    for (std::size_t j = 1; j < s.size(); ++j) {
        const int k = s.wavenumber(j);
        if (k == -n / 2) {
            s.c[j] = 0.0;
        } else {
            s.c[j] /= std::complex<double>(0.0, static_cast<double>(k));
        }
    }
    Samples g = inverse(s);
    const double g0 = g.v[0];
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double a = kTwoPi * static_cast<double>(j) / static_cast<double>(g.size());
        g.v[j] += mu * a - g0;
    }
    return g;
}

/// Definite integral over the full period, by the (spectrally accurate)
/// trapezoidal rule.
inline double integrate_period(const Samples& f) { return mean(f) * kTwoPi; }

/// Band-limited interpolation onto an N_target grid (zero-pad or truncate
/// the spectrum; the Nyquist mode is split or folded to keep real data real).
inline Samples resample(const Samples& f, std::size_t n_target) {
    detail::check_grid_size(n_target);
    const std::size_t n = f.size();
    if (n_target == n) return f;
    Spectrum src = forward(f);
    Spectrum dst(n_target);
    const long half = std::min<long>(static_cast<long>(n) / 2, static_cast<long>(n_target) / 2);
    for (long k = -half; k < half; ++k) dst.at_mode(static_cast<int>(k)) = src.at_mode(static_cast<int>(k));
    if (n_target > n) {
        // split the old Nyquist coefficient between +/- N/2
        const std::complex<double> ny = src.at_mode(static_cast<int>(-static_cast<long>(n) / 2));
        dst.at_mode(static_cast<int>(-static_cast<long>(n) / 2)) = 0.5 * ny;
        dst.at_mode(static_cast<int>(n / 2)) = 0.5 * std::conj(ny);
    } else {
        // fold +/- N_t/2 into the new Nyquist slot
        const auto kn = static_cast<int>(n_target / 2);
        dst.at_mode(-kn) = src.at_mode(-kn) + src.at_mode(kn);
    }
    return inverse(dst);
}

/// Zero every mode with |chat(k)| < eps_k (absolute threshold, matching the
/// original usage of the filter). Reports the number of modes zeroed if
/// `zeroed` is given.
inline Samples krasny_filter(const Samples& f, double eps_k, int* zeroed = nullptr) {
    if (eps_k < 0.0) throw std::invalid_argument("krasny threshold must be >= 0");
    if (zeroed) *zeroed = 0;
    if (eps_k == 0.0) return f;
    Spectrum s = forward(f);
    for (auto& z : s.c) {
        if (std::abs(z) < eps_k) {
            if (zeroed && z != std::complex<double>(0.0, 0.0)) ++*zeroed;
            z = 0.0;
        }
    }
    return inverse(s);
}

/// Hilbert transform: multiplier -i*sgn(k), with sgn(0) = 0 and the
/// Nyquist mode zeroed.
inline Samples hilbert(const Samples& f) {
    Spectrum s = forward(f);
    const auto n = static_cast<long>(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        const int k = s.wavenumber(j);
        if (k == 0 || k == -n / 2) {
            s.c[j] = 0.0;
        } else {
            s.c[j] *= std::complex<double>(0.0, k > 0 ? -1.0 : 1.0);
        }
    }
    return inverse(s);
}

/// Convolution with the line heat kernel H_a(s) = sqrt(a^2/pi) exp(-a^2 s^2)
/// for samples living on a uniform grid in s over [0, L_p): exact Fourier
/// multiplier exp(-(2*pi*k/L_p)^2 / (4 a^2)).
inline Samples gaussian_filter(const Samples& f, double a, double l_p) {
    if (!(a > 0.0)) throw std::invalid_argument("heat-kernel sharpness a must be > 0");
    if (!(l_p > 0.0)) throw std::invalid_argument("period L_p must be > 0");
    Spectrum s = forward(f);
    for (std::size_t j = 0; j < s.size(); ++j) {
        const double xi = kTwoPi * s.wavenumber(j) / l_p;
        s.c[j] *= std::exp(-xi * xi / (4.0 * a * a));
    }
    return inverse(s);
}

}  // namespace axisheet
