// meshref.hpp
//
// Signal-processing mesh refinement. The guideline function GL is built
// from the in-plane curvature as a function of arclength:
//
//   1. upsample kappa_z, s, s_alpha to N_up nodes,
//   2. arclength Fourier coefficients via Type-1 NUFFT
//        fhat(k) = (h/L_p) sum_j f(s(a_j)) s_alpha(a_j) e^{-2pi i k s(a_j)/L_p},
//   3. invert onto the uniform-in-s working grid (2 k_max points),
//   4. regularized analytic envelope  E_r = sqrt(1 + f^2 + H[f]^2),
//   5. heat-kernel smoothing with sharpness a,
//   6. Type-2 NUFFT back to the moving nodes s(a_j).
//
// GL then defines the mesh density R through the delta_R split
//   R = (1-d_R) { (1-e^{-d t^2}) R_e + e^{-d t^2} R_0 } + d_R R_0,
//   R_0 = 1/pi,  R_e = GL(s(a))^{-1} / int_0^pi GL(s)^{-1} da',
// and the tangential velocity V that realizes s_alpha = R L follows from
// integrating dR/dt L + R dL/dt + theta_a U from the pole, where dR/dt is
// the backward difference (R_now - R_past)/tau projected to zero mean on
// [0,pi] so that V(pi) vanishes identically.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "axisheet/curve.hpp"
#include "axisheet/nufft.hpp"
#include "axisheet/spectral.hpp"

namespace axisheet {

/// Refinement parameters. Defaults follow the validated configuration:
/// a = 20, d = 5, delta_R = 1/8, k_max = 8 (N/2), N_up = 32 N,
/// eps_rel = 1e-15.
struct GuidelineParams {
    double a = 20.0;        // heat-kernel sharpness (inverse length)
    double d = 5.0;         // ramp rate (inverse time^2)
    double delta_R = 0.125; // refinement floor fraction, in (0,1)
    std::size_t k_max = 0;  // largest retained wavenumber (2 k_max a power of two)
    std::size_t n_up = 0;   // upsampled grid size
    double eps_rel = 1e-15; // NUFFT accuracy

    static GuidelineParams defaults_for(std::size_t n) {
        GuidelineParams p;
        p.k_max = 4 * n;  // 8 * (N/2)
        p.n_up = 32 * n;
        return p;
    }

    void validate(std::size_t n) const {
        if (!(a > 0.0)) throw std::invalid_argument("guideline: a must be > 0");
        if (!(d > 0.0)) throw std::invalid_argument("guideline: d must be > 0");
        if (!(delta_R > 0.0 && delta_R < 1.0))
            throw std::invalid_argument("guideline: delta_R must lie in (0,1)");
        if (k_max < n / 2) throw std::invalid_argument("guideline: k_max must be >= N/2");
        if (!detail::is_pow2(2 * k_max))
            throw std::invalid_argument("guideline: 2*k_max must be a power of two");
        if (n_up < 2 * k_max) throw std::invalid_argument("guideline: N_up must be >= 2*k_max");
        if (!detail::is_pow2(n_up)) throw std::invalid_argument("guideline: N_up must be a power of two");
    }
};

/// GL sampled at the curve nodes and on the uniform-in-s working grid.
struct Guideline {
    Samples gl_at_nodes;
    Samples gl_uniform;
};

/// Mesh density R with its backward-difference time derivative.
struct RFunction {
    Samples R;
    Samples dRdt;
    double tau = 0.0;
};

namespace detail {

// s is known on the coarse grid as mean * alpha + periodic part; resample
// the periodic part and rebuild.
inline Samples resample_arclength(const Samples& s, double l_p, std::size_t n_up) {
    const std::size_t n = s.size();
    Samples per(n);
    for (std::size_t j = 0; j < n; ++j)
        per[j] = s[j] - l_p / kTwoPi * (kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    Samples per_up = resample(per, n_up);
    for (std::size_t j = 0; j < n_up; ++j)
        per_up[j] += l_p / kTwoPi * (kTwoPi * static_cast<double>(j) / static_cast<double>(n_up));
    return per_up;
}

inline std::vector<std::complex<double>> spectrum_to_linear(const Spectrum& s) {
    const auto n = static_cast<long>(s.size());
    std::vector<std::complex<double>> out(s.size());
    for (long k = -n / 2; k < n / 2; ++k)
        out[static_cast<std::size_t>(k + n / 2)] = s.at_mode(static_cast<int>(k));
    return out;
}

inline Spectrum linear_to_spectrum(const std::vector<std::complex<double>>& lin) {
    const auto n = static_cast<long>(lin.size());
    Spectrum s(lin.size());
    for (long k = -n / 2; k < n / 2; ++k)
        s.at_mode(static_cast<int>(k)) = lin[static_cast<std::size_t>(k + n / 2)];
    return s;
}

}  // namespace detail

/// Arclength Fourier coefficients of f for |k| <= k_max, returned in
/// linear order k = -k_max .. k_max-1. f lives on the same (coarse) grid
/// as the geometry; everything is upsampled to n_up internally.
inline std::vector<std::complex<double>> arclength_coeffs(const Samples& f,
                                                          const DerivedGeometry& geom,
                                                          const CurveState& st,
                                                          const GuidelineParams& params) {
    const std::size_t n = f.size();
    params.validate(n);
    for (std::size_t j = 0; j < n; ++j)
        if (!(st.s_alpha[j] > 0.0))
            throw std::invalid_argument("arclength_coeffs: s must be strictly increasing");

    const std::size_t n_up = params.n_up;
    Samples f_up = resample(f, n_up);
    // drop the Nyquist mode from the weights: s was built by the spectral
    // antiderivative, which cannot carry it, and the change-of-variables
    // identity (sum of weights = L_p exactly, zero mass in k != 0 for
    // constant f) holds only if the weights are exactly ds/da
    Spectrum sa_spec = forward(st.s_alpha);
    sa_spec.at_mode(-static_cast<int>(n / 2)) = 0.0;
    Samples sa_up = resample(inverse(sa_spec), n_up);
    Samples s_up = detail::resample_arclength(geom.s, geom.L_p, n_up);
    for (std::size_t j = 0; j + 1 < n_up; ++j)
        if (!(s_up[j + 1] > s_up[j]))
            throw std::invalid_argument("arclength_coeffs: s must be strictly increasing");

    const double h_over_lp = kTwoPi / static_cast<double>(n_up) / geom.L_p;
    std::vector<std::complex<double>> strengths(n_up);
    std::vector<double> nodes(n_up);
    for (std::size_t j = 0; j < n_up; ++j) {
        strengths[j] = f_up[j] * sa_up[j] * h_over_lp;
        nodes[j] = kTwoPi * s_up[j] / geom.L_p;
    }
    NufftPlan plan(2 * params.k_max, params.eps_rel);
    return nufft_type1(strengths, NodeSet(std::move(nodes)), plan);
}

/// Regularized analytic envelope sqrt(1 + f^2 + H[f]^2) of samples uniform
/// in arclength.
inline Samples analytic_envelope(const Samples& f_uniform) {
    Samples h = hilbert(f_uniform);
    Samples out(f_uniform.size());
    for (std::size_t j = 0; j < f_uniform.size(); ++j)
        out[j] = std::sqrt(1.0 + f_uniform[j] * f_uniform[j] + h[j] * h[j]);
    return out;
}

/// Full guideline pipeline; requires curvatures in `geom`.
inline Guideline build_guideline(const CurveState& st, const DerivedGeometry& geom,
                                 const GuidelineParams& params) {
    const std::size_t n = st.size();
    params.validate(n);

    auto coeffs = arclength_coeffs(geom.kappa_z, geom, st, params);
    Samples kappa_u = inverse(detail::linear_to_spectrum(coeffs));

    Samples env = analytic_envelope(kappa_u);
    Samples gl_u = gaussian_filter(env, params.a, geom.L_p);

    // back to the moving nodes
    std::vector<double> nodes(n);
    for (std::size_t j = 0; j < n; ++j) nodes[j] = kTwoPi * geom.s[j] / geom.L_p;
    NufftPlan plan(2 * params.k_max, params.eps_rel);
    auto gl_hat = detail::spectrum_to_linear(forward(gl_u));
    auto at_nodes = nufft_type2(gl_hat, NodeSet(std::move(nodes)), plan);

    Guideline gl;
    gl.gl_uniform = Samples(gl_u.size());
    gl.gl_at_nodes = Samples(n);
    for (std::size_t j = 0; j < gl_u.size(); ++j)
        gl.gl_uniform[j] = std::max(gl_u[j], 1.0);  // the envelope's floor
    for (std::size_t j = 0; j < n; ++j) gl.gl_at_nodes[j] = std::max(at_nodes[j].real(), 1.0);
    return gl;
}

/// Mesh density from the guideline at time t. The returned dRdt is zero;
/// the backward difference is formed where the delay is known (see
/// tangential_velocity).
inline RFunction build_R(const Guideline& gl, double t, const GuidelineParams& params) {
    const std::size_t n = gl.gl_at_nodes.size();
    Samples g_inv(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!(gl.gl_at_nodes[j] > 0.0))
            throw std::invalid_argument("build_R: guideline must be strictly positive");
        g_inv[j] = 1.0 / gl.gl_at_nodes[j];
    }
    const double norm = antiderivative_from_zero(g_inv)[n / 2];  // int_0^pi GL^-1

    const double ramp = std::exp(-params.d * t * t);
    const double r0 = 1.0 / kPi;
    RFunction rf;
    rf.R = Samples(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double re = g_inv[j] / norm;
        rf.R[j] = (1.0 - params.delta_R) * ((1.0 - ramp) * re + ramp * r0) + params.delta_R * r0;
    }
    // even extension about alpha = pi
    for (std::size_t j = 1; j < n / 2; ++j) {
        const double avg = 0.5 * (rf.R[j] + rf.R[n - j]);
        rf.R[j] = avg;
        rf.R[n - j] = avg;
    }
    rf.dRdt = Samples(n);
    rf.tau = 0.0;
    return rf;
}

/// Tangential velocity realizing the density R. Solves
///   V(a) = int_0^a (dR/dt L + R dL/dt) + int_0^a theta_a U,
/// with dR/dt = (R_now - R_past)/tau projected to zero mean on [0,pi]
/// (pass zero_drdt = true for the very first stage, where dR/dt(.,0) = 0).
/// V is extended oddly about pi, so V(0) = V(pi) = 0 exactly.
struct TangentialVelocity {
    Samples V;
    Samples dRdt;
    double dLdt = 0.0;
};

inline TangentialVelocity tangential_velocity(const CurveState& st, const DerivedGeometry& geom,
                                              const Samples& U, const RFunction& r_now,
                                              const Samples& r_past, double tau,
                                              bool zero_drdt = false) {
    const std::size_t n = st.size();
    if (!zero_drdt && !(tau > 0.0))
        throw std::invalid_argument("tangential_velocity: tau must be > 0");

    Samples theta_per(n);
    for (std::size_t j = 0; j < n; ++j)
        theta_per[j] = st.theta[j] - kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    Samples theta_a = derivative(theta_per);
    for (auto& x : theta_a.v) x += 1.0;

    Samples theta_a_u(n);
    for (std::size_t j = 0; j < n; ++j) theta_a_u[j] = theta_a[j] * U[j];
    const double dldt = -antiderivative_from_zero(theta_a_u)[n / 2];

    TangentialVelocity out;
    out.dLdt = dldt;
    out.dRdt = Samples(n);
    if (!zero_drdt) {
        for (std::size_t j = 0; j < n; ++j) out.dRdt[j] = (r_now.R[j] - r_past[j]) / tau;
        const double bias = antiderivative_from_zero(out.dRdt)[n / 2] / kPi;
        for (std::size_t j = 0; j < n; ++j) out.dRdt[j] -= bias;
    }

    Samples integrand(n);
    const double big_l = geom.L;
    for (std::size_t j = 0; j < n; ++j)
        integrand[j] = out.dRdt[j] * big_l + r_now.R[j] * dldt + theta_a_u[j];
    out.V = antiderivative_from_zero(integrand);

    // odd extension about pi pins both end conditions
    out.V[0] = 0.0;
    out.V[n / 2] = 0.0;
    for (std::size_t j = 1; j < n / 2; ++j) {
        const double odd = 0.5 * (out.V[j] - out.V[n - j]);
        out.V[j] = odd;
        out.V[n - j] = -odd;
    }
    return out;
}

}  // namespace axisheet
