// problems.hpp
//
// Built-in initial conditions: the two singularity-formation problems
// (capillary pinch-off and bag breakup, both starting from a unit sphere
// with different sheet strengths) and the P2-perturbed sphere used for the
// initialization convergence test.

#pragma once

#include <cmath>
#include <functional>

#include "axisheet/curve.hpp"

namespace axisheet {

/// Unit sphere, theta = alpha, s_alpha = 1, with a caller-supplied sheet
/// strength gamma(alpha).
inline CurveState make_sphere_state(std::size_t n, double sigma,
                                    const std::function<double(double)>& gamma0) {
    CurveState st;
    st.t = 0.0;
    st.sigma = sigma;
    st.theta = Samples(n);
    st.s_alpha = Samples(n, 1.0);
    st.gamma = Samples(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        st.theta[j] = a;
        st.gamma[j] = gamma0(a);
    }
    return st;
}

/// Capillary pinch-off: sigma = 0.2, gamma = -2 sin(2 alpha).
inline CurveState make_pinchoff_state(std::size_t n) {
    return make_sphere_state(n, 0.2, [](double a) { return -2.0 * std::sin(2.0 * a); });
}

/// Bag breakup: sigma = 0.04, gamma = -sin(alpha).
inline CurveState make_bagbreakup_state(std::size_t n) {
    return make_sphere_state(n, 0.04, [](double a) { return -std::sin(a); });
}

namespace p2 {

inline double legendre2(double x) { return 0.5 * (3.0 * x * x - 1.0); }

inline double radius(double phi, double eps) { return 1.0 + eps * legendre2(std::cos(phi)); }
inline double radius_d(double phi, double eps) { return -1.5 * eps * std::sin(2.0 * phi); }
inline double radius_dd(double phi, double eps) { return -3.0 * eps * std::cos(2.0 * phi); }

/// Plane curvature of the polar curve eta(phi) (counterclockwise, so the
/// unit circle has curvature +1).
inline double curvature(double phi, double eps) {
    const double e = radius(phi, eps);
    const double ed = radius_d(phi, eps);
    const double edd = radius_dd(phi, eps);
    return (e * e + 2.0 * ed * ed - e * edd) / std::pow(e * e + ed * ed, 1.5);
}

}  // namespace p2

/// Sphere perturbed by the second Legendre mode, eta(phi) = 1 + eps P2(cos
/// phi), parametrized by the polar angle phi (a non-uniform
/// parametrization; s_alpha varies with eps). gamma = 0: the zero-velocity
/// state of the linearized oscillation.
inline CurveState make_p2_state(std::size_t n, double eps, double sigma) {
    CurveState st;
    st.t = 0.0;
    st.sigma = sigma;
    st.theta = Samples(n);
    st.s_alpha = Samples(n);
    st.gamma = Samples(n);

    double prev_raw = 0.0;
    double offset = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        const double e = p2::radius(phi, eps);
        const double ed = p2::radius_d(phi, eps);
        const double r_d = ed * std::sin(phi) + e * std::cos(phi);
        const double z_d = -ed * std::cos(phi) + e * std::sin(phi);
        st.s_alpha[j] = std::hypot(r_d, z_d);
        const double raw = std::atan2(z_d, r_d);
        if (j > 0) {
            double diff = raw - prev_raw;
            while (diff > kPi) diff -= kTwoPi;
            while (diff <= -kPi) diff += kTwoPi;
            offset += diff;
        }
        prev_raw = raw;
        st.theta[j] = offset;
        st.gamma[j] = 0.0;
    }
    return st;
}

}  // namespace axisheet
