// curve.hpp
//
// Curve state in angle-arclength variables and derived pointwise geometry.
// The generating curve lives on the extended periodic parameter interval
// [0,2pi): r is odd and z even about alpha = pi, so the half-curve
// alpha in [0,pi] (the physical meridian from pole to pole) closes into a
// smooth periodic curve. theta is the tangent angle, s_alpha = |X_alpha|
// the relative spacing, gamma the unnormalized vortex sheet strength.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "axisheet/spectral.hpp"

namespace axisheet {

struct SingularGeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dynamical triple (theta, s_alpha, gamma) plus time and the surface
/// tension coefficient. Immutable value semantics: operations return new
/// states.
struct CurveState {
    double t = 0.0;
    double sigma = 0.0;
    Samples theta;    // tangent angle; theta - alpha is periodic
    Samples s_alpha;  // > 0 everywhere
    Samples gamma;

    std::size_t size() const { return theta.size(); }
};

/// Geometry reconstructed from a state: coordinates, arclength, lengths,
/// principal curvatures, and the closure diagnostic.
struct DerivedGeometry {
    Samples r, z;
    Samples s;        // arclength from alpha = 0
    double L = 0.0;   // s(pi), half-curve length
    double L_p = 0.0; // s(2pi), periodic length
    Samples kappa_z;  // in-plane principal curvature theta_alpha / s_alpha
    Samples kappa_r;  // azimuthal curvature z_alpha / (s_alpha r)
    double ds_min = 0.0;           // min distance between adjacent nodes
    double closure_residual = 0.0; // |mean(X_alpha)| * 2pi before removal
};

namespace detail {

inline void check_state(const CurveState& st) {
    const std::size_t n = st.size();
    if (st.s_alpha.size() != n || st.gamma.size() != n)
        throw std::invalid_argument("curve state fields differ in size");
    for (std::size_t j = 0; j < n; ++j)
        if (!(st.s_alpha[j] > 0.0))
            throw SingularGeometryError("s_alpha <= 0 at node " + std::to_string(j));
}

}  // namespace detail

/// Integrate X_alpha = (s_alpha cos theta, s_alpha sin theta) with
/// r(0) = 0 and z(0) = z_anchor. The (round-off sized) periodic means of
/// the integrands are removed so the curve closes exactly; their size is
/// recorded as the closure residual.
inline DerivedGeometry reconstruct(const CurveState& st, double z_anchor = 0.0) {
    detail::check_state(st);
    const std::size_t n = st.size();

    Samples xr(n), xz(n);
    for (std::size_t j = 0; j < n; ++j) {
        xr[j] = st.s_alpha[j] * std::cos(st.theta[j]);
        xz[j] = st.s_alpha[j] * std::sin(st.theta[j]);
    }
    const double mr = mean(xr);
    const double mz = mean(xz);
    for (std::size_t j = 0; j < n; ++j) {
        xr[j] -= mr;
        xz[j] -= mz;
    }

    DerivedGeometry g;
    g.closure_residual = std::hypot(mr, mz) * kTwoPi;
    g.r = antiderivative_from_zero(xr);
    g.z = antiderivative_from_zero(xz);
    for (std::size_t j = 0; j < n; ++j) g.z[j] += z_anchor;

    g.s = antiderivative_from_zero(st.s_alpha);
    g.L = g.s[n / 2];
    g.L_p = mean(st.s_alpha) * kTwoPi;

    g.ds_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = (j + 1) % n;
        g.ds_min = std::min(g.ds_min, std::hypot(g.r[k] - g.r[j], g.z[k] - g.z[j]));
    }
    return g;
}

/// Principal curvatures. kappa_z = theta_alpha / s_alpha everywhere;
/// kappa_r = z_alpha / (s_alpha r) off-axis and takes the kappa_z limit at
/// the two axis nodes. A vanishing r anywhere else is a degenerate
/// geometry (imminent pinch-off contact) and is rejected.
inline void curvatures(const CurveState& st, DerivedGeometry& g) {
    const std::size_t n = st.size();
    Samples theta_per(n);
    for (std::size_t j = 0; j < n; ++j)
        theta_per[j] = st.theta[j] - kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    Samples theta_a = derivative(theta_per);
    for (auto& x : theta_a.v) x += 1.0;

    g.kappa_z = Samples(n);
    g.kappa_r = Samples(n);
    for (std::size_t j = 0; j < n; ++j) g.kappa_z[j] = theta_a[j] / st.s_alpha[j];

    for (std::size_t j = 0; j < n; ++j) {
        if (j == 0 || j == n / 2) {
            g.kappa_r[j] = g.kappa_z[j];  // axis limit
        } else {
            // r > 0 on the physical half, < 0 on the extended half (odd
            // extension); the quotient below then yields the even extension
            // of kappa_r automatically.
            const bool degenerate = (j < n / 2) ? !(g.r[j] > 0.0) : !(g.r[j] < 0.0);
            if (degenerate)
                throw SingularGeometryError("interface touches the axis at node " +
                                            std::to_string(j));
            const double z_a = st.s_alpha[j] * std::sin(st.theta[j]);
            g.kappa_r[j] = z_a / (st.s_alpha[j] * g.r[j]);
        }
    }
}

/// reconstruct + curvatures in one call.
inline DerivedGeometry derive_geometry(const CurveState& st, double z_anchor = 0.0) {
    DerivedGeometry g = reconstruct(st, z_anchor);
    curvatures(st, g);
    return g;
}

/// Enclosed volume V = pi * int_0^pi r^2 z_alpha d(alpha) by spectral
/// quadrature; positive for the counterclockwise orientation.
inline double enclosed_volume(const DerivedGeometry& g) {
    const std::size_t n = g.r.size();
    Samples z_a = derivative(g.z);
    Samples integrand(n);
    for (std::size_t j = 0; j < n; ++j) integrand[j] = g.r[j] * g.r[j] * z_a[j];
    Samples acc = antiderivative_from_zero(integrand);
    return kPi * acc[n / 2];
}

/// Project a state onto the symmetric subspace: s_alpha even and gamma odd
/// about alpha = pi, theta(pi+u) = 2pi - theta(pi-u). Averages the state
/// with its reflection; idempotent, and exact on already-symmetric states.
inline CurveState symmetrize(const CurveState& st) {
    const std::size_t n = st.size();
    CurveState out = st;
    // Work with u = theta - alpha, which is odd about pi exactly like gamma;
    // stating the reflection as a negation keeps the projection idempotent
    // to the last bit.
    auto alpha = [n](std::size_t j) {
        return kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    };
    for (std::size_t j = 1; j < n / 2; ++j) {
        const std::size_t k = n - j;
        const double uj = st.theta[j] - alpha(j);
        const double uk = st.theta[k] - alpha(k);
        const double sym_u = 0.5 * (uj - uk);
        const double sym_s = 0.5 * (st.s_alpha[j] + st.s_alpha[k]);
        const double sym_g = 0.5 * (st.gamma[j] - st.gamma[k]);
        out.theta[j] = alpha(j) + sym_u;
        out.theta[k] = alpha(k) - sym_u;
        out.s_alpha[j] = sym_s;
        out.s_alpha[k] = sym_s;
        out.gamma[j] = sym_g;
        out.gamma[k] = -sym_g;
    }
    // the two axis nodes are their own mirror images
    out.theta[0] = 0.0;
    out.theta[n / 2] = kPi;
    out.gamma[0] = 0.0;
    out.gamma[n / 2] = 0.0;
    return out;
}

/// Max deviation from the symmetry invariant (diagnostic).
inline double symmetry_residual(const CurveState& st) {
    const std::size_t n = st.size();
    double res = 0.0;
    for (std::size_t j = 1; j < n / 2; ++j) {
        const std::size_t k = n - j;
        res = std::max(res, std::abs(st.theta[j] + st.theta[k] - kTwoPi));
        res = std::max(res, std::abs(st.s_alpha[j] - st.s_alpha[k]));
        res = std::max(res, std::abs(st.gamma[j] + st.gamma[k]));
    }
    res = std::max(res, std::abs(st.theta[0]));
    res = std::max(res, std::abs(st.theta[n / 2] - kPi));
    return res;
}

}  // namespace axisheet
