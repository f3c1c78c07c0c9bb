// elliptic.hpp
//
// Complete elliptic integrals K(m), E(m) at parameter m = lambda^2 via the
// arithmetic-geometric mean, plus the exact log/smooth decomposition
//
//   K(m) = Kf(m1) - Kg(m1) ln(m1),   E(m) = Ef(m1) - Eg(m1) ln(m1),
//
// in the complementary parameter m1 = 1-m. The split series are what the
// Biot-Savart quadrature uses to peel the logarithmic singularity off the
// kernel near a target point.

#pragma once

#include <cmath>
#include <stdexcept>

namespace axisheet {

struct EllipticPair {
    double K;
    double E;
};

/// K and E at parameter m = 1 - m1, with the complementary parameter m1
/// passed directly. Near m = 1 this is the numerically meaningful entry
/// point: the kernel algebra has m1 available without cancellation, and
/// K's logarithmic sensitivity to m1 makes the subtraction 1-m lossy.
inline EllipticPair elliptic_ke_m1(double m1) {
    if (!(m1 > 0.0 && m1 <= 1.0))
        throw std::invalid_argument("complementary elliptic parameter must satisfy 0 < m1 <= 1");
    double a = 1.0;
    double b = std::sqrt(m1);
    double c = std::sqrt(1.0 - m1);
    double sum = 0.5 * c * c;  // 2^{n-1} c_n^2 accumulated from n = 0
    double pow2 = 0.5;
    for (int it = 0; it < 64 && std::abs(c) > 1e-17 * a; ++it) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        c = c * c / (4.0 * an);  // = (a-b)/2 without the cancellation
        a = an;
        b = bn;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    const double big_k = 1.5707963267948966 / a;  // pi / (2 * AGM)
    return {big_k, big_k * (1.0 - sum)};
}

/// K and E by AGM iteration, converged to relative 1e-15. Valid for
/// 0 <= m < 1.
inline EllipticPair elliptic_ke(double m) {
    if (!(m >= 0.0 && m < 1.0))
        throw std::invalid_argument("elliptic parameter must satisfy 0 <= m < 1");
    return elliptic_ke_m1(1.0 - m);
}

/// Pieces of the log split at complementary parameter m1 = 1-m. Series in
/// m1; use only for m1 <= 0.6 or so (the quadrature needs it near m1 -> 0).
/// Eg is returned divided by m1 since that ratio is what stays finite in
/// the kernel algebra.
struct EllipticLogSplit {
    double Kf;
    double Kg;
    double Ef;
    double Eg_over_m1;
};

inline EllipticLogSplit elliptic_log_split(double m1) {
    if (!(m1 > 0.0 && m1 <= 0.75))
        throw std::invalid_argument("elliptic_log_split expects 0 < m1 <= 0.75");
    // c_n = ((1/2)_n / n!)^2,  A_n = 2 psi(n+1) - 2 psi(n+1/2)
    // Kg = (1/2) sum c_n m1^n,  Kf = (1/2) sum c_n A_n m1^n
    // Kg' and Kf' feed E through E = (1-m) K + 2 m (1-m) dK/dm.
    double cn = 1.0;
    double an = 4.0 * std::log(2.0);
    double pw = 1.0;  // m1^n
    double kg = 0.0, kf = 0.0, kg_d = 0.0, kf_d = 0.0;
    for (int n = 0;; ++n) {
        const double tg = cn * pw;
        const double tf = cn * an * pw;
        kg += tg;
        kf += tf;
        if (n >= 1) {
            kg_d += cn * n * pw / m1;
            kf_d += cn * an * n * pw / m1;
        }
        if (n > 2 && std::abs(tf) < 1e-18 * std::abs(kf)) break;
        if (n > 200) break;
        const double dn = static_cast<double>(n + 1);
        cn *= ((dn - 0.5) / dn) * ((dn - 0.5) / dn);
        an += 2.0 / dn - 4.0 / (2.0 * dn - 1.0);
        pw *= m1;
    }
    kg *= 0.5;
    kf *= 0.5;
    kg_d *= 0.5;
    kf_d *= 0.5;
    EllipticLogSplit out;
    out.Kf = kf;
    out.Kg = kg;
    out.Ef = m1 * kf - 2.0 * m1 * (1.0 - m1) * kf_d + 2.0 * (1.0 - m1) * kg;
    out.Eg_over_m1 = kg - 2.0 * (1.0 - m1) * kg_d;
    return out;
}

}  // namespace axisheet
