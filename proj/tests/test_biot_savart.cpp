#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "axisheet/biot_savart.hpp"
#include "axisheet/problems.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace axisheet;

namespace {

// sphere of radius 1 with a chosen sheet strength, as closed forms
oracle::BiotSavartOracle sphere_oracle(double (*gamma_fn)(double)) {
    oracle::BiotSavartOracle o;
    o.curve = [gamma_fn](double a) {
        return oracle::CurvePoint{std::sin(a), -std::cos(a), gamma_fn(a)};
    };
    // exact chord identities: no cancellation however small u gets
    o.diff = [](double a, double u) {
        const double s = 2.0 * std::sin(0.5 * u);
        return std::array<double, 2>{s * std::cos(a + 0.5 * u), s * std::sin(a + 0.5 * u)};
    };
    return o;
}

double gamma_bag(double a) { return -std::sin(a); }
double gamma_pinch(double a) { return -2.0 * std::sin(2.0 * a); }

struct OracleField {
    std::vector<double> w_r, w_z;
    double scale = 0.0;
};

OracleField oracle_on_grid(const oracle::BiotSavartOracle& o, std::size_t n) {
    OracleField f;
    f.w_r.resize(n / 2 + 1);
    f.w_z.resize(n / 2 + 1);
    for (std::size_t j = 0; j <= n / 2; ++j) {
        const double a = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        if (j == 0 || j == n / 2) {
            f.w_r[j] = 0.0;
            f.w_z[j] = o.axis_velocity(j == 0);
        } else {
            o.velocity(a, f.w_r[j], f.w_z[j]);
        }
        f.scale = std::max({f.scale, std::abs(f.w_r[j]), std::abs(f.w_z[j])});
    }
    return f;
}

double max_rel_err(const SheetVelocity& got, const OracleField& want, std::size_t n) {
    double err = 0.0;
    for (std::size_t j = 0; j <= n / 2; ++j) {
        err = std::max(err, std::abs(got.w_r[j] - want.w_r[j]));
        err = std::max(err, std::abs(got.w_z[j] - want.w_z[j]));
    }
    return err / want.scale;
}

}  // namespace

TEST_CASE("w_r vanishes on the axis", "[biot_savart]") {
    auto st = make_bagbreakup_state(64);
    auto g = derive_geometry(st, -1.0);
    auto w = principal_velocity(st, g, 2 * 64 + 1);
    CHECK(w.w_r[0] == 0.0);
    CHECK(w.w_r[32] == 0.0);
}

TEST_CASE("sphere velocities match the quadrature oracle", "[biot_savart]") {
    const std::size_t n = 256;
    auto st = make_bagbreakup_state(n);
    auto g = derive_geometry(st, -1.0);
    auto w = principal_velocity(st, g, 4 * n + 1);
    auto want = oracle_on_grid(sphere_oracle(gamma_bag), n);
    CHECK(max_rel_err(w, want, n) < 1e-6);
}

TEST_CASE("convergence order in the quadrature node count is >= 3", "[biot_savart]") {
    const std::size_t n = 64;
    auto st = make_bagbreakup_state(n);
    auto g = derive_geometry(st, -1.0);
    auto want = oracle_on_grid(sphere_oracle(gamma_bag), n);

    std::vector<double> errs;
    for (std::size_t m : {2 * n + 1, 4 * n + 1, 8 * n + 1, 16 * n + 1}) {
        auto w = principal_velocity(st, g, m);
        errs.push_back(max_rel_err(w, want, n));
    }
    // least-squares slope of log(err) against log(h)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < errs.size(); ++i) {
        const double x = -std::log(2.0) * static_cast<double>(i);
        const double y = std::log(errs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double nn = static_cast<double>(errs.size());
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    INFO("errors: " << errs[0] << " " << errs[1] << " " << errs[2] << " " << errs[3]);
    CHECK(slope >= 3.0);
    CHECK(errs.back() < errs.front());
}

TEST_CASE("pinch-off data: mid-plane reflection symmetry", "[biot_savart]") {
    const std::size_t n = 128;
    auto st = make_pinchoff_state(n);
    auto g = derive_geometry(st, -1.0);
    auto w = principal_velocity(st, g, 4 * n + 1);

    // state is symmetric under z -> -z: w_r even and w_z odd about alpha = pi/2
    double err = 0.0;
    for (std::size_t j = 0; j <= n / 4; ++j) {
        const std::size_t k = n / 2 - j;
        err = std::max(err, std::abs(w.w_r[j] - w.w_r[k]));
        err = std::max(err, std::abs(w.w_z[j] + w.w_z[k]));
    }
    CHECK(err < 1e-8);
    CHECK(std::abs(w.w_z[n / 4]) < 1e-8);  // w_z(pi/2) = 0

    // the oracle agrees that w_z vanishes at the mid-plane
    auto o = sphere_oracle(gamma_pinch);
    double wr_o, wz_o;
    o.velocity(kPi / 2.0, wr_o, wz_o);
    CHECK(std::abs(wz_o) < 1e-9);
}

TEST_CASE("velocity is invariant under z-translation", "[biot_savart]") {
    const std::size_t n = 64;
    auto st = make_pinchoff_state(n);
    auto g0 = derive_geometry(st, 0.0);
    auto g1 = derive_geometry(st, 5.0);
    auto w0 = principal_velocity(st, g0, 2 * n + 1);
    auto w1 = principal_velocity(st, g1, 2 * n + 1);
    CHECK(testutil::max_abs_diff(w0.w_r.v, w1.w_r.v) < 1e-12);
    CHECK(testutil::max_abs_diff(w0.w_z.v, w1.w_z.v) < 1e-12);
}

TEST_CASE("frame decomposition is orthonormal", "[biot_savart]") {
    const std::size_t n = 64;
    auto st = make_bagbreakup_state(n);
    auto g = derive_geometry(st, -1.0);
    auto w = principal_velocity(st, g, 2 * n + 1);
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double lhs = w.U[j] * w.U[j] + w.Wt[j] * w.Wt[j];
        const double rhs = w.w_r[j] * w.w_r[j] + w.w_z[j] * w.w_z[j];
        err = std::max(err, std::abs(lhs - rhs));
    }
    CHECK(err < 1e-13);
}

TEST_CASE("results are identical across thread counts", "[biot_savart]") {
    const std::size_t n = 64;
    auto st = make_pinchoff_state(n);
    auto g = derive_geometry(st, -1.0);
    auto w1 = principal_velocity(st, g, 2 * n + 1, 1);
    auto w2 = principal_velocity(st, g, 2 * n + 1, 2);
    CHECK(testutil::max_abs_diff(w1.w_r.v, w2.w_r.v) == 0.0);
    CHECK(testutil::max_abs_diff(w1.w_z.v, w2.w_z.v) == 0.0);
}

TEST_CASE("quadrature node count is validated and rounded up", "[biot_savart]") {
    CHECK(admissible_quad_nodes(513, 256) == 513);
    CHECK(admissible_quad_nodes(514, 256) == 1025);
    CHECK(admissible_quad_nodes(1025, 256) == 1025);
    CHECK(admissible_quad_nodes(8193, 2048) == 8193);

    auto st = make_bagbreakup_state(64);
    auto g = derive_geometry(st, -1.0);
    CHECK_THROWS_AS(principal_velocity(st, g, 64), std::invalid_argument);
}
