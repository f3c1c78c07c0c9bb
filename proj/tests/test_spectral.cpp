#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "axisheet/spectral.hpp"
#include "test_util.hpp"

using namespace axisheet;
using testutil::grid_map;

TEST_CASE("forward: constant signal has only the k=0 coefficient", "[spectral]") {
    Samples f(16, 1.0);
    Spectrum s = forward(f);
    CHECK(std::abs(s.at_mode(0) - 1.0) < 1e-15);
    for (int k = -8; k < 8; ++k) {
        if (k == 0) continue;
        CHECK(std::abs(s.at_mode(k)) < 1e-15);
    }
}

TEST_CASE("forward: cos(3a) splits into modes +/-3", "[spectral]") {
    auto f = grid_map(16, [](double a) { return std::cos(3.0 * a); });
    Spectrum s = forward(f);
    CHECK(std::abs(s.at_mode(3) - 0.5) < 1e-14);
    CHECK(std::abs(s.at_mode(-3) - 0.5) < 1e-14);
    for (int k = -8; k < 8; ++k) {
        if (k == 3 || k == -3) continue;
        CHECK(std::abs(s.at_mode(k)) < 1e-14);
    }
}

TEST_CASE("round trip is the identity", "[spectral]") {
    for (std::size_t n : {std::size_t(64), std::size_t(1024), std::size_t(8192)}) {
        Samples f(testutil::random_reals(n, 42 + static_cast<unsigned>(n)));
        Samples g = inverse(forward(f));
        CHECK(testutil::max_abs_diff(f.v, g.v) <= 1e-14 * testutil::max_abs(f.v));
    }
}

TEST_CASE("grid size must be a power of two >= 8", "[spectral]") {
    CHECK_THROWS_AS(Samples(std::vector<double>(15, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(Samples(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(Samples(std::vector<double>(4, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(Samples(std::vector<double>(24, 0.0)), std::invalid_argument);
}

TEST_CASE("derivative of trigonometric signals", "[spectral]") {
    const std::size_t n = 64;
    auto sin1 = grid_map(n, [](double a) { return std::sin(a); });
    auto cos1 = grid_map(n, [](double a) { return std::cos(a); });
    CHECK(testutil::max_abs_diff(derivative(sin1).v, cos1.v) < 1e-13);

    Samples c(n, 3.7);
    CHECK(testutil::max_abs(derivative(c).v) < 1e-13);

    auto sin3 = grid_map(n, [](double a) { return std::sin(3.0 * a); });
    auto cos3x3 = grid_map(n, [](double a) { return 3.0 * std::cos(3.0 * a); });
    CHECK(testutil::max_abs_diff(derivative(sin3).v, cos3x3.v) < 1e-13);
}

TEST_CASE("antiderivative_from_zero", "[spectral]") {
    const std::size_t n = 64;
    auto cosa = grid_map(n, [](double a) { return std::cos(a); });
    auto sina = grid_map(n, [](double a) { return std::sin(a); });
    CHECK(testutil::max_abs_diff(antiderivative_from_zero(cosa).v, sina.v) < 1e-13);

    Samples one(n, 1.0);
    auto alpha = grid_map(n, [](double a) { return a; });
    CHECK(testutil::max_abs_diff(antiderivative_from_zero(one).v, alpha.v) < 1e-13);

    auto f = grid_map(n, [](double a) { return 1.0 + std::cos(a); });
    auto expect = grid_map(n, [](double a) { return a + std::sin(a); });
    CHECK(testutil::max_abs_diff(antiderivative_from_zero(f).v, expect.v) < 1e-13);
}

TEST_CASE("derivative of antiderivative recovers band-limited signals", "[spectral]") {
    const std::size_t n = 128;
    Samples f(testutil::random_reals(n, 7));
    // knock out Nyquist and mean: the periodic part is what the identity covers
    Spectrum s = forward(f);
    s.at_mode(-static_cast<int>(n) / 2) = 0.0;
    s.at_mode(0) = 0.0;
    f = inverse(s);
    Samples g = derivative(antiderivative_from_zero(f));
    CHECK(testutil::max_abs_diff(f.v, g.v) <= 1e-12 * testutil::max_abs(f.v));
}

TEST_CASE("resample interpolates band-limited data exactly", "[spectral]") {
    auto f16 = grid_map(16, [](double a) { return std::sin(2.0 * a); });
    Samples f64 = resample(f16, 64);
    auto expect = grid_map(64, [](double a) { return std::sin(2.0 * a); });
    CHECK(testutil::max_abs_diff(f64.v, expect.v) < 1e-13);

    // downsampling keeps modes below the new bandwidth
    auto g = grid_map(64, [](double a) { return std::sin(2.0 * a) + 0.25 * std::cos(5.0 * a); });
    Samples g16 = resample(g, 16);
    auto expect16 =
        grid_map(16, [](double a) { return std::sin(2.0 * a) + 0.25 * std::cos(5.0 * a); });
    CHECK(testutil::max_abs_diff(g16.v, expect16.v) < 1e-13);

    Samples c(32, 2.5);
    CHECK(testutil::max_abs_diff(resample(c, 256).v, std::vector<double>(256, 2.5)) < 1e-14);
    CHECK(testutil::max_abs_diff(resample(c, 8).v, std::vector<double>(8, 2.5)) < 1e-14);
}

TEST_CASE("krasny_filter removes only sub-threshold modes", "[spectral]") {
    const std::size_t n = 32;
    auto f = grid_map(n, [](double a) { return std::sin(a) + 1e-13 * std::cos(4.0 * a); });
    int zeroed = 0;
    Samples g = krasny_filter(f, 1e-11, &zeroed);
    auto clean = grid_map(n, [](double a) { return std::sin(a); });
    CHECK(testutil::max_abs_diff(g.v, clean.v) < 1e-14);
    CHECK(zeroed >= 2);  // the planted pair plus whatever round-off junk was present

    // threshold below every surviving magnitude: nothing is touched
    Samples h = krasny_filter(f, 1e-18, &zeroed);
    CHECK(testutil::max_abs_diff(h.v, f.v) < 1e-15);
    CHECK(zeroed == 0);

    Samples idm = krasny_filter(f, 0.0, &zeroed);
    CHECK(testutil::max_abs_diff(idm.v, f.v) == 0.0);
    CHECK(zeroed == 0);
}

TEST_CASE("hilbert transform of pure tones", "[spectral]") {
    const std::size_t n = 64;
    for (int k = 1; k <= 5; ++k) {
        auto f = grid_map(n, [&](double a) { return std::cos(k * a); });
        auto expect = grid_map(n, [&](double a) { return std::sin(k * a); });
        CHECK(testutil::max_abs_diff(hilbert(f).v, expect.v) < 1e-13);
    }
    auto f = grid_map(n, [](double a) { return std::sin(a); });
    auto expect = grid_map(n, [](double a) { return -std::cos(a); });
    CHECK(testutil::max_abs_diff(hilbert(f).v, expect.v) < 1e-13);

    Samples c(n, 4.0);
    CHECK(testutil::max_abs(hilbert(c).v) < 1e-14);
}

TEST_CASE("hilbert twice negates the zero-mean part", "[spectral]") {
    const std::size_t n = 128;
    Samples f(testutil::random_reals(n, 11));
    Spectrum s = forward(f);
    s.at_mode(-static_cast<int>(n) / 2) = 0.0;
    f = inverse(s);
    const double mu = mean(f);
    Samples hh = hilbert(hilbert(f));
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(hh.v[j] + (f.v[j] - mu)));
    CHECK(err < 1e-12);
}

TEST_CASE("gaussian_filter", "[spectral]") {
    const std::size_t n = 64;
    const double lp = 5.0, a = 3.0;

    Samples c(n, 1.3);
    CHECK(testutil::max_abs_diff(gaussian_filter(c, a, lp).v, c.v) < 1e-14);

    // single mode picks up exactly its multiplier
    auto f = grid_map(n, [](double t) { return std::cos(t); });  // cos(2*pi*s/L_p) in s units
    const double factor = std::exp(-(kTwoPi / lp) * (kTwoPi / lp) / (4.0 * a * a));
    Samples g = gaussian_filter(f, a, lp);
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(g.v[j] - factor * f.v[j]));
    CHECK(err < 1e-14);

    // delta limit: enormous sharpness leaves any signal untouched
    Samples r(testutil::random_reals(n, 3));
    CHECK(testutil::max_abs_diff(gaussian_filter(r, 1e9, lp).v, r.v) <=
          1e-12 * testutil::max_abs(r.v));

    CHECK_THROWS_AS(gaussian_filter(r, 0.0, lp), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_filter(r, -1.0, lp), std::invalid_argument);
}

TEST_CASE("filters commute with a one-node index shift", "[spectral]") {
    const std::size_t n = 128;
    Samples f(testutil::random_reals(n, 19));

    auto shifted = [&](const Samples& x) {
        Samples y(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) y.v[j] = x.v[(j + 1) % x.size()];
        return y;
    };
    auto check_equivariant = [&](auto op) {
        Samples a = op(shifted(f));
        Samples b = shifted(op(f));
        CHECK(testutil::max_abs_diff(a.v, b.v) <= 1e-12 * std::max(1.0, testutil::max_abs(a.v)));
    };

    check_equivariant([](const Samples& x) { return hilbert(x); });
    check_equivariant([](const Samples& x) { return derivative(x); });
    check_equivariant([](const Samples& x) { return krasny_filter(x, 1e-3); });
    check_equivariant([](const Samples& x) { return gaussian_filter(x, 2.0, 7.0); });
}
