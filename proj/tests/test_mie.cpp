#include <doctest.h>

#include <cmath>

#include "fflab/analyticity.hpp"
#include "fflab/bessel.hpp"
#include "fflab/errors.hpp"
#include "fflab/farfield.hpp"
#include "fflab/mie.hpp"
#include "fflab/types.hpp"

using namespace fflab;

namespace {

// continuum Born far field of the disc: c_2 k^2 q0 * integral of the phase
// over the disc, with the radial integral in closed form.
cplx born_disc_far_field(double R, cplx q0, double k, double angle_obs, double angle_inc) {
    const double bx = k * (std::cos(angle_inc) - std::cos(angle_obs));
    const double by = k * (std::sin(angle_inc) - std::sin(angle_obs));
    const double b = std::hypot(bx, by);
    const double integral = b < 1e-12 ? pi * R * R : 2.0 * pi * R * bessel_j(1, b * R) / b;
    return far_field_constant(2, Wavenumber(k)) * k * k * q0 * integral;
}

// the same integral by brute tensor quadrature, to pin the closed form
cplx born_disc_integral_quadrature(double R, double bx, double by) {
    const int n = 2400;
    const double h = 2.0 * R / n;
    cplx acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = -R + (i + 0.5) * h;
            const double y = -R + (j + 0.5) * h;
            if (x * x + y * y >= R * R) continue;
            const double phase = bx * x + by * y;
            acc += cplx(std::cos(phase), std::sin(phase));
        }
    }
    return acc * h * h;
}

} // namespace

TEST_SUITE("mie") {

TEST_CASE("no contrast means no scattering") {
    const auto s = mie_build(1.0, cplx(1.0, 0.0), Wavenumber(2.0));
    for (const cplx b : s.scattered) CHECK(std::abs(b) < 1e-13);
    // near field equals the incident plane wave
    const UnitDirection theta = UnitDirection::from_angle(0.7);
    for (const Vec2 p : {Vec2{0.3, 0.2}, Vec2{1.5, -0.4}, Vec2{0.0, 0.0}}) {
        const double phase = 2.0 * (p[0] * theta[0] + p[1] * theta[1]);
        CHECK(std::abs(mie_near_field(s, p, theta) - cplx(std::cos(phase), std::sin(phase))) < 1e-12);
    }
}

TEST_CASE("matching conditions hold per mode") {
    for (const cplx n0 : {cplx(1.5, 0.0), cplx(1.3, 0.4), cplx(2.2, 0.0)}) {
        const auto s = mie_build(1.0, n0, Wavenumber(2.0));
        CHECK(s.max_matching_residual < 1e-12);
        CHECK(s.truncation < 60);
    }
}

TEST_CASE("low frequency: the monopole dominates") {
    const auto ratio = [](double k) {
        const auto s = mie_build(1.0, cplx(1.5, 0.0), Wavenumber(k));
        return std::abs(s.scattered[1]) / std::abs(s.scattered[0]);
    };
    const double r_small = ratio(0.05);
    const double r_big = ratio(0.1);
    CHECK(r_small < r_big);
    CHECK(r_small < 0.05);
}

TEST_CASE("far field depends only on the relative angle") {
    const auto s = mie_build(1.0, cplx(1.5, 0.0), Wavenumber(2.0));
    const double a = 0.83, b = 2.31;
    const cplx base = mie_far_field(s, UnitDirection::from_angle(a), UnitDirection::from_angle(b));
    for (const double shift : {0.5, 1.9, 4.4}) {
        const cplx rotated = mie_far_field(s, UnitDirection::from_angle(a + shift),
                                           UnitDirection::from_angle(b + shift));
        CHECK(std::abs(rotated - base) < 1e-14 * std::max(1.0, std::abs(base)));
    }
}

TEST_CASE("total field is continuous across the rim") {
    const auto s = mie_build(1.0, cplx(1.5, 0.3), Wavenumber(2.0));
    const UnitDirection theta = UnitDirection::from_angle(1.1);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double phi = 2.0 * pi * i / 100.0;
        const Vec2 inside{(1.0 - 1e-13) * std::cos(phi), (1.0 - 1e-13) * std::sin(phi)};
        const Vec2 outside{(1.0 + 1e-13) * std::cos(phi), (1.0 + 1e-13) * std::sin(phi)};
        worst = std::max(worst,
                         std::abs(mie_near_field(s, inside, theta) - mie_near_field(s, outside, theta)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("normalization lock: weak contrast matches the continuum Born integral") {
    const double k = 2.0, R = 1.0;
    const cplx q0(1e-3, 0.0);
    const auto s = mie_build(R, 1.0 + q0, Wavenumber(k));
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double a = 2.0 * pi * i / 16.0;
        const cplx mie = mie_far_field(s, UnitDirection::from_angle(a), UnitDirection::from_angle(0.0));
        const cplx born = born_disc_far_field(R, q0, k, a, 0.0);
        num += std::norm(mie - born);
        den += std::norm(born);
    }
    CHECK(std::sqrt(num / den) <= 2e-3);

    // and the closed-form radial integral agrees with brute quadrature
    for (const double a : {0.9, 2.7}) {
        const double bx = k * (1.0 - std::cos(a)), by = k * (0.0 - std::sin(a));
        const double b = std::hypot(bx, by);
        const cplx closed = 2.0 * pi * R * bessel_j(1, b * R) / b;
        const cplx brute = born_disc_integral_quadrature(R, bx, by);
        CHECK(std::abs(closed - brute) < 1e-4 * std::abs(closed));
    }
}

TEST_CASE("oracle far field feeds the analyticity pipeline (difference-angle structure)") {
    const auto s = mie_build(1.0, cplx(1.5, 0.0), Wavenumber(6.0));
    const int n = 40;
    TorusSamples samples{n, Eigen::MatrixXcd(n, n), Wavenumber(6.0)};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            samples.values(i, j) = mie_far_field(s, UnitDirection::from_angle(2.0 * pi * i / n),
                                                 UnitDirection::from_angle(2.0 * pi * j / n));
        }
    }
    const auto report = fourier_decay(samples, 1e-15);
    CHECK(report.tau > 0.0);
    // a function of (alpha - beta) only: coefficients live on m + n = 0
    double off = 0.0, max_mag = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int m = FourierDecayReport::frequency(i, n);
            const int l = FourierDecayReport::frequency(j, n);
            const double mag = std::abs(report.coefficients(i, j));
            max_mag = std::max(max_mag, mag);
            if (m + l != 0) off = std::max(off, mag);
        }
    }
    CHECK(off < 1e-12 * max_mag);
}

TEST_CASE("mode cap failure is reported") {
    CHECK_THROWS_AS(mie_build(150.0, cplx(1.5, 0.0), Wavenumber(2.0)), NonconvergenceError);
    CHECK_THROWS_AS(mie_build(-1.0, cplx(1.5, 0.0), Wavenumber(2.0)), ValueError);
    CHECK_THROWS_AS(mie_build(1.0, cplx(-0.5, 0.0), Wavenumber(2.0)), ValueError);
}

} // TEST_SUITE
