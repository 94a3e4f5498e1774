#include <doctest.h>

#include <cmath>

#include "becfiber/geometry.hpp"
#include "oracles.hpp"

using becfiber::BecCloud;
using becfiber::Complex;
using becfiber::GaussianBeam;
using becfiber::ScatterGeometry;
using becfiber::Tolerances;

namespace {

// |xi0(theta = 0.02)|^2 at sigma = 50, sigma_z = 100, w0 = sqrt(2) 50,
// from a 30-digit evaluation of the reduced integral done before the build.
constexpr double kXi0Sq002 = 0.151548153661454;
constexpr double kXiReference = 0.665957819064572;

ScatterGeometry reference_geometry(double theta = 0.0, long long n = 1) {
    return {GaussianBeam(std::sqrt(2.0) * 50.0), BecCloud(50.0, 100.0), theta, n};
}

}  // namespace

TEST_CASE("xi reproduces the 2/3 limit at the reference geometry") {
    const auto result = becfiber::xi(reference_geometry());
    CHECK(std::abs(result.exact - 2.0 / 3.0) < 0.002 * (2.0 / 3.0));
    CHECK(std::abs(result.exact - kXiReference) < 1e-9 * kXiReference);
    CHECK(result.approx == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(result.exact > 0.0);
    CHECK(result.exact <= 1.0);
    CHECK(result.quad_error >= 0.0);
}

TEST_CASE("xi approaches 1 for a point condensate at the focus") {
    const ScatterGeometry point(GaussianBeam(10.0), BecCloud(1e-3, 1e-3), 0.0, 1);
    CHECK(std::abs(becfiber::xi(point).exact - 1.0) < 1e-5);
}

TEST_CASE("xi never reads theta or the atom number") {
    const auto base = becfiber::xi(reference_geometry(0.0, 1));
    const auto other = becfiber::xi(reference_geometry(0.7, 9999));
    CHECK(base.exact == other.exact);  // bitwise
    CHECK(base.quad_error == other.quad_error);
}

TEST_CASE("xi waist-limit approximation is monotone in the waist") {
    const BecCloud cloud(50.0, 100.0);
    double prev = 0.0;
    for (double w0 : {20.0, 40.0, 70.0, 120.0, 300.0}) {
        const double approx = becfiber::xi(GaussianBeam(w0), cloud).approx;
        CHECK(approx > prev);
        prev = approx;
    }
}

TEST_CASE("xi collapses degenerate longitudinal extents analytically") {
    const GaussianBeam beam(10.0);
    const auto result = becfiber::xi(beam, BecCloud(4.0, 1e-8));
    CHECK(result.exact == result.approx);
    CHECK(result.quad_error == 0.0);
}

TEST_CASE("xi0 theta = 0 reproduces the 1/4 limit with its closed form") {
    const auto result = becfiber::xi0(reference_geometry());
    const double sq = std::norm(result.value);
    CHECK(std::abs(sq - 0.25) < 0.01 * 0.25);

    REQUIRE(result.closed_form.has_value());
    CHECK(std::abs(std::abs(*result.closed_form) - std::abs(result.value)) <
          1e-8 * std::abs(result.value));
    REQUIRE(result.approx_magnitude.has_value());
    CHECK(*result.approx_magnitude == doctest::Approx(0.5).epsilon(1e-12));

    // phase sits at -pi/2 for sigma_z much below the Rayleigh range
    CHECK(std::abs(std::arg(result.value) + M_PI_2) < 0.05);
}

TEST_CASE("xi0 collapses to -i w0^2/(w0^2 + 2 sigma^2) as sigma_z -> 0") {
    const ScatterGeometry thin(GaussianBeam(std::sqrt(2.0) * 50.0), BecCloud(50.0, 1e-3),
                               0.0, 1);
    const Complex value = becfiber::xi0(thin).value;
    CHECK(std::abs(value - Complex(0.0, -0.5)) < 1e-6);
}

TEST_CASE("xi0 at theta = 0.02 against the dense trapezoid oracle") {
    const auto result = becfiber::xi0(reference_geometry(0.02));
    CHECK(std::abs(std::norm(result.value) - kXi0Sq002) < 1e-9);

    // same reduced integrand, dense composite trapezoid
    const double zr = 2500.0, s2 = 2500.0, sz = 100.0;
    const double sin2 = std::sin(0.02) * std::sin(0.02);
    const double cos_m1 = std::cos(0.02) - 1.0;
    auto integrand = [&](double z) {
        const Complex q(z, zr);
        const Complex denom = q + Complex(0.0, s2);
        return std::exp(-0.5 * sin2 * s2 * q / denom + Complex(0.0, cos_m1 * z) -
                        z * z / (2.0 * sz * sz)) /
               denom;
    };
    const Complex dense = oracles::trapezoid(integrand, -8.0 * sz, 8.0 * sz, 1'000'000) * zr /
                          (std::sqrt(2.0 * M_PI) * sz);
    CHECK(std::abs(result.value - dense) < 1e-6 * std::abs(dense));
}

TEST_CASE("xi0 formula is even in theta") {
    const GaussianBeam beam(std::sqrt(2.0) * 50.0);
    const BecCloud cloud(50.0, 100.0);
    const Complex plus = becfiber::xi0_integral(beam, cloud, 0.05, 1.0).value;
    const Complex minus = becfiber::xi0_integral(beam, cloud, -0.05, 1.0).value;
    CHECK(std::abs(plus - minus) < 1e-14);
}

TEST_CASE("closed form tracks quadrature over the (sigma, sigma_z) grid") {
    for (double s : {10.0, 44.7, 200.0}) {
        for (double sz : {10.0, 223.6, 5000.0}) {
            CAPTURE(s);
            CAPTURE(sz);
            const GaussianBeam beam(std::sqrt(2.0) * s);
            const BecCloud cloud(s, sz);
            const double numeric =
                std::abs(becfiber::xi0(ScatterGeometry(beam, cloud, 0.0, 1)).value);
            const double closed = std::abs(becfiber::xi0_forward_closed(beam, cloud));
            CHECK(std::abs(numeric - closed) < 1e-8 * closed);
        }
    }
}

TEST_CASE("closed form reaches the w0^2/(2 sigma^2 + w0^2) limit") {
    const double s = 50.0;
    const GaussianBeam beam(std::sqrt(2.0) * s);
    // sigma_z / z_R = 1e-3
    const BecCloud cloud(s, 1e-3 * beam.rayleigh_range());
    const double magnitude = std::abs(becfiber::xi0_forward_closed(beam, cloud));
    const double w02 = beam.w0_bar * beam.w0_bar;
    CHECK(std::abs(magnitude - w02 / (2.0 * s * s + w02)) < 1e-5);
    CHECK(magnitude == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("3D tensor-grid oracle agrees with the reduced xi") {
    // sigma_z twice the Rayleigh range
    const ScatterGeometry elongated(GaussianBeam(std::sqrt(2.0) * 50.0),
                                    BecCloud(50.0, 5000.0), 0.0, 1);
    const double exact = becfiber::xi(elongated).exact;
    const double brute = becfiber::xi_brute_3d(elongated, 256);
    CHECK(std::abs(brute - exact) < 1e-4 * exact);

    const double reference = becfiber::xi_brute_3d(reference_geometry(), 256);
    CHECK(std::abs(reference - kXiReference) < 1e-4 * kXiReference);
}

TEST_CASE("3D oracle converges at second order or better") {
    // small Rayleigh range makes the coarse grids actually under-resolved
    const ScatterGeometry geometry(GaussianBeam(1.0), BecCloud(1.0, 1.0), 0.0, 1);
    const double exact = becfiber::xi(geometry).exact;
    const double err32 = std::abs(becfiber::xi_brute_3d(geometry, 32) - exact);
    const double err64 = std::abs(becfiber::xi_brute_3d(geometry, 64) - exact);
    CHECK((err64 <= err32 / 4.0 || err64 < 1e-10 * exact));
}

TEST_CASE("3D oracle sits inside the hand-separated sandwich bounds") {
    // frozen-waist surrogate separates into three 1D Gaussians and gives
    // w0^2/(sigma^2 + w0^2) = 1/2; the true value is below it since
    // w(z) >= w0, and above the |z| <= sigma_z slice where w^2 <= 5 w0^2
    const ScatterGeometry unit(GaussianBeam(1.0), BecCloud(1.0, 1.0), 0.0, 1);
    const double brute = becfiber::xi_brute_3d(unit, 128);
    CHECK(brute <= 0.5 + 1e-6);
    CHECK(brute >= 0.6827 / 6.0 - 1e-6);
}

TEST_CASE("3D oracle validates its arguments") {
    CHECK_THROWS_AS(becfiber::xi_brute_3d(reference_geometry(), 16), std::invalid_argument);
}

TEST_CASE("exact xi meets its waist-limit within 0.5% when sigma_z << z_R") {
    // sigma_z / z_R = 0.04 at the reference geometry
    const auto result = becfiber::xi(reference_geometry());
    CHECK(std::abs(result.exact - result.approx) < 0.005 * result.approx);
}

TEST_CASE("|xi0| never exceeds 1") {
    for (double s : {5.0, 50.0, 120.0}) {
        for (double sz : {10.0, 400.0, 2.0e4}) {
            for (double theta : {0.0, 0.03, 0.4}) {
                const ScatterGeometry g(GaussianBeam(std::sqrt(2.0) * s), BecCloud(s, sz),
                                        theta, 1);
                CHECK(std::abs(becfiber::xi0(g).value) <= 1.0);
            }
        }
    }
}
