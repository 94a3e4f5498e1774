#include "becfiber/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace becfiber {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kSqrtTwoPi = 2.5066282746310005024;

// Below this longitudinal extent the Gaussian weight acts as a delta
// function and quadrature would waste evaluations on a spike.
constexpr double kDegenerateSigmaZ = 1e-6;

GaussianBeam effective_beam(const ScatterGeometry& g) {
    return GaussianBeam(g.beam.w0_bar, g.beam.k_bar * g.k_ge_over_kd);
}

// z-independent-waist limit of xi.
double xi_waist_limit(const GaussianBeam& beam, const BecCloud& cloud) {
    const double w02 = beam.w0_bar * beam.w0_bar;
    return w02 / (cloud.sigma_bar * cloud.sigma_bar + w02);
}

}  // namespace

XiBreakdown xi(const GaussianBeam& beam, const BecCloud& cloud, const Tolerances& tol) {
    const double s2 = cloud.sigma_bar * cloud.sigma_bar;
    const double sz = cloud.sigma_z_bar;
    const double w02 = beam.w0_bar * beam.w0_bar;
    const double approx = xi_waist_limit(beam, cloud);

    if (sz < kDegenerateSigmaZ) return {approx, approx, std::nullopt, 0.0};

    const double zr = beam.rayleigh_range();
    auto integrand = [&](double z) {
        const double w2 = w02 * (1.0 + (z / zr) * (z / zr));
        return std::exp(-z * z / (2.0 * sz * sz)) / (s2 + w2);
    };
    const auto quad = integrate_adaptive(integrand, -8.0 * sz, 8.0 * sz, tol, 8);
    const double scale = w02 / (kSqrtTwoPi * sz);
    return {scale * quad.value, approx, std::nullopt, scale * quad.abs_error_estimate};
}

XiBreakdown xi(const ScatterGeometry& geometry, const Tolerances& tol) {
    return xi(effective_beam(geometry), geometry.cloud, tol);
}

Xi0Breakdown xi0_integral(const GaussianBeam& mode_beam, const BecCloud& cloud,
                          double theta, double k_drive, const Tolerances& tol) {
    const double k = mode_beam.k_bar;
    const double s2 = cloud.sigma_bar * cloud.sigma_bar;
    const double sz = cloud.sigma_z_bar;
    const double zr = mode_beam.rayleigh_range();

    const double sin_th = std::sin(theta);
    const double transverse_shift = k_drive * k_drive * sin_th * sin_th * s2;
    const double phase_rate = k_drive * std::cos(theta) - k;

    auto integrand = [&](double z) {
        const Complex q(z, zr);
        const Complex denom = q + Complex(0.0, k * s2);
        const Complex exponent = -0.5 * transverse_shift * q / denom +
                                 Complex(0.0, phase_rate * z) -
                                 z * z / (2.0 * sz * sz);
        return std::exp(exponent) / denom;
    };

    Xi0Breakdown out;
    if (sz < kDegenerateSigmaZ) {
        out.value = zr * integrand(0.0);
        out.quad_error = 0.0;
    } else {
        const double periods = std::abs(phase_rate) * 16.0 * sz / kTwoPi;
        const auto panels = static_cast<std::size_t>(
            std::clamp(std::ceil(4.0 * periods), 1.0, 4096.0));
        const auto quad = integrate_adaptive(integrand, -8.0 * sz, 8.0 * sz, tol, panels);
        const double scale = zr / (kSqrtTwoPi * sz);
        out.value = scale * quad.value;
        out.quad_error = scale * quad.abs_error_estimate;
    }
    return out;
}

Xi0Breakdown xi0(const ScatterGeometry& geometry, const Tolerances& tol) {
    const GaussianBeam beam = effective_beam(geometry);
    const double k_drive = geometry.beam.k_bar;
    Xi0Breakdown out = xi0_integral(beam, geometry.cloud, geometry.theta, k_drive, tol);
    if (geometry.theta == 0.0 && geometry.k_ge_over_kd == 1.0) {
        out.closed_form = xi0_forward_closed(beam, geometry.cloud);
        const double w02 = beam.w0_bar * beam.w0_bar;
        out.approx_magnitude =
            w02 / (2.0 * geometry.cloud.sigma_bar * geometry.cloud.sigma_bar + w02);
    }
    return out;
}

Complex xi0_forward_closed(const GaussianBeam& beam, const BecCloud& cloud) {
    const double zr = beam.rayleigh_range();
    const double sz = cloud.sigma_z_bar;
    const double a = zr + beam.k_bar * cloud.sigma_bar * cloud.sigma_bar;
    const double magnitude =
        std::sqrt(M_PI / 2.0) * (zr / sz) * erfcx(a / (std::sqrt(2.0) * sz));
    return {0.0, -magnitude};
}

double xi_brute_3d(const ScatterGeometry& geometry, int points_per_axis) {
    if (points_per_axis < 32)
        throw std::invalid_argument("xi_brute_3d: needs at least 32 points per axis");

    const GaussianBeam beam = effective_beam(geometry);
    const BecCloud& cloud = geometry.cloud;
    const double s = cloud.sigma_bar;
    const double sz = cloud.sigma_z_bar;
    const double w02 = beam.w0_bar * beam.w0_bar;
    const double zr = beam.rayleigh_range();

    const auto n = static_cast<std::size_t>(points_per_axis);
    const double dx = 16.0 * s / static_cast<double>(n);
    const double dz = 16.0 * sz / static_cast<double>(n);

    std::vector<double> x2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -8.0 * s + (static_cast<double>(i) + 0.5) * dx;
        x2[i] = x * x;
    }

    // The transverse double sum factorizes per z slab; summation order is
    // fixed (x ascending, then z ascending), so the result is deterministic.
    double acc = 0.0;
    for (std::size_t kz = 0; kz < n; ++kz) {
        const double z = -8.0 * sz + (static_cast<double>(kz) + 0.5) * dz;
        const double w2 = w02 * (1.0 + (z / zr) * (z / zr));
        const double alpha = 1.0 / (s * s) + 1.0 / w2;
        double row = 0.0;
        for (std::size_t i = 0; i < n; ++i) row += std::exp(-0.5 * alpha * x2[i]);
        acc += std::exp(-z * z / (2.0 * sz * sz)) / w2 * row * row;
    }

    const double prefactor = w02 / (std::pow(kTwoPi, 1.5) * s * s * sz);
    return prefactor * acc * dx * dx * dz;
}

}  // namespace becfiber
