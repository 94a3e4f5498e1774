#pragma once

// Geometric overlap factors for the two photon collection channels:
//
//   xi      side scattering (condensate absorbs the recoil), xi <= 1,
//           independent of the drive angle and of the atom number;
//   xi0     forward / superradiant scattering (condensate returns to its
//           ground state), complex and angle-dependent.
//
// Both are evaluated from their 1D-reduced integrals over the condensate's
// long axis, with an exact erfcx closed form at theta = 0 and a midpoint
// tensor-grid oracle for the full 3D xi integral.

#include <optional>

#include "becfiber/numerics.hpp"
#include "becfiber/optics.hpp"

namespace becfiber {

struct XiBreakdown {
    double exact = 0.0;                 // 1D quadrature of the reduced integral
    double approx = 0.0;                // w0^2/(sigma^2 + w0^2) limit
    std::optional<double> brute;        // 3D tensor-grid value, when requested
    double quad_error = 0.0;
};

struct Xi0Breakdown {
    Complex value{};                    // 1D complex quadrature
    std::optional<Complex> closed_form; // theta = 0 only
    std::optional<double> approx_magnitude;  // w0^2/(2 sigma^2 + w0^2), theta = 0
    double quad_error = 0.0;
};

/// Side-scattering factor
///   xi = w0^2 / (sqrt(2 pi) sigma_z) * integral dz e^{-z^2/(2 sigma_z^2)}
///        / (sigma^2 + w(z)^2)
/// over +-8 sigma_z. Collapses to the analytic z = 0 value for degenerate
/// longitudinal extents (sigma_z < 1e-6).
XiBreakdown xi(const GaussianBeam& beam, const BecCloud& cloud,
               const Tolerances& tol = {});

/// Same, reading only the beam and cloud out of the geometry; theta and
/// n_atoms play no role here.
XiBreakdown xi(const ScatterGeometry& geometry, const Tolerances& tol = {});

/// Raw forward-factor integrand, reduced to 1D:
///   xi0(theta) = z_R / (sqrt(2 pi) sigma_z) * integral dz
///     exp[ -(k_d sin th)^2 sigma^2 q / (2 (q + i k sigma^2))
///          + i (k_d cos th - k) z - z^2/(2 sigma_z^2) ] / (q + i k sigma^2)
/// with q = z + i z_R, k the mode wavenumber and k_d the drive wavenumber.
/// The formula depends on theta only through sin^2 and cos, so it is even
/// in theta by construction. Oscillation-aware: the integration interval is
/// pre-subdivided with >= 4 panels per period of the z phase term.
Xi0Breakdown xi0_integral(const GaussianBeam& mode_beam, const BecCloud& cloud,
                          double theta, double k_drive, const Tolerances& tol = {});

/// Forward factor for the geometry's angle, atom-independent. When theta = 0
/// and the wavenumbers match, the erfcx closed form and the small-sigma_z
/// magnitude limit are also populated.
Xi0Breakdown xi0(const ScatterGeometry& geometry, const Tolerances& tol = {});

/// Exact theta = 0 value,
///   -i sqrt(pi/2) (z_R/sigma_z) erfcx((z_R + k sigma^2)/(sqrt(2) sigma_z)),
/// with the exploding exponential absorbed into erfcx.
Complex xi0_forward_closed(const GaussianBeam& beam, const BecCloud& cloud);

/// Midpoint tensor-grid evaluation of the 3D xi integrand over
/// [-8 sigma, 8 sigma]^2 x [-8 sigma_z, 8 sigma_z]. Deterministic: fixed
/// summation order, independent of threading. points_per_axis >= 32.
double xi_brute_3d(const ScatterGeometry& geometry, int points_per_axis);

}  // namespace becfiber
