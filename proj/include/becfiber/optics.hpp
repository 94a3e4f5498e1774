#pragma once

// Domain types and pointwise evaluators for the fiber-coupled Gaussian
// mode and the condensate wavefunction, in dimensionless units: all
// lengths are measured in 1/k_d, so the drive wavenumber is 1 and the
// figure-axis quantities are sigma_bar = k_d sigma, w0_bar = k_d w0.

#include <cmath>
#include <stdexcept>

#include "becfiber/numerics.hpp"

namespace becfiber {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Fiber-coupled Gaussian mode: wavenumber k_bar (1 by default) and waist
/// w0_bar, with the usual derived quantities
///   z_R = k w0^2 / 2,  w(z) = w0 sqrt(1 + z^2/z_R^2),
///   R(z) = z + z_R^2/z,  phi_Gouy = atan(z/z_R),  q(z) = z + i z_R.
struct GaussianBeam {
    double k_bar;
    double w0_bar;

    explicit GaussianBeam(double w0, double k = 1.0) : k_bar(k), w0_bar(w0) {
        if (!(w0_bar > 0.0)) throw std::invalid_argument("GaussianBeam: waist must be positive");
        if (!(k_bar > 0.0)) throw std::invalid_argument("GaussianBeam: wavenumber must be positive");
    }

    double rayleigh_range() const { return 0.5 * k_bar * w0_bar * w0_bar; }

    double width(double z) const {
        const double zr = rayleigh_range();
        return w0_bar * std::sqrt(1.0 + (z / zr) * (z / zr));
    }

    double curvature_radius(double z) const {
        if (z == 0.0) return std::numeric_limits<double>::infinity();
        const double zr = rayleigh_range();
        return z + zr * zr / z;
    }

    double gouy_phase(double z) const { return std::atan(z / rayleigh_range()); }

    Complex beam_parameter(double z) const { return {z, rayleigh_range()}; }
};

/// Cylindrically symmetric Gaussian condensate with transverse and
/// longitudinal oscillator lengths (dimensionless).
struct BecCloud {
    double sigma_bar;
    double sigma_z_bar;

    BecCloud(double sigma, double sigma_z) : sigma_bar(sigma), sigma_z_bar(sigma_z) {
        if (!(sigma_bar > 0.0) || !(sigma_z_bar > 0.0))
            throw std::invalid_argument("BecCloud: oscillator lengths must be positive");
    }
};

/// Drive-vs-fiber scattering configuration. theta is the angle between the
/// drive wavevector and the fiber axis; k_ge_over_kd rescales the emitted
/// photon's wavenumber relative to the drive (1 for a two-photon-resonant
/// Raman process, where the emitted and drive wavenumbers coincide).
struct ScatterGeometry {
    GaussianBeam beam;
    BecCloud cloud;
    double theta = 0.0;
    long long n_atoms = 1;
    double k_ge_over_kd = 1.0;

    ScatterGeometry(GaussianBeam b, BecCloud c, double angle, long long n,
                    double k_ratio = 1.0)
        : beam(b), cloud(c), theta(angle), n_atoms(n), k_ge_over_kd(k_ratio) {
        if (!(theta >= 0.0 && theta <= M_PI))
            throw std::invalid_argument("ScatterGeometry: theta must lie in [0, pi]");
        if (n_atoms < 1)
            throw std::invalid_argument("ScatterGeometry: n_atoms must be at least 1");
        if (!(k_ge_over_kd > 0.0))
            throw std::invalid_argument("ScatterGeometry: k_ge_over_kd must be positive");
    }
};

/// Mode function f_k(r) = (z_R / q*(z)) exp(i k [z + rho^2 / (2 q*(z))]).
Complex mode_function(const GaussianBeam& beam, const Vec3& r);

/// Envelope phi_G(r) = f_k(r) e^{-ikz}.
Complex mode_envelope(const GaussianBeam& beam, const Vec3& r);

/// L2-normalized ground-state Gaussian
/// phi(r) = (2 pi)^{-3/4} sigma^{-1} sigma_z^{-1/2}
///          exp(-(x^2+y^2)/(4 sigma^2) - z^2/(4 sigma_z^2)).
double bec_wavefunction(const BecCloud& cloud, const Vec3& r);

/// Fourier transform with the convention phi~(p) = integral e^{-ip.r} phi dV:
/// (8 pi)^{3/4} sigma sigma_z^{1/2} exp(-sigma^2 (px^2+py^2) - sigma_z^2 pz^2).
double bec_momentum_wavefunction(const BecCloud& cloud, const Vec3& p);

}  // namespace becfiber
