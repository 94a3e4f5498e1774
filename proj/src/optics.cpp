#include "becfiber/optics.hpp"

namespace becfiber {

Complex mode_function(const GaussianBeam& beam, const Vec3& r) {
    const double zr = beam.rayleigh_range();
    const Complex q_conj(r.z, -zr);
    const Complex inv_q = 1.0 / q_conj;
    const double rho2 = r.x * r.x + r.y * r.y;
    const Complex phase = Complex(0.0, beam.k_bar) * (r.z + 0.5 * rho2 * inv_q);
    return zr * inv_q * std::exp(phase);
}

Complex mode_envelope(const GaussianBeam& beam, const Vec3& r) {
    const double zr = beam.rayleigh_range();
    const Complex q_conj(r.z, -zr);
    const Complex inv_q = 1.0 / q_conj;
    const double rho2 = r.x * r.x + r.y * r.y;
    return zr * inv_q * std::exp(Complex(0.0, beam.k_bar) * (0.5 * rho2 * inv_q));
}

double bec_wavefunction(const BecCloud& cloud, const Vec3& r) {
    const double s = cloud.sigma_bar;
    const double sz = cloud.sigma_z_bar;
    const double norm = std::pow(2.0 * M_PI, -0.75) / (s * std::sqrt(sz));
    return norm * std::exp(-(r.x * r.x + r.y * r.y) / (4.0 * s * s) -
                           r.z * r.z / (4.0 * sz * sz));
}

double bec_momentum_wavefunction(const BecCloud& cloud, const Vec3& p) {
    const double s = cloud.sigma_bar;
    const double sz = cloud.sigma_z_bar;
    const double norm = std::pow(8.0 * M_PI, 0.75) * s * std::sqrt(sz);
    return norm * std::exp(-s * s * (p.x * p.x + p.y * p.y) - sz * sz * p.z * p.z);
}

}  // namespace becfiber
