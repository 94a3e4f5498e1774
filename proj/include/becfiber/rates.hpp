#pragma once

// Dimensionless photon-rate prefactors for the two collection channels,
// the critical angle separating them, beam-waist optimization, and the
// parameter scans. Rates are reported with the time-dependent single-atom
// factor Gamma |epsilon(t)|^2 divided out:
//
//   side:     I  / (Gamma |eps|^2) = N   (sigma_A/A) xi
//   forward:  I0 / (Gamma |eps|^2) = N^2 (sigma_A/A) |xi0(theta)|^2
//
// with sigma_A/A = 24 / (k w0)^2 the ratio of the atomic radiative cross
// section to the beam cross section.

#include <optional>
#include <utility>
#include <vector>

#include "becfiber/geometry.hpp"
#include "becfiber/scan_table.hpp"

namespace becfiber {

struct ChannelRates {
    double side_prefactor = 0.0;
    double forward_prefactor = 0.0;
    double cross_section_ratio = 0.0;
    double xi = 0.0;
    double xi0_sq = 0.0;
};

ChannelRates channel_rates(const ScatterGeometry& geometry, const Tolerances& tol = {});

struct CriticalAngleResult {
    std::optional<double> theta_star;
    // true when the superradiant channel never exceeds the isotropic one
    // (N |xi0(0)|^2 <= xi); when false and theta_star is absent, the
    // forward channel dominates the whole search window.
    bool dominated_everywhere = false;
    std::pair<double, double> bracket{0.0, 0.0};
};

/// Smallest theta in (0, theta_max] with N |xi0(theta)|^2 = xi, located by a
/// coarse scan (>= 256 points) and refined by bracketed root finding. Only
/// the first crossing is reported.
CriticalAngleResult critical_angle(const ScatterGeometry& geometry,
                                   double theta_max = 0.1, const Tolerances& tol = {},
                                   std::size_t scan_points = 256);

struct OptimalWaistResult {
    double w0_bar = 0.0;
    double forward_prefactor = 0.0;
    bool at_boundary = false;  // argmax pinned to an end of w_range
};

/// argmax over w0_bar of the forward prefactor at fixed cloud, atom number
/// and angle.
OptimalWaistResult optimal_waist(const BecCloud& cloud, long long n_atoms,
                                 double theta, std::pair<double, double> w_range,
                                 const Tolerances& tol = {});

/// Rows (theta, |xi0(theta)|^2, xi/N): the two curves of the angular study.
/// Rows that fail to evaluate are recorded in the table's error list and
/// the scan continues.
ScanTable theta_scan(const ScatterGeometry& geometry,
                     const std::vector<double>& thetas, const Tolerances& tol = {});

/// Rows (n, theta_star, found); found = 0 marks atom numbers for which no
/// crossing exists in the window (theta_star cell is NaN there).
ScanTable n_sweep(const ScatterGeometry& base, const std::vector<long long>& n_values,
                  double theta_max = 0.1, const Tolerances& tol = {});

}  // namespace becfiber
