#include "becfiber/rates.hpp"

#include <cmath>
#include <limits>

namespace becfiber {

namespace {

double norm_sq(const Complex& z) { return std::norm(z); }

double xi0_sq_at(const ScatterGeometry& base, double theta, const Tolerances& tol) {
    const ScatterGeometry g(base.beam, base.cloud, theta, base.n_atoms, base.k_ge_over_kd);
    return norm_sq(xi0(g, tol).value);
}

}  // namespace

ChannelRates channel_rates(const ScatterGeometry& geometry, const Tolerances& tol) {
    const double k_mode = geometry.beam.k_bar * geometry.k_ge_over_kd;
    const double kw0 = k_mode * geometry.beam.w0_bar;

    ChannelRates rates;
    rates.cross_section_ratio = 24.0 / (kw0 * kw0);
    rates.xi = xi(geometry, tol).exact;
    rates.xi0_sq = norm_sq(xi0(geometry, tol).value);

    const auto n = static_cast<double>(geometry.n_atoms);
    rates.side_prefactor = n * rates.cross_section_ratio * rates.xi;
    rates.forward_prefactor = n * n * rates.cross_section_ratio * rates.xi0_sq;
    return rates;
}

CriticalAngleResult critical_angle(const ScatterGeometry& geometry, double theta_max,
                                   const Tolerances& tol, std::size_t scan_points) {
    if (!(theta_max > 0.0 && theta_max <= M_PI / 2.0))
        throw std::invalid_argument("critical_angle: theta_max must lie in (0, pi/2]");
    scan_points = std::max<std::size_t>(scan_points, 256);

    const double xi_value = xi(geometry, tol).exact;
    const auto n = static_cast<double>(geometry.n_atoms);
    auto excess = [&](double theta) { return n * xi0_sq_at(geometry, theta, tol) - xi_value; };

    CriticalAngleResult result;
    result.bracket = {0.0, theta_max};

    if (excess(0.0) <= 0.0) {
        result.dominated_everywhere = true;
        return result;
    }

    double prev_theta = 0.0;
    for (std::size_t i = 1; i <= scan_points; ++i) {
        const double theta = theta_max * static_cast<double>(i) / static_cast<double>(scan_points);
        const double e = excess(theta);
        if (e <= 0.0) {
            result.bracket = {prev_theta, theta};
            result.theta_star = (e == 0.0) ? theta : find_root(excess, prev_theta, theta, tol);
            return result;
        }
        prev_theta = theta;
    }
    // superradiance dominates the whole window: no crossing to report
    return result;
}

OptimalWaistResult optimal_waist(const BecCloud& cloud, long long n_atoms, double theta,
                                 std::pair<double, double> w_range, const Tolerances& tol) {
    if (!(w_range.first > 0.0 && w_range.first < w_range.second))
        throw std::invalid_argument("optimal_waist: invalid waist range");
    if (n_atoms < 1) throw std::invalid_argument("optimal_waist: n_atoms must be at least 1");

    auto forward = [&](double w0) {
        const ScatterGeometry g(GaussianBeam(w0), cloud, theta, n_atoms);
        return channel_rates(g, tol).forward_prefactor;
    };
    const MaximizeResult peak = maximize_1d(forward, w_range.first, w_range.second, tol);
    return {peak.argmax, peak.max_value, peak.at_boundary};
}

ScanTable theta_scan(const ScatterGeometry& geometry, const std::vector<double>& thetas,
                     const Tolerances& tol) {
    if (thetas.empty()) throw std::invalid_argument("theta_scan: empty angle list");
    for (double theta : thetas)
        if (!(theta >= 0.0 && theta <= M_PI))
            throw std::invalid_argument("theta_scan: angles must lie in [0, pi]");

    ScanTable table;
    table.columns = {"theta", "xi0_sq", "xi_over_n"};

    const double xi_value = xi(geometry, tol).exact;
    const double xi_over_n = xi_value / static_cast<double>(geometry.n_atoms);
    double max_quad_error = 0.0;

    for (std::size_t i = 0; i < thetas.size(); ++i) {
        try {
            const ScatterGeometry g(geometry.beam, geometry.cloud, thetas[i],
                                    geometry.n_atoms, geometry.k_ge_over_kd);
            const Xi0Breakdown fwd = xi0(g, tol);
            max_quad_error = std::max(max_quad_error, fwd.quad_error);
            table.rows.push_back({thetas[i], norm_sq(fwd.value), xi_over_n});
        } catch (const std::exception& e) {
            table.rows.push_back({thetas[i], std::numeric_limits<double>::quiet_NaN(),
                                  xi_over_n});
            table.errors.push_back({i, e.what()});
        }
    }
    table.metadata.emplace_back("xi0_max_quad_error", format_number(max_quad_error));
    return table;
}

ScanTable n_sweep(const ScatterGeometry& base, const std::vector<long long>& n_values,
                  double theta_max, const Tolerances& tol) {
    if (n_values.empty()) throw std::invalid_argument("n_sweep: empty atom-number list");
    for (long long n : n_values)
        if (n < 1) throw std::invalid_argument("n_sweep: atom numbers must be at least 1");

    ScanTable table;
    table.columns = {"n", "theta_star", "found"};
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        try {
            const ScatterGeometry g(base.beam, base.cloud, base.theta, n_values[i],
                                    base.k_ge_over_kd);
            const CriticalAngleResult res = critical_angle(g, theta_max, tol);
            if (res.theta_star) {
                table.rows.push_back({static_cast<double>(n_values[i]), *res.theta_star, 1.0});
            } else {
                table.rows.push_back({static_cast<double>(n_values[i]),
                                      std::numeric_limits<double>::quiet_NaN(), 0.0});
            }
        } catch (const std::exception& e) {
            table.rows.push_back({static_cast<double>(n_values[i]),
                                  std::numeric_limits<double>::quiet_NaN(), 0.0});
            table.errors.push_back({i, e.what()});
        }
    }
    return table;
}

}  // namespace becfiber
