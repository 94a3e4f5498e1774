#include "becfiber/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "becfiber/geometry.hpp"
#include "becfiber/pulses.hpp"
#include "becfiber/rates.hpp"

namespace becfiber {

namespace {

constexpr double kSigma = 50.0;
constexpr double kSigmaZ = 100.0;

GaussianBeam reference_beam() { return GaussianBeam(std::sqrt(2.0) * kSigma); }

ScatterGeometry reference_geometry(long long n_atoms, double theta = 0.0) {
    return {reference_beam(), BecCloud(kSigma, kSigmaZ), theta, n_atoms};
}

struct Failure {
    std::string message;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw Failure{message};
}

std::string num(double v) {
    std::ostringstream out;
    out.precision(10);
    out << v;
    return out.str();
}

// --- the individual suites ------------------------------------------------

// limit values xi -> 2/3, |xi0(0)|^2 -> 1/4 for w0 = sqrt(2) sigma and
// sigma_z well below the Rayleigh range
std::string check_limit_values() {
    const auto geometry = reference_geometry(10);
    const double xi_exact = xi(geometry).exact;
    const double xi0_sq = std::norm(xi0(geometry).value);
    require(std::abs(xi_exact - 2.0 / 3.0) <= 0.005 * (2.0 / 3.0),
            "xi = " + num(xi_exact) + " deviates from 2/3 by more than 0.5%");
    require(std::abs(xi0_sq - 0.25) <= 0.01 * 0.25,
            "|xi0(0)|^2 = " + num(xi0_sq) + " deviates from 1/4 by more than 1%");
    return "xi = " + num(xi_exact) + ", |xi0(0)|^2 = " + num(xi0_sq);
}

// erfcx closed form against quadrature on a 5x5 (sigma, sigma_z) grid
std::string check_closed_form_grid() {
    const double sigmas[] = {10.0, 21.1, 44.7, 94.6, 200.0};
    const double sigma_zs[] = {10.0, 47.3, 223.6, 1057.4, 5000.0};
    double worst = 0.0;
    for (double s : sigmas) {
        for (double sz : sigma_zs) {
            const GaussianBeam beam(std::sqrt(2.0) * s);
            const BecCloud cloud(s, sz);
            const ScatterGeometry geometry(beam, cloud, 0.0, 1);
            const double numeric = std::abs(xi0(geometry).value);
            const double closed = std::abs(xi0_forward_closed(beam, cloud));
            worst = std::max(worst, std::abs(numeric - closed) / closed);
        }
    }
    require(worst <= 1e-8, "worst closed-form deviation " + num(worst) + " > 1e-8");
    return "worst relative deviation " + num(worst) + " over the 5x5 grid";
}

// 3D tensor-grid oracle against the 1D-reduced xi
std::string check_brute_equivalence() {
    struct Geometry {
        double sigma, sigma_z, w0;
    };
    // sigma_z/z_R = 0.04, 1 and 2
    const Geometry geometries[] = {{50.0, 100.0, std::sqrt(2.0) * 50.0},
                                   {20.0, 400.0, std::sqrt(2.0) * 20.0},
                                   {50.0, 5000.0, std::sqrt(2.0) * 50.0}};
    double worst = 0.0;
    for (const auto& g : geometries) {
        const ScatterGeometry geometry(GaussianBeam(g.w0), BecCloud(g.sigma, g.sigma_z), 0.0, 1);
        const double exact = xi(geometry).exact;
        const double brute = xi_brute_3d(geometry, 256);
        worst = std::max(worst, std::abs(brute - exact) / exact);
    }
    require(worst <= 1e-4, "worst 3D-vs-1D deviation " + num(worst) + " > 1e-4");
    return "worst relative deviation " + num(worst) + " across 3 geometries";
}

std::string check_optimal_waist() {
    const auto best = optimal_waist(BecCloud(kSigma, kSigmaZ), 1, 0.0, {10.0, 250.0});
    const double ratio = best.w0_bar / (std::sqrt(2.0) * kSigma);
    require(std::abs(ratio - 1.0) <= 0.005,
            "w0/(sqrt(2) sigma) = " + num(ratio) + " off by more than 0.5%");
    require(!best.at_boundary, "optimum unexpectedly pinned to the range boundary");
    return "w0/(sqrt(2) sigma) = " + num(ratio);
}

// theta*(N) exists and strictly increases for N = 10..10^4; N = 2 never
// crosses (2/4 < 2/3)
std::string check_critical_angle_trend() {
    const auto dominated = critical_angle(reference_geometry(2));
    require(dominated.dominated_everywhere && !dominated.theta_star,
            "N = 2 should be dominated by the isotropic channel");
    double previous = 0.0;
    std::string stars;
    for (long long n : {10LL, 100LL, 1000LL, 10000LL}) {
        const auto res = critical_angle(reference_geometry(n));
        require(res.theta_star.has_value(), "theta* missing for N = " + std::to_string(n));
        require(*res.theta_star > previous,
                "theta*(N) not strictly increasing at N = " + std::to_string(n));
        previous = *res.theta_star;
        stars += (stars.empty() ? "" : ", ") + num(*res.theta_star);
    }
    return "theta* = {" + stars + "}";
}

// argmax of |xi0(theta)|^2: at 0 for a short cloud, displaced for a
// strongly elongated one (sigma_z >= 2 z_R)
std::string check_angular_maximum() {
    const std::size_t points = 512;
    auto scan_argmax = [&](double sigma_z) {
        const ScatterGeometry geometry(reference_beam(), BecCloud(kSigma, sigma_z), 0.0, 10);
        std::vector<double> thetas(points);
        for (std::size_t i = 0; i < points; ++i)
            thetas[i] = 0.1 * static_cast<double>(i) / static_cast<double>(points - 1);
        const ScanTable table = theta_scan(geometry, thetas);
        std::size_t best = 0;
        for (std::size_t i = 1; i < table.rows.size(); ++i)
            if (table.rows[i][1] > table.rows[best][1]) best = i;
        return table.rows[best][0];
    };
    const double short_cloud = scan_argmax(kSigmaZ);
    require(short_cloud == 0.0, "short-cloud argmax " + num(short_cloud) + " != 0");
    const double elongated = scan_argmax(2.0e4);
    require(elongated > 0.0, "elongated-cloud argmax not displaced from 0");
    return "argmax(theta) = 0 (short), " + num(elongated) + " (elongated)";
}

// side prefactor linear in N and independent of theta; forward quadratic
std::string check_scaling_laws() {
    const auto base = channel_rates(reference_geometry(7));
    const auto doubled = channel_rates(reference_geometry(14));
    require(std::abs(doubled.side_prefactor - 2.0 * base.side_prefactor) <=
                1e-12 * doubled.side_prefactor,
            "side prefactor not linear in N");
    require(std::abs(doubled.forward_prefactor - 4.0 * base.forward_prefactor) <=
                1e-12 * doubled.forward_prefactor,
            "forward prefactor not quadratic in N");
    const double side0 = channel_rates(reference_geometry(7, 0.0)).side_prefactor;
    for (double theta : {0.3, 1.0}) {
        const double side = channel_rates(reference_geometry(7, theta)).side_prefactor;
        require(side == side0, "side prefactor depends on theta = " + num(theta));
    }
    return "linear/quadratic N scaling, theta-independent side channel";
}

std::string check_pulse_amplitude() {
    std::vector<double> times(257);
    for (std::size_t i = 0; i < times.size(); ++i)
        times[i] = 4.0 * static_cast<double>(i) / static_cast<double>(times.size() - 1);
    const auto trace =
        epsilon_amplitude(PulseEnvelope::constant(), PulseEnvelope::constant(), times);
    for (double t : {1.0, 2.0, 4.0}) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < times.size(); ++i)
            if (times[i] <= t) idx = i;
        const double expected = -0.5 * t * t;
        require(std::abs(trace.epsilon[idx].real() - expected) <= 1e-10,
                "epsilon(" + num(t) + ") != -t^2/2");
    }

    // order-2 grid refinement on smooth envelopes
    const auto drive = PulseEnvelope::gaussian(1.0, 0.35);
    const auto readout = PulseEnvelope::gaussian(1.5, 0.5);
    auto final_epsilon = [&](std::size_t steps) {
        std::vector<double> grid(steps + 1);
        for (std::size_t i = 0; i <= steps; ++i)
            grid[i] = 3.0 * static_cast<double>(i) / static_cast<double>(steps);
        return epsilon_amplitude(drive, readout, grid).epsilon.back().real();
    };
    const double reference = final_epsilon(1 << 14);
    const double error_h = std::abs(final_epsilon(64) - reference);
    const double error_h2 = std::abs(final_epsilon(128) - reference);
    const double order = std::log2(error_h / error_h2);
    require(order >= 1.9, "observed convergence order " + num(order) + " below 2");
    return "constant-envelope values exact to 1e-10, refinement order " + num(order);
}

}  // namespace

std::vector<CheckResult> run_selfcheck() {
    struct Suite {
        int id;
        const char* name;
        std::function<std::string()> run;
    };
    const Suite suites[] = {
        {1, "limit-values", check_limit_values},
        {2, "closed-form-vs-quadrature", check_closed_form_grid},
        {3, "oracle-equivalence-3d", check_brute_equivalence},
        {4, "optimal-waist", check_optimal_waist},
        {5, "critical-angle-trend", check_critical_angle_trend},
        {6, "angular-maximum", check_angular_maximum},
        {7, "scaling-laws", check_scaling_laws},
        {8, "pulse-amplitude", check_pulse_amplitude},
    };

    std::vector<CheckResult> results;
    for (const auto& suite : suites) {
        CheckResult result;
        result.id = suite.id;
        result.name = suite.name;
        const auto start = std::chrono::steady_clock::now();
        try {
            result.detail = suite.run();
            result.passed = true;
        } catch (const Failure& failure) {
            result.detail = failure.message;
        } catch (const std::exception& e) {
            result.detail = std::string("unexpected error: ") + e.what();
        }
        result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(result));
    }
    return results;
}

}  // namespace becfiber
