// becfiber CLI: fiber collection efficiency of optical photons scattered
// out of a microwave-excited condensate. Subcommands cover the geometric
// factors (xi, xi0), the angular and atom-number scans, the critical angle,
// waist optimization, the perturbative pulse amplitude, and a built-in
// selfcheck suite.
//
// Exit status: 0 success, 1 usage error, 2 numerical non-convergence,
// 3 partial scan failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "becfiber/geometry.hpp"
#include "becfiber/pulses.hpp"
#include "becfiber/rates.hpp"
#include "becfiber/scan_table.hpp"
#include "becfiber/selfcheck.hpp"
#include "becfiber/version.hpp"

namespace {

using namespace becfiber;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitPartial = 3;

struct Options {
    double sigma = 50.0;
    double sigma_z = 100.0;
    std::optional<double> waist;  // defaults to sqrt(2) sigma
    long long n_atoms = 10;
    std::vector<long long> n_list;
    double theta = 0.0;
    double theta_min = 0.0;
    double theta_max = 0.06;
    long long theta_steps = 200;
    double window = 0.1;  // critical-angle search window
    double w_min = 0.0, w_max = 0.0;
    long long brute_points = 0;
    double tol_abs = 1e-12;
    double tol_rel = 1e-10;
    std::string out;
    std::string format = "csv";
    bool plot = false;
    bool degrees = false;
    std::optional<double> wavelength;

    std::string drive_spec = "const:1";
    std::string readout_spec = "const:1";
    double t_max = 1.0;
    long long steps = 256;

    double length_scale() const {  // user lengths -> dimensionless (k_d = 1)
        return wavelength ? 2.0 * M_PI / *wavelength : 1.0;
    }
    double angle_scale() const { return degrees ? M_PI / 180.0 : 1.0; }

    double sigma_bar() const { return sigma * length_scale(); }
    double sigma_z_bar() const { return sigma_z * length_scale(); }
    double w0_bar() const {
        return waist ? *waist * length_scale() : std::sqrt(2.0) * sigma_bar();
    }
    double theta_rad() const { return theta * angle_scale(); }

    Tolerances tolerances() const { return {tol_abs, tol_rel, 1'000'000}; }

    BecCloud cloud() const { return {sigma_bar(), sigma_z_bar()}; }
    ScatterGeometry geometry(std::optional<long long> n = std::nullopt,
                             std::optional<double> angle = std::nullopt) const {
        return {GaussianBeam(w0_bar()), cloud(), angle.value_or(theta_rad()),
                n.value_or(n_atoms)};
    }
};

void add_geometry_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--sigma", opt.sigma, "Transverse oscillator length (k_d sigma)");
    cmd->add_option("--sigma-z", opt.sigma_z, "Longitudinal oscillator length (k_d sigma_z)");
    cmd->add_option("--waist", opt.waist, "Beam waist k_d w0 (default sqrt(2) sigma)");
    cmd->add_option("--wavelength", opt.wavelength,
                    "Drive wavelength; when given, lengths are metric in the same unit");
    cmd->add_option("--tol-abs", opt.tol_abs, "Absolute quadrature tolerance");
    cmd->add_option("--tol-rel", opt.tol_rel, "Relative quadrature tolerance");
}

void add_output_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--out", opt.out, "Output file path");
    cmd->add_option("--format", opt.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

void add_angle_flags(CLI::App* cmd, Options& opt) {
    cmd->add_flag("--degrees", opt.degrees, "Angles are given in degrees");
}

std::vector<std::pair<std::string, std::string>> base_metadata(const Options& opt,
                                                               const std::string& command) {
    std::vector<std::pair<std::string, std::string>> meta;
    meta.emplace_back("tool", "becfiber");
    meta.emplace_back("version", kVersion);
    meta.emplace_back("command", command);
    meta.emplace_back("sigma_bar", format_number(opt.sigma_bar()));
    meta.emplace_back("sigma_z_bar", format_number(opt.sigma_z_bar()));
    meta.emplace_back("w0_bar", format_number(opt.w0_bar()));
    meta.emplace_back("tol_abs", format_number(opt.tol_abs));
    meta.emplace_back("tol_rel", format_number(opt.tol_rel));
    if (opt.wavelength) meta.emplace_back("wavelength", format_number(*opt.wavelength));
    meta.emplace_back("angle_unit", opt.degrees ? "degrees" : "radians");
    return meta;
}

void emit_table(const Options& opt, const ScanTable& table) {
    const std::string text = (opt.format == "json") ? to_json(table) : to_csv(table);
    if (opt.out.empty())
        std::cout << text;
    else
        write_text_file(opt.out, text);
}

void emit_plot(const Options& opt, const ScanTable& table, const ChartOptions& chart) {
    if (opt.out.empty())
        throw std::invalid_argument("--plot requires --out to derive the SVG path");
    const auto path = std::filesystem::path(opt.out).replace_extension(".svg");
    write_text_file(path.string(), to_svg(table, chart));
    std::cout << "plot written to " << path.string() << "\n";
}

void print_value(const std::string& key, double value) {
    std::cout << key << " = " << format_number(value) << "\n";
}

// ---------------------------------------------------------------------------

int run_xi(const Options& opt) {
    XiBreakdown result = xi(opt.geometry(1), opt.tolerances());
    if (opt.brute_points > 0)
        result.brute = xi_brute_3d(opt.geometry(1), static_cast<int>(opt.brute_points));
    print_value("xi_exact", result.exact);
    print_value("xi_approx", result.approx);
    print_value("xi_quad_error", result.quad_error);
    if (result.brute) print_value("xi_brute_3d", *result.brute);
    if (!opt.out.empty()) {
        ScanTable table;
        table.metadata = base_metadata(opt, "xi");
        table.columns = {"xi_exact", "xi_approx", "xi_quad_error"};
        table.rows = {{result.exact, result.approx, result.quad_error}};
        if (result.brute) {
            table.columns.push_back("xi_brute_3d");
            table.rows[0].push_back(*result.brute);
        }
        emit_table(opt, table);
    }
    return kExitOk;
}

int run_xi0(const Options& opt) {
    const Xi0Breakdown result = xi0(opt.geometry(1), opt.tolerances());
    print_value("theta", opt.theta_rad());
    print_value("xi0_re", result.value.real());
    print_value("xi0_im", result.value.imag());
    print_value("xi0_sq", std::norm(result.value));
    print_value("xi0_quad_error", result.quad_error);
    if (result.closed_form) {
        print_value("xi0_closed_re", result.closed_form->real());
        print_value("xi0_closed_im", result.closed_form->imag());
    }
    if (result.approx_magnitude) print_value("xi0_approx_magnitude", *result.approx_magnitude);
    if (!opt.out.empty()) {
        ScanTable table;
        table.metadata = base_metadata(opt, "xi0");
        table.metadata.emplace_back("theta", format_number(opt.theta_rad()));
        table.columns = {"theta", "xi0_re", "xi0_im", "xi0_sq", "xi0_quad_error"};
        table.rows = {{opt.theta_rad(), result.value.real(), result.value.imag(),
                       std::norm(result.value), result.quad_error}};
        emit_table(opt, table);
    }
    return kExitOk;
}

int run_scan_theta(const Options& opt) {
    if (opt.theta_steps < 2)
        throw std::invalid_argument("scan-theta: --theta-steps must be at least 2");
    const double lo = opt.theta_min * opt.angle_scale();
    const double hi = opt.theta_max * opt.angle_scale();
    if (!(lo < hi)) throw std::invalid_argument("scan-theta: empty theta range");

    std::vector<double> thetas(static_cast<std::size_t>(opt.theta_steps));
    for (std::size_t i = 0; i < thetas.size(); ++i)
        thetas[i] = lo + (hi - lo) * static_cast<double>(i) /
                             static_cast<double>(thetas.size() - 1);

    ScanTable table = theta_scan(opt.geometry(), thetas, opt.tolerances());
    auto meta = base_metadata(opt, "scan-theta");
    meta.emplace_back("n_atoms", std::to_string(opt.n_atoms));
    meta.emplace_back("theta_min", format_number(lo));
    meta.emplace_back("theta_max", format_number(hi));
    meta.emplace_back("theta_steps", std::to_string(opt.theta_steps));
    meta.insert(meta.end(), table.metadata.begin(), table.metadata.end());
    table.metadata = std::move(meta);

    emit_table(opt, table);
    if (opt.plot) {
        ChartOptions chart;
        chart.title = "Angular dependence of the superradiant factor";
        chart.x_label = "theta [rad]";
        chart.y_label = "|xi0(theta)|^2";
        chart.reference_line = table.rows.front()[2];
        chart.reference_label = "xi/N";
        emit_plot(opt, table, chart);
    }
    return table.has_errors() ? kExitPartial : kExitOk;
}

int run_critical_angle(const Options& opt) {
    if (opt.n_atoms < 1)
        throw std::invalid_argument("critical-angle: --n must be at least 1");
    const double window = opt.window * opt.angle_scale();
    const CriticalAngleResult result =
        critical_angle(opt.geometry(), window, opt.tolerances());
    print_value("n_atoms", static_cast<double>(opt.n_atoms));
    if (result.theta_star) {
        print_value("theta_star", *result.theta_star);
    } else if (result.dominated_everywhere) {
        std::cout << "dominated everywhere: the isotropic channel wins at every angle\n";
    } else {
        std::cout << "no crossing: the superradiant channel dominates the whole window\n";
    }
    print_value("window", window);
    return kExitOk;
}

int run_sweep_n(const Options& opt) {
    if (opt.n_list.empty())
        throw std::invalid_argument("sweep-n: --n needs a comma-separated list");
    const double window = opt.window * opt.angle_scale();
    ScanTable table = n_sweep(opt.geometry(), opt.n_list, window, opt.tolerances());
    auto meta = base_metadata(opt, "sweep-n");
    meta.emplace_back("window", format_number(window));
    meta.insert(meta.end(), table.metadata.begin(), table.metadata.end());
    table.metadata = std::move(meta);
    emit_table(opt, table);
    if (opt.plot) {
        // Fig. 3 is a semilog plot: chart against log10(N)
        ScanTable logged = table;
        for (auto& row : logged.rows) row[0] = std::log10(row[0]);
        ChartOptions chart;
        chart.title = "Critical angle vs atom number";
        chart.x_label = "log10(N)";
        chart.y_label = "theta* [rad]";
        emit_plot(opt, logged, chart);
    }
    return table.has_errors() ? kExitPartial : kExitOk;
}

int run_optimize_waist(const Options& opt) {
    double lo = opt.w_min * opt.length_scale();
    double hi = opt.w_max * opt.length_scale();
    if (lo == 0.0 && hi == 0.0) {  // default range around the expected optimum
        lo = 0.2 * opt.sigma_bar();
        hi = 5.0 * opt.sigma_bar();
    }
    const OptimalWaistResult best =
        optimal_waist(opt.cloud(), opt.n_atoms, opt.theta_rad(), {lo, hi}, opt.tolerances());
    print_value("w0_bar", best.w0_bar);
    print_value("w0_over_sqrt2_sigma", best.w0_bar / (std::sqrt(2.0) * opt.sigma_bar()));
    print_value("forward_prefactor", best.forward_prefactor);
    if (best.at_boundary) std::cout << "note: optimum pinned to the range boundary\n";
    return kExitOk;
}

int run_epsilon(const Options& opt) {
    if (opt.steps < 2) throw std::invalid_argument("epsilon: --steps must be at least 2");
    if (!(opt.t_max > 0.0)) throw std::invalid_argument("epsilon: --t-max must be positive");

    auto parse_envelope = [](const std::string& spec) {
        const auto colon = spec.find(':');
        const std::string kind = spec.substr(0, colon);
        std::vector<std::string> args;
        if (colon != std::string::npos) {
            std::string rest = spec.substr(colon + 1);
            std::size_t pos = 0;
            while ((pos = rest.find(',')) != std::string::npos) {
                args.push_back(rest.substr(0, pos));
                rest.erase(0, pos + 1);
            }
            if (!rest.empty()) args.push_back(rest);
        }
        auto number = [&](std::size_t i, double fallback) {
            return i < args.size() ? std::stod(args[i]) : fallback;
        };
        if (kind == "const") return PulseEnvelope::constant(number(0, 1.0));
        if (kind == "rect")
            return PulseEnvelope::rectangular(number(0, 0.0), number(1, 1.0), number(2, 1.0));
        if (kind == "gauss")
            return PulseEnvelope::gaussian(number(0, 0.0), number(1, 1.0), number(2, 1.0));
        if (kind == "file") {
            if (args.empty()) throw std::invalid_argument("epsilon: file spec needs a path");
            return read_envelope_file(args[0], number(1, 1.0));
        }
        throw std::invalid_argument("epsilon: unknown envelope spec '" + spec +
                                    "' (expected const:|rect:|gauss:|file:)");
    };

    const PulseEnvelope drive = parse_envelope(opt.drive_spec);
    const PulseEnvelope readout = parse_envelope(opt.readout_spec);
    std::vector<double> times(static_cast<std::size_t>(opt.steps) + 1);
    for (std::size_t i = 0; i < times.size(); ++i)
        times[i] = opt.t_max * static_cast<double>(i) / static_cast<double>(times.size() - 1);

    const AmplitudeTrace trace = epsilon_amplitude(drive, readout, times, opt.n_atoms);
    if (trace.resolution_warning)
        std::cerr << "warning: fewer than 8 grid points per envelope feature width\n";
    if (trace.perturbative_warning)
        std::cerr << "warning: N |epsilon|^2 exceeds 0.1, outside the perturbative regime\n";

    ScanTable table;
    table.metadata = base_metadata(opt, "epsilon");
    table.metadata.emplace_back("drive", drive.describe());
    table.metadata.emplace_back("readout", readout.describe());
    table.metadata.emplace_back("n_atoms", std::to_string(opt.n_atoms));
    table.metadata.emplace_back("resolution_warning", trace.resolution_warning ? "1" : "0");
    table.metadata.emplace_back("perturbative_warning", trace.perturbative_warning ? "1" : "0");
    table.columns = {"t", "eps_re", "eps_im", "eps_abs2"};
    for (std::size_t i = 0; i < times.size(); ++i)
        table.rows.push_back({times[i], trace.epsilon[i].real(), trace.epsilon[i].imag(),
                              std::norm(trace.epsilon[i])});

    print_value("epsilon_final_re", trace.epsilon.back().real());
    print_value("epsilon_final_im", trace.epsilon.back().imag());
    print_value("epsilon_final_abs2", std::norm(trace.epsilon.back()));
    if (!opt.out.empty()) emit_table(opt, table);
    return kExitOk;
}

int run_selfcheck_command() {
    bool all_passed = true;
    for (const auto& result : becfiber::run_selfcheck()) {
        std::printf("[%s] %d %-28s %s (%.2fs)\n", result.passed ? "PASS" : "FAIL", result.id,
                    result.name.c_str(), result.detail.c_str(), result.seconds);
        all_passed = all_passed && result.passed;
    }
    std::printf("%s\n", all_passed ? "selfcheck: all suites passed" : "selfcheck: FAILURES");
    return all_passed ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fiber collection efficiency of optical photons generated from "
                 "microwave excitations of a Bose-Einstein condensate"};
    app.set_version_flag("--version", becfiber::kVersion);
    app.require_subcommand(1);

    Options opt;

    auto* cmd_xi = app.add_subcommand("xi", "Side-scattering geometric factor");
    add_geometry_flags(cmd_xi, opt);
    add_output_flags(cmd_xi, opt);
    cmd_xi->add_option("--brute", opt.brute_points,
                       "Also evaluate the 3D tensor-grid oracle with this many points per axis");

    auto* cmd_xi0 = app.add_subcommand("xi0", "Forward-scattering geometric factor");
    add_geometry_flags(cmd_xi0, opt);
    add_output_flags(cmd_xi0, opt);
    add_angle_flags(cmd_xi0, opt);
    cmd_xi0->add_option("--theta", opt.theta, "Drive-to-fiber angle");

    auto* cmd_scan = app.add_subcommand("scan-theta", "Angular scan of both channels");
    add_geometry_flags(cmd_scan, opt);
    add_output_flags(cmd_scan, opt);
    add_angle_flags(cmd_scan, opt);
    cmd_scan->add_option("--n", opt.n_atoms, "Atom number");
    cmd_scan->add_option("--theta-min", opt.theta_min, "Scan start");
    cmd_scan->add_option("--theta-max", opt.theta_max, "Scan end");
    cmd_scan->add_option("--theta-steps", opt.theta_steps, "Scan points");
    cmd_scan->add_flag("--plot", opt.plot, "Also write an SVG chart");

    auto* cmd_crit = app.add_subcommand("critical-angle",
                                        "Angle where the two channels contribute equally");
    add_geometry_flags(cmd_crit, opt);
    add_angle_flags(cmd_crit, opt);
    cmd_crit->add_option("--n", opt.n_atoms, "Atom number");
    cmd_crit->add_option("--theta-max", opt.window, "Search window (default 0.1 rad)");

    auto* cmd_sweep = app.add_subcommand("sweep-n", "Critical angle versus atom number");
    add_geometry_flags(cmd_sweep, opt);
    add_output_flags(cmd_sweep, opt);
    add_angle_flags(cmd_sweep, opt);
    cmd_sweep->add_option("--n", opt.n_list, "Comma-separated atom numbers")
        ->delimiter(',');
    cmd_sweep->add_option("--theta-max", opt.window, "Search window (default 0.1 rad)");
    cmd_sweep->add_flag("--plot", opt.plot, "Also write an SVG chart");

    auto* cmd_waist = app.add_subcommand("optimize-waist", "Waist maximizing the forward rate");
    add_geometry_flags(cmd_waist, opt);
    add_angle_flags(cmd_waist, opt);
    cmd_waist->add_option("--n", opt.n_atoms, "Atom number");
    cmd_waist->add_option("--theta", opt.theta, "Drive-to-fiber angle");
    cmd_waist->add_option("--w-min", opt.w_min, "Waist range lower end");
    cmd_waist->add_option("--w-max", opt.w_max, "Waist range upper end");

    auto* cmd_eps = app.add_subcommand("epsilon", "Perturbative readout amplitude");
    add_output_flags(cmd_eps, opt);
    cmd_eps->add_option("--drive", opt.drive_spec,
                        "Microwave envelope: const:A | rect:TON,TOFF[,A] | "
                        "gauss:T0,WIDTH[,A] | file:PATH[,A]");
    cmd_eps->add_option("--readout", opt.readout_spec, "Readout laser envelope (same syntax)");
    cmd_eps->add_option("--t-max", opt.t_max, "Final time");
    cmd_eps->add_option("--steps", opt.steps, "Grid steps");
    cmd_eps->add_option("--n", opt.n_atoms, "Atom number for the perturbative guard");

    auto* cmd_check = app.add_subcommand("selfcheck", "Run the built-in consistency suites");
    (void)cmd_check;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_xi->parsed()) return run_xi(opt);
        if (cmd_xi0->parsed()) return run_xi0(opt);
        if (cmd_scan->parsed()) return run_scan_theta(opt);
        if (cmd_crit->parsed()) return run_critical_angle(opt);
        if (cmd_sweep->parsed()) return run_sweep_n(opt);
        if (cmd_waist->parsed()) return run_optimize_waist(opt);
        if (cmd_eps->parsed()) return run_epsilon(opt);
        if (cmd_check->parsed()) return run_selfcheck_command();
    } catch (const becfiber::QuadratureNonConvergence& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
