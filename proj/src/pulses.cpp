#include "becfiber/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace becfiber {

PulseEnvelope PulseEnvelope::constant(double amplitude_scale) {
    PulseEnvelope env;
    env.shape_ = Constant{};
    env.amplitude_scale_ = amplitude_scale;
    return env;
}

PulseEnvelope PulseEnvelope::rectangular(double t_on, double t_off, double amplitude_scale) {
    if (!(t_on < t_off))
        throw std::invalid_argument("PulseEnvelope: rectangular needs t_on < t_off");
    PulseEnvelope env;
    env.shape_ = Rectangular{t_on, t_off};
    env.amplitude_scale_ = amplitude_scale;
    return env;
}

PulseEnvelope PulseEnvelope::gaussian(double t0, double width, double amplitude_scale) {
    if (!(width > 0.0)) throw std::invalid_argument("PulseEnvelope: gaussian needs width > 0");
    PulseEnvelope env;
    env.shape_ = Gaussian{t0, width};
    env.amplitude_scale_ = amplitude_scale;
    return env;
}

PulseEnvelope PulseEnvelope::sampled(std::vector<double> times, std::vector<double> amplitudes,
                                     double amplitude_scale) {
    if (times.size() < 2 || times.size() != amplitudes.size())
        throw std::invalid_argument("PulseEnvelope: sampled needs >= 2 matching samples");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("PulseEnvelope: sample times must strictly increase");
    PulseEnvelope env;
    env.shape_ = Sampled{std::move(times), std::move(amplitudes)};
    env.amplitude_scale_ = amplitude_scale;
    return env;
}

double PulseEnvelope::operator()(double t) const {
    return amplitude_scale_ *
           std::visit(
               [t](const auto& shape) -> double {
                   using S = std::decay_t<decltype(shape)>;
                   if constexpr (std::is_same_v<S, Constant>) {
                       return 1.0;
                   } else if constexpr (std::is_same_v<S, Rectangular>) {
                       return (t >= shape.t_on && t <= shape.t_off) ? 1.0 : 0.0;
                   } else if constexpr (std::is_same_v<S, Gaussian>) {
                       const double u = (t - shape.t0) / shape.width;
                       return std::exp(-0.5 * u * u);
                   } else {
                       const auto& ts = shape.times;
                       const auto& as = shape.amplitudes;
                       if (t <= ts.front()) return t == ts.front() ? as.front() : 0.0;
                       if (t >= ts.back()) return t == ts.back() ? as.back() : 0.0;
                       const auto it = std::upper_bound(ts.begin(), ts.end(), t);
                       const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
                       const double f = (t - ts[hi - 1]) / (ts[hi] - ts[hi - 1]);
                       return as[hi - 1] + f * (as[hi] - as[hi - 1]);
                   }
               },
               shape_);
}

namespace {

// integral of the linear interpolant from its first sample up to t
double sampled_integral(const std::vector<double>& ts, const std::vector<double>& as,
                        double t) {
    if (t <= ts.front()) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (t >= ts[i]) {
            acc += 0.5 * (as[i - 1] + as[i]) * (ts[i] - ts[i - 1]);
            continue;
        }
        const double f = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
        const double a_t = as[i - 1] + f * (as[i] - as[i - 1]);
        acc += 0.5 * (as[i - 1] + a_t) * (t - ts[i - 1]);
        return acc;
    }
    return acc;  // envelope is zero beyond the last sample
}

}  // namespace

double PulseEnvelope::cumulative(double t) const {
    return amplitude_scale_ *
           std::visit(
               [t](const auto& shape) -> double {
                   using S = std::decay_t<decltype(shape)>;
                   if constexpr (std::is_same_v<S, Constant>) {
                       return t;
                   } else if constexpr (std::is_same_v<S, Rectangular>) {
                       const double upper = std::clamp(t, shape.t_on, shape.t_off);
                       const double lower = std::clamp(0.0, shape.t_on, shape.t_off);
                       return upper - lower;
                   } else if constexpr (std::is_same_v<S, Gaussian>) {
                       const double scale = shape.width * std::sqrt(M_PI / 2.0);
                       const double root2w = std::sqrt(2.0) * shape.width;
                       return scale * (std::erf((t - shape.t0) / root2w) -
                                       std::erf(-shape.t0 / root2w));
                   } else {
                       return sampled_integral(shape.times, shape.amplitudes, t) -
                              sampled_integral(shape.times, shape.amplitudes, 0.0);
                   }
               },
               shape_);
}

double PulseEnvelope::feature_width() const {
    return std::visit(
        [](const auto& shape) -> double {
            using S = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<S, Constant>) {
                return std::numeric_limits<double>::infinity();
            } else if constexpr (std::is_same_v<S, Rectangular>) {
                return shape.t_off - shape.t_on;
            } else if constexpr (std::is_same_v<S, Gaussian>) {
                return shape.width;
            } else {
                double min_step = std::numeric_limits<double>::infinity();
                for (std::size_t i = 1; i < shape.times.size(); ++i)
                    min_step = std::min(min_step, shape.times[i] - shape.times[i - 1]);
                return min_step;
            }
        },
        shape_);
}

std::string PulseEnvelope::describe() const {
    std::ostringstream out;
    std::visit(
        [&](const auto& shape) {
            using S = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<S, Constant>) {
                out << "constant";
            } else if constexpr (std::is_same_v<S, Rectangular>) {
                out << "rectangular[" << shape.t_on << ", " << shape.t_off << "]";
            } else if constexpr (std::is_same_v<S, Gaussian>) {
                out << "gaussian(t0=" << shape.t0 << ", width=" << shape.width << ")";
            } else {
                out << "sampled(" << shape.times.size() << " points)";
            }
        },
        shape_);
    out << " x " << amplitude_scale_;
    return out.str();
}

PulseEnvelope read_envelope_file(const std::string& path, double amplitude_scale) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open envelope file: " + path);
    std::vector<double> times, amps;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        double t, a;
        if (fields >> t >> a) {
            times.push_back(t);
            amps.push_back(a);
        }
    }
    return PulseEnvelope::sampled(std::move(times), std::move(amps), amplitude_scale);
}

AmplitudeTrace epsilon_amplitude(const PulseEnvelope& drive, const PulseEnvelope& readout,
                                 const std::vector<double>& times, long long n_atoms) {
    if (times.size() < 2) throw std::invalid_argument("epsilon_amplitude: needs >= 2 times");
    if (times.front() != 0.0)
        throw std::invalid_argument("epsilon_amplitude: time grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("epsilon_amplitude: times must strictly increase");
    if (n_atoms < 1) throw std::invalid_argument("epsilon_amplitude: n_atoms must be >= 1");

    const std::size_t n = times.size();
    std::vector<double> inner(n), omega(n);
    double max_step = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        inner[i] = drive.cumulative(times[i]);  // exact antiderivative
        omega[i] = readout(times[i]);
        if (i) max_step = std::max(max_step, times[i] - times[i - 1]);
    }

    AmplitudeTrace trace;
    trace.times = times;
    trace.epsilon.assign(n, Complex(0.0, 0.0));
    trace.n_atoms = n_atoms;

    double outer = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        outer += 0.5 * (times[i] - times[i - 1]) *
                 (omega[i] * inner[i] + omega[i - 1] * inner[i - 1]);
        trace.epsilon[i] = Complex(-outer, 0.0);
    }

    const double feature = std::min(drive.feature_width(), readout.feature_width());
    trace.resolution_warning = std::isfinite(feature) && feature < 8.0 * max_step;

    double max_population = 0.0;
    for (const Complex& e : trace.epsilon) max_population = std::max(max_population, std::norm(e));
    trace.perturbative_warning = max_population * static_cast<double>(n_atoms) > 0.1;
    return trace;
}

std::vector<double> perturbative_population(const AmplitudeTrace& trace) {
    std::vector<double> population;
    population.reserve(trace.epsilon.size());
    for (const Complex& e : trace.epsilon) population.push_back(std::norm(e));
    return population;
}

}  // namespace becfiber
