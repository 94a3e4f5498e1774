#pragma once

// Perturbative readout amplitude from the microwave-drive and laser-pulse
// envelopes,
//
//   epsilon(t) = - integral_0^t dt' Omega(t') integral_0^t' dt'' eta(t''),
//
// evaluated on the caller's time grid. The inner integral uses the
// envelope's closed-form antiderivative (every supported shape has one),
// the outer one a composite trapezoid; rectangular pulses with edges on
// grid nodes therefore integrate exactly. All downstream uses go through
// |epsilon|^2, so the overall sign convention is unobservable; it is kept
// as written to prevent silent drift.

#include <string>
#include <variant>
#include <vector>

#include "becfiber/numerics.hpp"

namespace becfiber {

class PulseEnvelope {
  public:
    static PulseEnvelope constant(double amplitude_scale = 1.0);
    static PulseEnvelope rectangular(double t_on, double t_off, double amplitude_scale = 1.0);
    static PulseEnvelope gaussian(double t0, double width, double amplitude_scale = 1.0);
    static PulseEnvelope sampled(std::vector<double> times, std::vector<double> amplitudes,
                                 double amplitude_scale = 1.0);

    double operator()(double t) const;

    /// Exact integral of the envelope from 0 to t.
    double cumulative(double t) const;

    /// Shortest time scale of the envelope; infinity for a constant.
    /// The amplitude trace is flagged when the evaluation grid resolves
    /// this with fewer than 8 points.
    double feature_width() const;

    std::string describe() const;

  private:
    struct Constant {};
    struct Rectangular {
        double t_on, t_off;
    };
    struct Gaussian {
        double t0, width;
    };
    struct Sampled {
        std::vector<double> times, amplitudes;
    };

    std::variant<Constant, Rectangular, Gaussian, Sampled> shape_;
    double amplitude_scale_ = 1.0;

    PulseEnvelope() = default;
};

/// Two-column (time, amplitude) text file with '#' comments.
PulseEnvelope read_envelope_file(const std::string& path, double amplitude_scale = 1.0);

struct AmplitudeTrace {
    std::vector<double> times;
    std::vector<Complex> epsilon;
    long long n_atoms = 1;
    bool resolution_warning = false;   // grid too coarse for an envelope feature
    bool perturbative_warning = false; // N |epsilon|^2 left the perturbative regime
};

/// Nested cumulative integration on the given grid (must start at 0 and be
/// strictly increasing). The sqrt(N) and momentum-space factors are not
/// included here; they live with the geometry factors.
AmplitudeTrace epsilon_amplitude(const PulseEnvelope& drive, const PulseEnvelope& readout,
                                 const std::vector<double>& times, long long n_atoms = 1);

/// |epsilon(t)|^2 per grid point.
std::vector<double> perturbative_population(const AmplitudeTrace& trace);

}  // namespace becfiber
