#pragma once

// Numerical substrate: scaled complementary error function, adaptive
// Gauss-Kronrod quadrature for real- and complex-valued integrands,
// bracketed root finding (Brent) and golden-section maximization.
//
// All routines are pure functions of their inputs and safe to call
// concurrently from any number of threads.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace becfiber {

using Complex = std::complex<double>;

/// Accuracy targets shared by the iterative routines. The defaults leave
/// roughly two orders of magnitude headroom over the 1e-6..1e-8 agreement
/// the consistency checks demand.
struct Tolerances {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    std::size_t max_evaluations = 1'000'000;
};

template <class T>
struct QuadratureResult {
    T value{};
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Thrown when the adaptive subdivision runs out of its evaluation budget
/// with the error estimate still above tolerance. Carries the best estimate
/// so callers can decide whether it is still usable.
class QuadratureNonConvergence : public std::runtime_error {
  public:
    QuadratureNonConvergence(const std::string& what, Complex best, double err,
                             std::size_t evals)
        : std::runtime_error(what), best_estimate(best),
          abs_error_estimate(err), evaluations(evals) {}

    Complex best_estimate;
    double abs_error_estimate;
    std::size_t evaluations;
};

/// e^{x^2} erfc(x), accurate to better than 1e-12 relative for x >= 0.
/// For x < 0 returns 2 e^{x^2} - erfcx(-x), which overflows for x < -26.6
/// (std::range_error). NaN input raises std::domain_error.
double erfcx(double x);

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (positive half; last node is the centre). Values from QUADPACK dqk15.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

// Gauss weights pair with Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

// One Gauss7/Kronrod15 panel; the error estimate is the raw |K15 - G7|,
// conservative enough for the smooth Gaussian-type integrands this library
// deals with.
template <class T, class F>
void gauss_kronrod_15(F& f, double a, double b, T& value, double& error) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(mid);
    T kronrod = kKronrodWeights[7] * fc;
    T gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const T fsum = f(mid - dx) + f(mid + dx);
        kronrod += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
    }
    value = half * kronrod;
    error = std::abs(half * (kronrod - gauss));
}

template <class T>
Complex as_complex(const T& v) {
    if constexpr (std::is_same_v<T, Complex>) {
        return v;
    } else {
        return Complex(v, 0.0);
    }
}

}  // namespace detail

/// Adaptive quadrature of f over the finite interval [a, b]. Splits the
/// panel with the largest error estimate until the summed estimate drops
/// below max(abs_tol, rel_tol * |value|).
///
/// `initial_subdivisions` forces a uniform pre-subdivision before the
/// adaptive stage; callers with oscillatory integrands should request at
/// least 4 panels per oscillation period so that the embedded-rule error
/// estimator is not fooled by aliasing.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const Tolerances& tol = {},
                        std::size_t initial_subdivisions = 1)
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, double>>> {
    using T = std::decay_t<std::invoke_result_t<F&, double>>;

    if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b))
        throw std::invalid_argument("integrate_adaptive: invalid interval");
    if (tol.abs_tol <= 0.0 || tol.rel_tol <= 0.0)
        throw std::invalid_argument("integrate_adaptive: tolerances must be positive");
    if (initial_subdivisions < 1) initial_subdivisions = 1;
    if (initial_subdivisions * 15 > tol.max_evaluations)
        throw QuadratureNonConvergence(
            "integrate_adaptive: the initial subdivision alone exceeds the "
            "evaluation budget",
            Complex(0.0, 0.0), std::numeric_limits<double>::infinity(), 0);

    struct Panel {
        double error;
        double a, b;
        T value;
        bool operator<(const Panel& o) const { return error < o.error; }
    };

    std::priority_queue<Panel> queue;
    T total{};
    double total_error = 0.0;
    double frozen_error = 0.0;  // panels too narrow to split further
    std::size_t evaluations = 0;

    const double step = (b - a) / static_cast<double>(initial_subdivisions);
    for (std::size_t i = 0; i < initial_subdivisions; ++i) {
        const double pa = a + step * static_cast<double>(i);
        const double pb = (i + 1 == initial_subdivisions) ? b : pa + step;
        Panel p{0.0, pa, pb, T{}};
        detail::gauss_kronrod_15(f, pa, pb, p.value, p.error);
        evaluations += 15;
        total += p.value;
        total_error += p.error;
        queue.push(p);
    }

    auto converged = [&] {
        return total_error <= std::max(tol.abs_tol, tol.rel_tol * std::abs(total));
    };

    while (!converged() && !queue.empty()) {
        if (evaluations + 30 > tol.max_evaluations) {
            throw QuadratureNonConvergence(
                "integrate_adaptive: evaluation budget exhausted with error "
                "estimate above tolerance",
                detail::as_complex(total), total_error, evaluations);
        }
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // cannot split at machine precision; keep its error as-is
            frozen_error += worst.error;
            total_error = frozen_error;
            std::priority_queue<Panel> rest(queue);
            while (!rest.empty()) {
                total_error += rest.top().error;
                rest.pop();
            }
            continue;
        }
        total -= worst.value;
        total_error -= worst.error;
        for (const auto& [pa, pb] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
            Panel p{0.0, pa, pb, T{}};
            detail::gauss_kronrod_15(f, pa, pb, p.value, p.error);
            total += p.value;
            total_error += p.error;
            queue.push(p);
        }
        evaluations += 30;
    }

    if (!converged()) {
        throw QuadratureNonConvergence(
            "integrate_adaptive: interval exhausted below machine resolution",
            detail::as_complex(total), total_error, evaluations);
    }
    return {total, total_error, evaluations};
}

/// Brent root bracketing on [lo, hi]; g(lo) and g(hi) must differ in sign.
/// Succeeds once |g(x)| <= abs_tol or the bracket has shrunk below
/// rel_tol * |x|. Bracket-preserving: every iterate stays inside [lo, hi].
template <class F>
double find_root(F&& g, double lo, double hi, const Tolerances& tol = {}) {
    if (!(lo < hi)) throw std::invalid_argument("find_root: requires lo < hi");
    double a = lo, b = hi;
    double fa = g(a), fb = g(b);
    if (std::isnan(fa) || std::isnan(fb))
        throw std::domain_error("find_root: NaN at bracket endpoint");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("find_root: no sign change over the bracket");

    double c = a, fc = fa;
    double d = b - a, e = d;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const std::size_t max_iter = 256;

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol.rel_tol * std::abs(b);
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= tol.abs_tol) return b;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic / secant step
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = g(b);
    }
    return b;
}

struct MaximizeResult {
    double argmax = 0.0;
    double max_value = 0.0;
    bool at_boundary = false;
};

/// Coarse pre-scan (>= 64 points) followed by golden-section refinement of
/// the best bracket. The argmax is located to within rel_tol * (hi - lo) of
/// the true maximizer of the pre-scan-selected bracket.
template <class F>
MaximizeResult maximize_1d(F&& g, double lo, double hi, const Tolerances& tol = {},
                           std::size_t prescan_points = 64) {
    if (!(lo < hi)) throw std::invalid_argument("maximize_1d: requires lo < hi");
    const std::size_t n = std::max<std::size_t>(prescan_points, 64);

    std::vector<double> xs(n), gs(n);
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        gs[i] = g(xs[i]);
        if (gs[i] > gs[best]) best = i;
    }
    const bool at_boundary = (best == 0 || best == n - 1);

    double a = xs[best == 0 ? 0 : best - 1];
    double b = xs[best == n - 1 ? n - 1 : best + 1];
    const double width_tol =
        std::max(tol.rel_tol * (hi - lo),
                 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(lo) + std::abs(hi)));

    constexpr double invphi = 0.6180339887498948482;  // (sqrt(5)-1)/2
    double h = b - a;
    double xc = b - invphi * h, xd = a + invphi * h;
    double fc = g(xc), fd = g(xd);
    for (int iter = 0; iter < 256 && h > width_tol; ++iter) {
        if (fc >= fd) {
            b = xd;
            xd = xc;
            fd = fc;
            h = b - a;
            xc = b - invphi * h;
            fc = g(xc);
        } else {
            a = xc;
            xc = xd;
            fc = fd;
            h = b - a;
            xd = a + invphi * h;
            fd = g(xd);
        }
    }

    MaximizeResult result;
    result.argmax = (fc >= fd) ? xc : xd;
    result.max_value = std::max(fc, fd);
    // a monotone slice can beat the interior golden iterate at the edge
    if (gs[best] > result.max_value) {
        result.argmax = xs[best];
        result.max_value = gs[best];
    }
    result.at_boundary = at_boundary;
    return result;
}

}  // namespace becfiber
