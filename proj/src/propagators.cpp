#include "qcond/propagators.hpp"

#include <cmath>

#include "qcond/errors.hpp"
#include "qcond/pairing_core.hpp"

namespace qcond::propagators {

namespace {

constexpr double kCausticGuard = 1e-9;

void check_params(const OscParams& p, bool need_omega) {
    if (p.m <= 0.0 || p.hbar <= 0.0 || p.omega < 0.0)
        throw InvalidDimension("params must satisfy m > 0, hbar > 0, omega >= 0");
    if (need_omega && p.omega == 0.0)
        throw InvalidDimension("oscillator kernel needs omega > 0");
}

void check_distinct_times(double t1, double t2, double t3) {
    if (t1 == t2 || t2 == t3 || t1 == t3)
        throw CoincidentTimes("measurement times must be pairwise distinct");
}

double checked_sin(double phase) {
    if (std::abs(std::remainder(phase, M_PI)) < kCausticGuard)
        throw CausticTime("time separation hits a kernel caustic");
    return std::sin(phase);
}

Complex phase_factor(double phi) { return {std::cos(phi), std::sin(phi)}; }

double window_measure_checked(const SpacetimeWindow& w, const char* which) {
    if (w.set.is_empty() || !w.set.bounded())
        throw UnboundedConditionSet(std::string(which) +
                                    " window set must be bounded and non-null");
    return w.set.measure();
}

double finish_Q3(const quad::Result& res) {
    if (!res.converged)
        throw QuadratureNotConverged("Q3 quadrature did not converge within budget");
    return res.value.real();
}

}  // namespace

Complex free_propagator(double x2, double x1, double T, const OscParams& params) {
    check_params(params, false);
    if (T == 0.0) throw ZeroTimeSeparation("free kernel needs T != 0");
    Complex pref = std::sqrt(Complex(0.0, -params.m / (2.0 * M_PI * params.hbar * T)));
    double dx = x2 - x1;
    return pref * phase_factor(params.m * dx * dx / (2.0 * params.hbar * T));
}

double free_triangle_action(double x1, double x2, double x3, double t1, double t2,
                            double t3) {
    return x1 * (t3 - t2) + x2 * (t1 - t3) + x3 * (t2 - t1);
}

Complex free_K3(double x1, double x2, double x3, double t1, double t2, double t3,
                const OscParams& params) {
    check_distinct_times(t1, t2, t3);
    return free_propagator(x2, x1, t2 - t1, params) *
           free_propagator(x3, x2, t3 - t2, params) *
           free_propagator(x1, x3, t1 - t3, params);
}

Complex free_K3_closed(double x1, double x2, double x3, double t1, double t2,
                       double t3, const OscParams& params) {
    check_params(params, false);
    check_distinct_times(t1, t2, t3);
    double t21 = t2 - t1, t32 = t3 - t2, t13 = t1 - t3;
    double c = params.m / (2.0 * M_PI * params.hbar);
    // Factorwise principal roots; a single root of the product would land on
    // the wrong sheet for some time orderings.
    Complex pref = std::sqrt(Complex(0.0, -c / t21)) * std::sqrt(Complex(0.0, -c / t32)) *
                   std::sqrt(Complex(0.0, -c / t13));
    double s = free_triangle_action(x1, x2, x3, t1, t2, t3);
    return pref * phase_factor(-params.m * s * s / (2.0 * params.hbar * t21 * t32 * t13));
}

Complex free_K4(double x1, double x2, double x3, double x2p, double t1, double t2,
                double t3, const OscParams& params) {
    check_distinct_times(t1, t2, t3);
    return free_propagator(x2, x1, t2 - t1, params) *
           free_propagator(x3, x2, t3 - t2, params) *
           std::conj(free_propagator(x2p, x1, t2 - t1, params)) *
           std::conj(free_propagator(x3, x2p, t3 - t2, params));
}

double galilei_Q(const std::vector<SpacetimeWindow>& windows, const OscParams& params,
                 const quad::Options& opt) {
    check_params(params, false);
    if (windows.size() != 2 && windows.size() != 3)
        throw UnsupportedChainLength("galilei_Q takes two or three windows");
    double l1 = window_measure_checked(windows[0], "first");
    double l2 = window_measure_checked(windows[1], "second");
    double t21 = windows[1].t - windows[0].t;
    if (t21 == 0.0) throw CoincidentTimes("windows share a measurement time");
    if (windows.size() == 2)
        return params.m * l1 * l2 / (2.0 * M_PI * params.hbar * std::abs(t21));

    double t32 = windows[2].t - windows[1].t;
    if (t32 == 0.0 || windows[2].t == windows[0].t)
        throw CoincidentTimes("windows share a measurement time");
    // K4 as the simplified product of four kernels: constant modulus times a
    // pure phase in (x1, x2, x2', x3).
    double mod = params.m * params.m /
                 (4.0 * M_PI * M_PI * params.hbar * params.hbar * std::abs(t21 * t32));
    double a21 = params.m / (2.0 * params.hbar * t21);
    double a32 = params.m / (2.0 * params.hbar * t32);
    auto f = [&](const double* z) {
        // z = (x1, x2, x2', x3)
        double d21 = z[1] - z[0], d32 = z[3] - z[1];
        double e21 = z[2] - z[0], e32 = z[3] - z[2];
        double phi = a21 * (d21 * d21 - e21 * e21) + a32 * (d32 * d32 - e32 * e32);
        return mod * phase_factor(phi);
    };
    quad::Result res = quad::integrate(
        {windows[0].set, windows[1].set, windows[1].set, windows[2].set}, f, opt);
    return finish_Q3(res);
}

Complex osc_propagator(double x2, double x1, double T, const OscParams& params) {
    check_params(params, true);
    double wt = params.omega * T;
    double s = checked_sin(wt);
    double c = std::cos(wt);
    double amp = std::sqrt(params.m * params.omega / (2.0 * M_PI * params.hbar * std::abs(s)));
    // Feynman-Souriau caustic phase keeps the branch continuous in T.
    double maslov = -M_PI / 4.0 * (1.0 + 2.0 * std::floor(wt / M_PI));
    double phi = params.m * params.omega * ((x1 * x1 + x2 * x2) * c - 2.0 * x1 * x2) /
                 (2.0 * params.hbar * s);
    return amp * phase_factor(phi + maslov);
}

double osc_triangle_area(double x1, double x2, double x3, double t1, double t2,
                         double t3) {
    double s23 = checked_sin(t2 - t3);
    double s31 = checked_sin(t3 - t1);
    double s12 = checked_sin(t1 - t2);
    double u = x1 * s23 + x2 * s31 + x3 * s12;
    return -0.5 * u * u / (s23 * s31 * s12);
}

OscK3K4 osc_K3_K4(double x1, double x2, double x3, double x2p, double t1, double t2,
                  double t3) {
    OscParams unit{1.0, 1.0, 1.0};
    double s21 = checked_sin(t2 - t1);
    double s32 = checked_sin(t3 - t2);
    double s13 = checked_sin(t1 - t3);
    Complex k21 = osc_propagator(x2, x1, t2 - t1, unit);
    Complex k32 = osc_propagator(x3, x2, t3 - t2, unit);
    Complex k13 = osc_propagator(x1, x3, t1 - t3, unit);
    Complex k21p = osc_propagator(x2p, x1, t2 - t1, unit);
    Complex k32p = osc_propagator(x3, x2p, t3 - t2, unit);
    OscK3K4 out;
    out.k3 = k21 * k32 * k13;
    out.k4 = k21 * k32 * std::conj(k21p) * std::conj(k32p);
    out.r3 = std::pow(2.0 * M_PI, -1.5) / std::sqrt(std::abs(s21 * s32 * s13));
    out.r4 = 1.0 / (4.0 * M_PI * M_PI * std::abs(s21 * s32));
    return out;
}

double osc_Q(const std::vector<SpacetimeWindow>& windows, const OscParams& params,
             const quad::Options& opt, bool covariant_path) {
    check_params(params, true);
    if (windows.size() != 2 && windows.size() != 3)
        throw UnsupportedChainLength("osc_Q takes two or three windows");
    double l1 = window_measure_checked(windows[0], "first");
    double l2 = window_measure_checked(windows[1], "second");
    double wt21 = params.omega * (windows[1].t - windows[0].t);
    double s21 = checked_sin(wt21);
    if (windows.size() == 2) {
        // (2 pi)^-1 times the phase-space area of the strip intersection.
        return params.m * params.omega * l1 * l2 /
               (2.0 * M_PI * params.hbar * std::abs(s21));
    }

    double wt32 = params.omega * (windows[2].t - windows[1].t);
    double wt13 = params.omega * (windows[0].t - windows[2].t);
    double s32 = checked_sin(wt32);
    double s13 = checked_sin(wt13);

    // Rescale to omega = m = hbar = 1: x -> x sqrt(m omega / hbar), t -> omega t.
    // Q values are invariant under this substitution.
    double scale = std::sqrt(params.m * params.omega / params.hbar);
    IntervalUnion s1 = windows[0].set.scaled(scale);
    IntervalUnion s2 = windows[1].set.scaled(scale);
    IntervalUnion s3 = windows[2].set.scaled(scale);

    if (covariant_path) {
        // Pairing-form integral over intersection-strip coordinates.
        quad::Result res = core::q3_core(s21, s32, s13, s1, s2, s3, opt);
        return finish_Q3(res);
    }

    // Direct path: simplified product of four oscillator kernels.
    double mod = 1.0 / (4.0 * M_PI * M_PI * std::abs(s21 * s32));
    double c21 = std::cos(wt21), c32 = std::cos(wt32);
    auto f = [&](const double* z) {
        // z = (x1, x2, x2', x3)
        double phi = ((z[0] * z[0] + z[1] * z[1]) * c21 - 2.0 * z[0] * z[1]) / (2.0 * s21) +
                     ((z[1] * z[1] + z[3] * z[3]) * c32 - 2.0 * z[1] * z[3]) / (2.0 * s32) -
                     ((z[0] * z[0] + z[2] * z[2]) * c21 - 2.0 * z[0] * z[2]) / (2.0 * s21) -
                     ((z[2] * z[2] + z[3] * z[3]) * c32 - 2.0 * z[2] * z[3]) / (2.0 * s32);
        return mod * phase_factor(phi);
    };
    quad::Result res = quad::integrate({s1, s2, s2, s3}, f, opt);
    return finish_Q3(res);
}

}  // namespace qcond::propagators
