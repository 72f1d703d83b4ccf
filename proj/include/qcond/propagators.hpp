#pragma once

#include <complex>
#include <vector>

#include "qcond/interval.hpp"
#include "qcond/quadrature.hpp"

namespace qcond::propagators {

using Complex = std::complex<double>;

struct OscParams {
    double m = 1.0;
    double omega = 0.0;  // 0 selects the free particle
    double hbar = 1.0;
};

/// One measurement window: interval-union set on the x-axis at a fixed time.
struct SpacetimeWindow {
    double t = 0.0;
    IntervalUnion set;
};

/// sqrt(m / 2 pi i hbar T) exp[i m (x2-x1)^2 / 2 hbar T], principal branch.
Complex free_propagator(double x2, double x1, double T, const OscParams& params);

/// S = x1 T32 + x2 T13 + x3 T21 (twice the signed area of the spacetime
/// triangle); Galilei invariant.
double free_triangle_action(double x1, double x2, double x3, double t1, double t2,
                            double t3);

/// Product K(x2,x1;T21) K(x3,x2;T32) K(x1,x3;T13).
Complex free_K3(double x1, double x2, double x3, double t1, double t2, double t3,
                const OscParams& params);

/// Same value through the closed form
/// (m^3/(2 pi i hbar)^3 T21 T32 T13)^{1/2} exp[-i m S^2 / 2 hbar T21 T32 T13],
/// with the prefactor root taken factorwise to match the product branch.
Complex free_K3_closed(double x1, double x2, double x3, double t1, double t2,
                       double t3, const OscParams& params);

/// (2 pi hbar |T13| / m) K3(x1,x2,x3) conj(K3(x1,x2',x3)); computed as the
/// branch-free product of four propagators.
Complex free_K4(double x1, double x2, double x3, double x2p, double t1, double t2,
                double t3, const OscParams& params);

/// Q2 (closed form) or Q3 (4D quadrature of K4) for the free particle.
double galilei_Q(const std::vector<SpacetimeWindow>& windows, const OscParams& params,
                 const quad::Options& opt = {});

/// Oscillator kernel with cot/sin phases and the Feynman-Souriau caustic
/// phase; reduces to free_propagator as omega T -> 0.
Complex osc_propagator(double x2, double x1, double T, const OscParams& params);

/// Signed area of the triangle cut out by the three oscillator measurement
/// lines (omega = m = hbar = 1 scaling):
/// -1/2 (x1 s23 + x2 s31 + x3 s12)^2 / (s23 s31 s12), s_kl = sin(t_k - t_l).
double osc_triangle_area(double x1, double x2, double x3, double t1, double t2,
                         double t3);

struct OscK3K4 {
    Complex k3;   // product of three kernels
    Complex k4;   // product of four kernels
    double r3;    // |k3| prefactor 1/((2 pi)^{3/2} sqrt|s21 s32 s13|)
    double r4;    // |k4| prefactor 1/(4 pi^2 |s21 s32|)
};

/// K3/K4 and their moduli prefactors at omega = m = hbar = 1; the phase of
/// k4 is minus the triangle-area difference S - S'.
OscK3K4 osc_K3_K4(double x1, double x2, double x3, double x2p, double t1, double t2,
                  double t3);

/// Q2 (intersection-area closed form) or Q3 for the oscillator. Q3 runs the
/// direct 4D quadrature of K4 by default; covariant_path switches to the
/// pairing-form integral over the intersection-strip coordinates.
double osc_Q(const std::vector<SpacetimeWindow>& windows, const OscParams& params,
             const quad::Options& opt = {}, bool covariant_path = false);

}  // namespace qcond::propagators
