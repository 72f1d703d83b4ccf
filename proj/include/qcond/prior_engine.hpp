#pragma once

#include <vector>

#include "qcond/interval.hpp"
#include "qcond/pairing_core.hpp"
#include "qcond/quadrature.hpp"
#include "qcond/regions.hpp"

namespace qcond::prior {

/// Alternating position/momentum measurement rounds: boxes S1,T1,...,Sn,Tn,
/// split k separating condition rounds from outcome rounds.
struct ChainSpec {
    std::vector<IntervalUnion> boxes;
    int split = 1;
    double hbar = 1.0;

    int rounds() const { return static_cast<int>(boxes.size()) / 2; }
};

/// Alternating chain sum S(Z) = sum_{k=1}^{2n-1} (-1)^{k+1} z_k z_{k+1}.
double chain_action(const std::vector<double>& z);

/// Q of the doubled chain integral with endpoint aliases x1' = x1, pn' = pn
/// and one (2 pi hbar)^{-1/2} factor per independent variable. Direct tensor
/// quadrature up to 6 dimensions (n <= 2), kernel-chain contraction above.
/// condition_only truncates the chain to the first `split` rounds.
double q_box(const ChainSpec& chain, bool condition_only = false,
             const quad::Options& opt = {});

/// Q(X x Y) / Q(X); exactly 1 when every outcome box is the full line.
double prior_probability_box(const ChainSpec& chain, const quad::Options& opt = {});

/// Covariant polygon form of q_box: 2n strips in a 2D phase space with
/// single generators alternating between two fixed functionals f, g.
/// The phase is the sigma-area of the closed polygon of strip-line
/// intersections; equals q_box when f, g are the canonical axes.
double q_cov(const std::vector<regions::GeneratedRegion>& strips, double hbar,
             const quad::Options& opt = {});

/// Finite-dimensional three-event trace Q(B1 B2 B3) for Lagrangian
/// observable regions, factorized per mode through the Lagrangian-triple
/// normal form.
double finite_dim_Q3(const regions::GeneratedRegion& b1,
                     const regions::GeneratedRegion& b2,
                     const regions::GeneratedRegion& b3,
                     const quad::Options& opt = {});

/// Q(B1,B2,B3) / Q(B1,B2); the three-event case only.
double finite_dim_prior(const std::vector<regions::GeneratedRegion>& regions,
                        int split, const quad::Options& opt = {});

enum class KgModel { massless, oscillator };

struct KgParams {
    double m = 1.0;
    double omega = 1.0;  // oscillator model only
    double hbar = 1.0;
};

/// Commutator pairing of sharp-time test functions: hbar (t2 - t1) / m for
/// the massless (0+1)d reduction, (hbar / m omega) sin omega (t2 - t1) for
/// the oscillator. Antisymmetric in (t1, t2).
double kg_commutator(KgModel model, double t1, double t2, const KgParams& params);

/// Antisymmetric 3x3 pairing matrix, strict upper triangle stored.
struct PairingMatrix {
    double e12 = 0.0;
    double e13 = 0.0;
    double e23 = 0.0;

    double e(int i, int j) const;  // 1-based, antisymmetric extension
};

/// Coefficients (a1, a2) of the projection [f3] = a1 f1 + a2 f2 modulo the
/// kernel of the pairing with span{f1, f2}.
std::pair<double, double> kg_project_f3(const PairingMatrix& e);

/// Doubled-chain phase in pairing form; equals the signed-area difference of
/// the two measurement-line triangles.
double kg_action(const PairingMatrix& e, double r1, double r2, double r3, double r2p);

enum class KgIntegrand { complex_phase, cosine };

/// Q3 in pairing form. The cosine variant replaces e^{-i action} by
/// cos(action); both give the same value (the imaginary part integrates
/// to zero) and serve as a cross-check.
double kg_Q3(const PairingMatrix& e, const IntervalUnion& s1, const IntervalUnion& s2,
             const IntervalUnion& s3, const quad::Options& opt = {},
             KgIntegrand variant = KgIntegrand::complex_phase);

/// Q3 / Q2. Pairings carry their hbar factors (kg_commutator already
/// includes hbar); no separate hbar argument would be consistent.
double kg_prior_probability(const PairingMatrix& e, const IntervalUnion& s1,
                            const IntervalUnion& s2, const IntervalUnion& s3,
                            const quad::Options& opt = {});

}  // namespace qcond::prior
