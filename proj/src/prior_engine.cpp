#include "qcond/prior_engine.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "qcond/errors.hpp"
#include "qcond/symplectic.hpp"

namespace qcond::prior {

using Complex = std::complex<double>;

double chain_action(const std::vector<double>& z) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < z.size(); ++k) {
        double term = z[k] * z[k + 1];
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

namespace {

// Cyclic variable sequence of the doubled chain with aliases x1' = x1,
// pm' = pm: x1,p1,...,xm,pm then xm',p_{m-1}',...,p1', as box indices into
// the S1,T1,...,Sm,Tm list. Length 4m - 2.
std::vector<int> cyclic_box_indices(int m) {
    std::vector<int> idx;
    for (int j = 0; j < 2 * m; ++j) idx.push_back(j);
    idx.push_back(2 * m - 2);  // xm'
    for (int j = m - 1; j >= 1; --j) {
        idx.push_back(2 * j - 1);  // pj'
        if (j > 1) idx.push_back(2 * j - 2);  // xj'
    }
    return idx;
}

double kernel_chain_trace(const std::vector<IntervalUnion>& cyc, double hbar,
                          const quad::Options& opt) {
    const int L = static_cast<int>(cyc.size());
    const double root = 1.0 / std::sqrt(2.0 * M_PI * hbar);
    Complex prev{0.0, 0.0};
    bool have_prev = false;
    double value = 0.0;
    for (int order : {32, 48, 64}) {
        std::vector<std::vector<double>> nodes(L), weights(L);
        for (int j = 0; j < L; ++j)
            quad::gl_nodes_on(cyc[j], order, 1, nodes[j], weights[j]);
        Eigen::MatrixXcd prod;
        for (int j = 0; j < L; ++j) {
            int jn = (j + 1) % L;
            double sign = (j % 2 == 0) ? 1.0 : -1.0;
            Eigen::MatrixXcd m(nodes[j].size(), nodes[jn].size());
            for (std::size_t a = 0; a < nodes[j].size(); ++a)
                for (std::size_t b = 0; b < nodes[jn].size(); ++b) {
                    double phi = sign * nodes[j][a] * nodes[jn][b] / hbar;
                    m(a, b) = root * std::sqrt(weights[j][a] * weights[jn][b]) *
                              Complex(std::cos(phi), std::sin(phi));
                }
            prod = (j == 0) ? m : Eigen::MatrixXcd(prod * m);
        }
        Complex trace = prod.trace();
        value = trace.real();
        if (have_prev &&
            std::abs(trace - prev) <= opt.rel_tol * std::abs(trace) + opt.abs_tol)
            return value;
        prev = trace;
        have_prev = true;
    }
    throw QuadratureNotConverged("kernel-chain contraction did not converge");
}

}  // namespace

double q_box(const ChainSpec& chain, bool condition_only, const quad::Options& opt) {
    const int n = chain.rounds();
    if (n < 1 || static_cast<int>(chain.boxes.size()) != 2 * n)
        throw InvalidDimension("chain needs boxes S1,T1,...,Sn,Tn");
    if (chain.hbar <= 0.0) throw InvalidDimension("hbar must be positive");
    const int m = condition_only ? chain.split : n;
    if (m < 1 || m > n) throw InvalidDimension("chain split out of range");
    if (!chain.boxes[0].bounded() || !chain.boxes[1].bounded() ||
        chain.boxes[0].is_empty() || chain.boxes[1].is_empty())
        throw UnboundedConditionSet("S1 and T1 must be bounded and non-null");

    if (m == 1)
        return chain.boxes[0].measure() * chain.boxes[1].measure() /
               (2.0 * M_PI * chain.hbar);

    std::vector<int> idx = cyclic_box_indices(m);
    std::vector<IntervalUnion> cyc;
    for (int j : idx) {
        if (!chain.boxes[j].bounded())
            throw UnboundedRegion("all chain boxes must be bounded for the Q integral");
        cyc.push_back(chain.boxes[j]);
    }
    const int dim = static_cast<int>(cyc.size());
    const double norm = std::pow(2.0 * M_PI * chain.hbar, -(2.0 * m - 1.0));

    if (dim <= 6) {
        double hbar = chain.hbar;
        auto f = [dim, hbar](const double* v) {
            double phi = 0.0;
            for (int j = 0; j < dim; ++j) {
                double term = v[j] * v[(j + 1) % dim];
                phi += (j % 2 == 0) ? term : -term;
            }
            phi /= hbar;
            return Complex(std::cos(phi), std::sin(phi));
        };
        quad::Result res = quad::integrate(cyc, f, opt);
        if (!res.converged)
            throw QuadratureNotConverged("chain quadrature did not converge");
        return norm * res.value.real();
    }
    // The transfer matrices carry one (2 pi hbar)^{-1/2} per edge, which is
    // the full (2 pi hbar)^{-(2m-1)} normalization.
    return kernel_chain_trace(cyc, chain.hbar, opt);
}

double prior_probability_box(const ChainSpec& chain, const quad::Options& opt) {
    const int n = chain.rounds();
    if (chain.split < 1 || chain.split >= n)
        throw InvalidDimension("split must satisfy 1 <= k < n");
    bool outcomes_full = true;
    for (int j = 2 * chain.split; j < 2 * n; ++j)
        if (!chain.boxes[j].is_full_line()) outcomes_full = false;
    if (outcomes_full) return 1.0;

    double den = q_box(chain, true, opt);
    double scale = 1.0;
    for (int j = 0; j < 2 * chain.split; ++j) scale *= chain.boxes[j].measure();
    scale /= std::pow(2.0 * M_PI * chain.hbar, chain.split);
    if (std::abs(den) < 1e-10 * scale)
        throw ZeroDenominator("condition chain trace vanishes");
    return q_box(chain, false, opt) / den;
}

namespace {

struct StripPair {
    Eigen::Vector2d f, g;      // the two alternating functionals
    Eigen::Matrix2d sol_fg;    // maps (r_f, r_g) to the line intersection
    Eigen::Matrix2d sol_gf;
    double pairing;            // sigma(f, g)
};

StripPair strip_pair(const std::vector<regions::GeneratedRegion>& strips) {
    const auto& space = strips[0].space();
    if (space.dim() != 2)
        throw InvalidDimension("q_cov requires a 2-dimensional phase space");
    for (const auto& s : strips)
        if (s.n_generators() != 1)
            throw InvalidDimension("q_cov strips carry exactly one generator each");
    StripPair p;
    p.f = strips[0].generators().col(0);
    p.g = strips[1].generators().col(0);
    for (std::size_t j = 2; j < strips.size(); ++j) {
        const Eigen::Vector2d& ref = (j % 2 == 0) ? p.f : p.g;
        if ((strips[j].generators().col(0) - ref).cwiseAbs().maxCoeff() >
            1e-9 * std::max(1.0, ref.cwiseAbs().maxCoeff()))
            throw DegenerateDirections(
                "strip generators must alternate between two fixed functionals");
    }
    Eigen::Matrix2d sigma = space.form();
    p.pairing = p.f.dot(sigma * p.g);
    double scale = p.f.norm() * p.g.norm();
    if (std::abs(p.pairing) <= 1e-12 * scale)
        throw DegenerateDirections("the two strip functionals are parallel");
    Eigen::Matrix2d rows_fg;
    rows_fg.row(0) = (sigma.transpose() * p.f).transpose();
    rows_fg.row(1) = (sigma.transpose() * p.g).transpose();
    p.sol_fg = rows_fg.inverse();
    Eigen::Matrix2d rows_gf;
    rows_gf.row(0) = rows_fg.row(1);
    rows_gf.row(1) = rows_fg.row(0);
    p.sol_gf = rows_gf.inverse();
    return p;
}

}  // namespace

double q_cov(const std::vector<regions::GeneratedRegion>& strips, double hbar,
             const quad::Options& opt) {
    if (strips.size() < 2 || strips.size() % 2 != 0)
        throw InvalidDimension("q_cov takes an even number of strips (>= 2)");
    if (hbar <= 0.0) throw InvalidDimension("hbar must be positive");
    StripPair pair = strip_pair(strips);
    const int m = static_cast<int>(strips.size()) / 2;
    const double norm = std::pow(2.0 * M_PI * hbar * std::abs(pair.pairing),
                                 -(2.0 * m - 1.0));

    if (!strips[0].box()[0].bounded() || !strips[1].box()[0].bounded())
        throw UnboundedConditionSet("first two strip sets must be bounded");
    if (m == 1)
        return norm * strips[0].box()[0].measure() * strips[1].box()[0].measure();

    std::vector<int> idx = cyclic_box_indices(m);
    std::vector<IntervalUnion> cyc;
    for (int j : idx) cyc.push_back(strips[j].box()[0]);
    const int dim = static_cast<int>(cyc.size());

    Eigen::Matrix2d sigma = strips[0].space().form();
    auto f = [&](const double* r) {
        // Closed polygon of consecutive strip-line intersections; the phase
        // is its sigma-area.
        double area = 0.0;
        Eigen::Vector2d first, prevv;
        for (int j = 0; j < dim; ++j) {
            int jn = (j + 1) % dim;
            const Eigen::Matrix2d& sol = (j % 2 == 0) ? pair.sol_fg : pair.sol_gf;
            Eigen::Vector2d xi = sol * Eigen::Vector2d(r[j], r[jn]);
            if (j == 0)
                first = xi;
            else
                area += 0.5 * prevv.dot(sigma * xi);
            prevv = xi;
        }
        area += 0.5 * prevv.dot(sigma * first);
        double phi = area / hbar;
        return Complex(std::cos(phi), std::sin(phi));
    };
    quad::Result res = quad::integrate(cyc, f, opt);
    if (!res.converged)
        throw QuadratureNotConverged("covariant chain quadrature did not converge");
    return norm * res.value.real();
}

namespace {

struct ModeSlot {
    int generator = -1;  // generator column matched to this mode
    double x = 0.0;      // frame x-coordinate of that generator
    double p = 0.0;      // frame p-coordinate
};

// Matches each region generator to a single mode of the rotated frame;
// mixed-mode generators violate the diagonal normal form.
std::vector<ModeSlot> match_modes(const regions::GeneratedRegion& b,
                                  const symplectic::SymplecticFrame& frame,
                                  const char* which) {
    const auto& space = b.space();
    int n = space.n_modes();
    std::vector<ModeSlot> slots(n);
    for (int g = 0; g < b.n_generators(); ++g) {
        Eigen::VectorXd gen = b.generators().col(g);
        int mode = -1;
        double best = 0.0;
        std::vector<double> xs(n), ps(n);
        for (int k = 0; k < n; ++k) {
            xs[k] = space.form_eval(gen, frame.f.col(k));
            ps[k] = space.form_eval(frame.e.col(k), gen);
            double mag = std::max(std::abs(xs[k]), std::abs(ps[k]));
            if (mag > best) {
                best = mag;
                mode = k;
            }
        }
        for (int k = 0; k < n; ++k) {
            if (k == mode) continue;
            if (std::max(std::abs(xs[k]), std::abs(ps[k])) > 1e-8 * best)
                throw HypothesisViolation(
                    std::string("(3) ") + which +
                    " generators mix normal-form modes; diagonal reduction fails");
        }
        if (slots[mode].generator != -1)
            throw HypothesisViolation(std::string("(3) ") + which +
                                      " assigns two generators to one mode");
        slots[mode] = {g, xs[mode], ps[mode]};
    }
    for (int k = 0; k < n; ++k)
        if (slots[k].generator == -1)
            throw HypothesisViolation(std::string("(3) ") + which +
                                      " leaves a normal-form mode unconstrained");
    return slots;
}

}  // namespace

double finite_dim_Q3(const regions::GeneratedRegion& b1,
                     const regions::GeneratedRegion& b2,
                     const regions::GeneratedRegion& b3, const quad::Options& opt) {
    const auto& space = b1.space();
    const int n = space.n_modes();
    symplectic::TripleNormalForm normal;
    try {
        normal = symplectic::triple_lagrangian_normal_form(
            symplectic::Subspace(space, b1.generators()),
            symplectic::Subspace(space, b2.generators()),
            symplectic::Subspace(space, b3.generators()));
    } catch (const Error& err) {
        throw HypothesisViolation(
            "(1) the three invariance subspaces do not intersect pairwise "
            "trivially: " +
            std::string(err.what()));
    }
    for (const auto* b : {&b1, &b2}) {
        for (const auto& s : b->box())
            if (!s.bounded() || s.is_empty())
                throw HypothesisViolation(
                    "(2) condition boxes must be bounded and non-null");
    }

    std::vector<ModeSlot> s1 = match_modes(b1, normal.frame, "first region");
    std::vector<ModeSlot> s2 = match_modes(b2, normal.frame, "second region");
    std::vector<ModeSlot> s3 = match_modes(b3, normal.frame, "third region");

    double value = 1.0;
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXd g1 = b1.generators().col(s1[k].generator);
        Eigen::VectorXd g2 = b2.generators().col(s2[k].generator);
        Eigen::VectorXd g3 = b3.generators().col(s3[k].generator);
        double e12 = space.form_eval(g1, g2);
        double e23 = space.form_eval(g2, g3);
        double e31 = space.form_eval(g3, g1);
        const IntervalUnion& box1 = b1.box()[s1[k].generator];
        const IntervalUnion& box2 = b2.box()[s2[k].generator];
        const IntervalUnion& box3 = b3.box()[s3[k].generator];
        if (box3.is_full_line()) {
            value *= core::q2_core(e12, box1.measure(), box2.measure());
            continue;
        }
        quad::Result res = core::q3_core(e12, e23, e31, box1, box2, box3, opt);
        if (!res.converged)
            throw QuadratureNotConverged("per-mode Q3 quadrature did not converge");
        value *= res.value.real();
    }
    return value;
}

double finite_dim_prior(const std::vector<regions::GeneratedRegion>& regions,
                        int split, const quad::Options& opt) {
    if (regions.size() != 3 || split != 2)
        throw UnsupportedChainLength(
            "the explicit finite-dimensional formula covers three events with "
            "split 2; route longer chains through the oracle");
    double den = regions::lagrangian_overlap_trace(regions[0], regions[1]);
    if (!(den > 1e-12) || std::isinf(den))
        throw ZeroDenominator("two-event trace is zero or non-finite");
    bool outcome_full = true;
    for (const auto& s : regions[2].box())
        if (!s.is_full_line()) outcome_full = false;
    if (outcome_full) return 1.0;
    return finite_dim_Q3(regions[0], regions[1], regions[2], opt) / den;
}

double kg_commutator(KgModel model, double t1, double t2, const KgParams& params) {
    if (params.m <= 0.0 || params.hbar <= 0.0)
        throw InvalidDimension("params must be positive");
    if (model == KgModel::massless) return params.hbar * (t2 - t1) / params.m;
    if (params.omega <= 0.0) throw InvalidDimension("oscillator model needs omega > 0");
    return params.hbar / (params.m * params.omega) *
           std::sin(params.omega * (t2 - t1));
}

double PairingMatrix::e(int i, int j) const {
    if (i < 1 || i > 3 || j < 1 || j > 3)
        throw InvalidDimension("pairing indices run over 1..3");
    if (i == j) return 0.0;
    if (i == 1) return j == 2 ? e12 : e13;
    if (i == 2) return j == 1 ? -e12 : e23;
    return j == 1 ? -e13 : -e23;
}

std::pair<double, double> kg_project_f3(const PairingMatrix& e) {
    if (e.e12 == 0.0)
        throw DegeneratePairing("projection onto span{f1,f2} needs e12 != 0");
    return {-e.e23 / e.e12, e.e13 / e.e12};
}

double kg_action(const PairingMatrix& e, double r1, double r2, double r3, double r2p) {
    return core::action_core(e.e12, e.e23, -e.e13, r1, r2, r3, r2p);
}

double kg_Q3(const PairingMatrix& e, const IntervalUnion& s1, const IntervalUnion& s2,
             const IntervalUnion& s3, const quad::Options& opt, KgIntegrand variant) {
    if (variant == KgIntegrand::complex_phase) {
        quad::Result res = core::q3_core(e.e12, e.e23, -e.e13, s1, s2, s3, opt);
        if (!res.converged)
            throw QuadratureNotConverged("pairing-form Q3 did not converge");
        return res.value.real();
    }
    double e12 = e.e12, e23 = e.e23, e31 = -e.e13;
    if (e12 == 0.0 || e23 == 0.0 || e31 == 0.0)
        throw DegeneratePairing("all three commutator pairings must be nonzero");
    auto f = [&](const double* r) {
        return Complex(std::cos(core::action_core(e12, e23, e31, r[0], r[1], r[3], r[2])),
                       0.0);
    };
    quad::Result res = quad::integrate({s1, s2, s2, s3}, f, opt);
    if (!res.converged)
        throw QuadratureNotConverged("pairing-form Q3 (cosine) did not converge");
    return res.value.real() / (4.0 * M_PI * M_PI * std::abs(e12) * std::abs(e23));
}

double kg_prior_probability(const PairingMatrix& e, const IntervalUnion& s1,
                            const IntervalUnion& s2, const IntervalUnion& s3,
                            const quad::Options& opt) {
    if (!s1.bounded() || !s2.bounded() || s1.is_empty() || s2.is_empty())
        throw UnboundedConditionSet("S1 and S2 must be bounded and non-null");
    double den = core::q2_core(e.e12, s1.measure(), s2.measure());
    if (den < 1e-12) throw ZeroDenominator("two-event pairing trace vanishes");
    if (s3.is_full_line()) return 1.0;
    return kg_Q3(e, s1, s2, s3, opt) / den;
}

}  // namespace qcond::prior
