// Acceptance suite: each criterion prints one [PASS]/[FAIL] line. Run with a
// criterion number 1..10 or with no argument for the whole list.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qcond/errors.hpp"
#include "qcond/grid_oracle.hpp"
#include "qcond/pairing_core.hpp"
#include "qcond/prior_engine.hpp"
#include "qcond/propagators.hpp"
#include "qcond/regions.hpp"
#include "qcond/scenario.hpp"
#include "qcond/symplectic.hpp"

using namespace qcond;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& why) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += why;
        }
    }
    void note(const std::string& info) {
        if (!detail.empty()) detail += "; ";
        detail += info;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

regions::GeneratedRegion strip(const symplectic::SymplecticSpace& space, double fx,
                               double fp, IntervalUnion s) {
    Eigen::MatrixXd g(2, 1);
    g << fx, fp;
    return regions::GeneratedRegion(space, g, {std::move(s)});
}

// 1. Product-of-measures trace law on the grid, error non-increasing in N.
Check criterion1() {
    Check c;
    double exact = 1.0 / (2.0 * M_PI);
    std::vector<double> errs;
    for (int n : {256, 512, 1024, 2048}) {
        oracle::Oracle o({n, 40.0, 1.0});
        double t = o.pair_trace({oracle::ObservableDescriptor::position(),
                                 IntervalUnion(0, 1)},
                                {oracle::ObservableDescriptor::momentum(),
                                 IntervalUnion(0, 1)});
        errs.push_back(std::abs(t - exact) / exact);
    }
    c.note("rel errors " + fmt(errs[0]) + " " + fmt(errs[1]) + " " + fmt(errs[2]) +
           " " + fmt(errs[3]));
    c.require(errs[2] <= 0.01, "error at N=1024 above 1%");
    for (std::size_t i = 1; i < errs.size(); ++i)
        c.require(errs[i] <= errs[i - 1] + 1e-12, "error grew with N");
    return c;
}

// 2. Box-chain formula vs grid oracle on five two-round and two three-round
// scenarios.
Check criterion2() {
    Check c;
    const std::string numerics =
        R"("numerics": {"grid_n": 2048, "grid_l": 60, "rel_tol": 1e-4}})";
    std::vector<std::string> bodies = {
        R"([{"set":[[0,1]]},{"set":[[0,1]]},{"set":[[0,1]]},{"set":[[0,1]]}], "split":1,)",
        R"([{"set":[[-1,0]]},{"set":[[0,1]]},{"set":[[-0.5,0.5]]},{"set":[[0,1]]}], "split":1,)",
        R"([{"set":[[0,1]]},{"set":[[-1,0]]},{"set":[[0,1]]},{"set":[[-1,0]]}], "split":1,)",
        R"([{"set":[[-0.5,0.5]]},{"set":[[-0.5,0.5]]},{"set":[[0,1]]},{"set":[[-1,0]]}], "split":1,)",
        R"([{"set":[[0,1]]},{"set":[[0,1]]},{"set":[[-1,-0.5],[0.5,1]]},{"set":[[0,1]]}], "split":1,)",
        R"([{"set":[[-0.5,0.5]]},{"set":[[-0.5,0.5]]},{"set":[[-0.5,0.5]]},{"set":[[-0.5,0.5]]},{"set":[[-0.5,0.5]]},{"set":[[-0.5,0.5]]}], "split":2,)",
        R"([{"set":[[0,1]]},{"set":[[0,1]]},{"set":[[-0.5,0.5]]},{"set":[[-0.5,0.5]]},{"set":[[-1,0]]},{"set":[[0,1]]}], "split":2,)"};
    double worst = 0.0;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        auto cfg = scenario::parse_config(
            R"({"model":"weyl_chain","method":"both","measurements":)" + bodies[i] +
            numerics);
        auto report = scenario::run_scenario(cfg);
        worst = std::max(worst, report.discrepancy);
        c.require(report.discrepancy <= 0.02,
                  "scenario " + std::to_string(i + 1) + " discrepancy " +
                      fmt(report.discrepancy));
    }
    c.note("worst discrepancy " + fmt(worst));
    return c;
}

// 3. Covariant strip form equals the box chain and is stable under sheared
// re-parametrizations of the same physical sets.
Check criterion3() {
    Check c;
    auto space = symplectic::SymplecticSpace::canonical(1);
    quad::Options opt;
    opt.rel_tol = 1e-5;
    std::vector<std::vector<IntervalUnion>> box_lists = {
        {IntervalUnion(0, 1), IntervalUnion(0, 1), IntervalUnion(-1, 1),
         IntervalUnion(-1, 1)},
        {IntervalUnion(-0.5, 0.5), IntervalUnion(0, 1), IntervalUnion(-1, 0),
         IntervalUnion(0, 1)}};
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (std::size_t s = 0; s < box_lists.size(); ++s) {
        const auto& boxes = box_lists[s];
        prior::ChainSpec chain{boxes, 1, 1.0};
        double qb = prior::q_box(chain, false, opt);
        std::vector<regions::GeneratedRegion> strips;
        for (std::size_t j = 0; j < boxes.size(); ++j)
            strips.push_back(j % 2 == 0 ? strip(space, 0, -1, boxes[j])
                                        : strip(space, 1, 0, boxes[j]));
        double qc = prior::q_cov(strips, 1.0, opt);
        c.require(std::abs(qc - qb) <= 1e-3 * std::abs(qb),
                  "canonical-axis mismatch " + fmt(std::abs(qc - qb) / std::abs(qb)));
        for (int k = 0; k < 10; ++k) {
            Eigen::MatrixXd shear = Eigen::MatrixXd::Identity(2, 2);
            double lam = u(rng);
            if (k % 2 == 0)
                shear(0, 1) = lam;
            else
                shear(1, 0) = lam;
            Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
            std::vector<regions::GeneratedRegion> moved;
            for (const auto& st : strips) moved.push_back(st.transformed(shear, zero));
            double qm = prior::q_cov(moved, 1.0, opt);
            c.require(std::abs(qm - qb) <= 1e-2 * std::abs(qb),
                      "shear " + std::to_string(k) + " scenario " + std::to_string(s) +
                          " deviation " + fmt(std::abs(qm - qb) / std::abs(qb)));
        }
    }
    return c;
}

// 4. Four-kernel factorization through two three-kernel products; oscillator
// modulus decomposition.
Check criterion4() {
    Check c;
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    std::uniform_real_distribution<double> ut(0.3, 1.2);
    propagators::OscParams params{1.3, 0.0, 0.7};
    double worst_free = 0.0, worst_osc = 0.0;
    for (int i = 0; i < 100; ++i) {
        double x1 = ux(rng), x2 = ux(rng), x3 = ux(rng), x2p = ux(rng);
        double t1 = 0.5 * ux(rng), t2 = t1 + ut(rng), t3 = t2 + ut(rng);
        auto k3 = propagators::free_K3(x1, x2, x3, t1, t2, t3, params);
        auto k3p = propagators::free_K3(x1, x2p, x3, t1, t2, t3, params);
        auto k4 = propagators::free_K4(x1, x2, x3, x2p, t1, t2, t3, params);
        auto rhs = 2.0 * M_PI * params.hbar * std::abs(t1 - t3) / params.m * k3 *
                   std::conj(k3p);
        worst_free = std::max(worst_free, std::abs(k4 - rhs) / std::abs(k4));

        auto osc = propagators::osc_K3_K4(x1, x2, x3, x2p, t1, t2, t3);
        worst_osc = std::max(
            worst_osc, std::abs(std::abs(osc.k4) - osc.r4) / std::abs(osc.k4));
        auto osc_rhs =
            2.0 * M_PI * std::abs(std::sin(t1 - t3)) * osc.k3 * std::conj(
                propagators::osc_K3_K4(x1, x2p, x3, x2p, t1, t2, t3).k3);
        worst_osc = std::max(worst_osc,
                             std::abs(osc.k4 - osc_rhs) / std::abs(osc.k4));
    }
    c.note("free " + fmt(worst_free) + ", osc " + fmt(worst_osc));
    c.require(worst_free <= 1e-10, "free factorization residual " + fmt(worst_free));
    c.require(worst_osc <= 1e-10, "oscillator decomposition residual " + fmt(worst_osc));
    return c;
}

// 5. Boost invariance: exact for the triangle action, within quadrature
// tolerance for the three-window trace.
Check criterion5() {
    Check c;
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_action = 0.0;
    for (int i = 0; i < 100; ++i) {
        double x1 = 2 * u(rng), x2 = 2 * u(rng), x3 = 2 * u(rng);
        double t1 = u(rng), t2 = t1 + 0.5 + std::abs(u(rng)), t3 = t2 + 0.5 +
                                                                   std::abs(u(rng));
        double s0 = propagators::free_triangle_action(x1, x2, x3, t1, t2, t3);
        double x0 = u(rng), v = u(rng);
        double s1 = propagators::free_triangle_action(
            x1 + x0 + v * t1, x2 + x0 + v * t2, x3 + x0 + v * t3, t1, t2, t3);
        worst_action = std::max(worst_action,
                                std::abs(s1 - s0) / std::max(1.0, std::abs(s0)));
    }
    c.require(worst_action <= 1e-12, "action drift " + fmt(worst_action));

    propagators::OscParams params{1.0, 0.0, 1.0};
    std::vector<double> times{0.0, 1.0, 2.0};
    std::vector<IntervalUnion> sets{IntervalUnion(0, 1), IntervalUnion(-0.5, 0.5),
                                    IntervalUnion(-1, 0)};
    quad::Options opt;
    opt.rel_tol = 1e-4;
    auto q_of = [&](double x0, double v) {
        std::vector<propagators::SpacetimeWindow> w;
        for (int j = 0; j < 3; ++j)
            w.push_back({times[j], sets[j].scaled(1.0, x0 + v * times[j])});
        return propagators::galilei_Q(w, params, opt);
    };
    double base = q_of(0.0, 0.0);
    double worst_q = 0.0;
    for (int i = 0; i < 20; ++i)
        worst_q = std::max(worst_q,
                           std::abs(q_of(u(rng), u(rng)) - base) / std::abs(base));
    c.note("Q3 drift " + fmt(worst_q));
    c.require(worst_q <= 1e-2, "boosted Q3 drift " + fmt(worst_q));
    return c;
}

// 6. Oscillator probability vs rotated-quadrature oracle at N = 2048; exact
// two-window value against the strip-overlap trace.
Check criterion6() {
    Check c;
    auto cfg = scenario::parse_config(R"({
        "model": "oscillator", "method": "both", "split": 2,
        "params": {"m": 1.0, "omega": 1.0, "hbar": 1.0},
        "measurements": [
            {"set": [[-0.5, 0.5]], "time": 0.0},
            {"set": [[-0.5, 0.5]], "time": 1.0471975511965976},
            {"set": [[-0.5, 0.5]], "time": 2.0943951023931953}],
        "numerics": {"grid_n": 2048, "grid_l": 40, "rel_tol": 1e-4}})");
    auto report = scenario::run_scenario(cfg);
    c.note("discrepancy " + fmt(report.discrepancy));
    c.require(report.discrepancy <= 0.02,
              "formula/oracle discrepancy " + fmt(report.discrepancy));

    // Q2 closed form against the phase-space strip intersection measure.
    auto space = symplectic::SymplecticSpace::canonical(1);
    double t2 = M_PI / 3;
    auto b1 = strip(space, std::sin(0.0), -std::cos(0.0), IntervalUnion(-0.5, 0.5));
    auto b2 = strip(space, std::sin(t2), -std::cos(t2), IntervalUnion(-0.5, 0.5));
    double overlap = regions::lagrangian_overlap_trace(b1, b2);
    c.require(std::abs(report.formula.q_den - overlap) <= 1e-12,
              "Q2 differs from the strip overlap trace");
    return c;
}

// 7. Finite-dimensional trace: symplectic invariance, oracle agreement and
// normal-form reconstruction.
Check criterion7() {
    Check c;
    auto space = symplectic::SymplecticSpace::canonical(1);
    IntervalUnion s(-1, 1);
    std::vector<regions::GeneratedRegion> regs{
        strip(space, 1, 0, s), strip(space, 0, 1, s), strip(space, 1, 1, s)};
    quad::Options opt;
    opt.rel_tol = 1e-4;
    double base = prior::finite_dim_Q3(regs[0], regs[1], regs[2], opt);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        double a = 0.0;
        while (std::abs(a) < 0.4) a = u(rng) + (u(rng) > 0 ? 1.0 : -1.0);
        double b = u(rng), cc = u(rng);
        Eigen::MatrixXd m(2, 2);
        m << a, b, cc, (1.0 + b * cc) / a;
        Eigen::VectorXd t(2);
        t << u(rng), u(rng);
        double moved = prior::finite_dim_Q3(regs[0].transformed(m, t),
                                            regs[1].transformed(m, t),
                                            regs[2].transformed(m, t), opt);
        worst = std::max(worst, std::abs(moved - base) / std::abs(base));
    }
    c.note("Sp(2) drift " + fmt(worst));
    c.require(worst <= 1e-2, "Sp(2) invariance drift " + fmt(worst));

    auto cfg = scenario::parse_config(R"({
        "model": "finite_dim", "method": "both", "split": 2,
        "regions": [{"generators": [[1, 0]], "boxes": [[[-1, 1]]]},
                    {"generators": [[0, 1]], "boxes": [[[-1, 1]]]},
                    {"generators": [[1, 1]], "boxes": [[[-1, 1]]]}],
        "numerics": {"grid_n": 1024, "grid_l": 40, "rel_tol": 1e-4}})");
    auto report = scenario::run_scenario(cfg);
    c.note("oracle discrepancy " + fmt(report.discrepancy));
    c.require(report.discrepancy <= 0.02,
              "oracle discrepancy " + fmt(report.discrepancy));

    // Normal-form reconstruction on random transverse graph triples.
    int done = 0;
    double worst_sym = 0.0, worst_diag = 0.0, worst_graph = 0.0;
    while (done < 100) {
        int n = 1 + done % 3;
        auto sp = symplectic::SymplecticSpace::canonical(n);
        auto rand_sym = [&]() {
            Eigen::MatrixXd a =
                Eigen::MatrixXd::NullaryExpr(n, n, [&]() { return u(rng); });
            return ((a + a.transpose()) / 2).eval();
        };
        Eigen::MatrixXd a1 = rand_sym(), a2 = rand_sym(), a3 = rand_sym();
        if (std::abs((a1 - a2).determinant()) < 0.05 ||
            std::abs((a1 - a3).determinant()) < 0.05 ||
            std::abs((a2 - a3).determinant()) < 0.05)
            continue;
        auto graph = [&](const Eigen::MatrixXd& a) {
            Eigen::MatrixXd g(2 * n, n);
            g.topRows(n) = Eigen::MatrixXd::Identity(n, n);
            g.bottomRows(n) = a;
            return symplectic::Subspace(sp, g);
        };
        auto w1 = graph(a1), w2 = graph(a2), w3 = graph(a3);
        auto nf = symplectic::triple_lagrangian_normal_form(w1, w2, w3);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                double want = k == l ? 1.0 : 0.0;
                worst_sym = std::max(
                    worst_sym,
                    std::abs(sp.form_eval(nf.frame.e.col(k), nf.frame.f.col(l)) -
                             want));
            }
        worst_graph = std::max(
            worst_graph,
            (nf.graph_matrix - nf.graph_matrix.transpose()).cwiseAbs().maxCoeff());
        Eigen::MatrixXd d = nf.rotation * nf.graph_matrix * nf.rotation.transpose();
        worst_diag = std::max(
            worst_diag,
            (d - Eigen::MatrixXd(d.diagonal().asDiagonal())).cwiseAbs().maxCoeff());
        for (int k = 0; k < n; ++k) {
            Eigen::VectorXd v = nf.frame.e.col(k) + nf.diagonal[k] * nf.frame.f.col(k);
            if (!w3.contains(v, 1e-8)) {
                c.require(false, "normal-form vector left w3");
                break;
            }
        }
        ++done;
    }
    c.require(worst_sym <= 1e-10, "frame pairing residual " + fmt(worst_sym));
    c.require(worst_graph <= 1e-10, "graph symmetry residual " + fmt(worst_graph));
    c.require(worst_diag <= 1e-9, "diagonalization residual " + fmt(worst_diag));
    return c;
}

// 8. Pairing-form probability against the free-particle and oscillator
// closed dynamics; cosine vs complex-phase integrand.
Check criterion8() {
    Check c;
    quad::Options opt;
    opt.rel_tol = 1e-4;

    std::vector<double> times{0.0, 1.0, 2.0};
    std::vector<IntervalUnion> sets{IntervalUnion(0, 1), IntervalUnion(-0.5, 0.5),
                                    IntervalUnion(-1, 0)};
    propagators::OscParams free_params{1.0, 0.0, 1.0};
    std::vector<propagators::SpacetimeWindow> w;
    for (int j = 0; j < 3; ++j) w.push_back({times[j], sets[j]});
    double p_free =
        propagators::galilei_Q(w, free_params, opt) /
        propagators::galilei_Q({w[0], w[1]}, free_params, opt);
    prior::KgParams kgp{1.0, 1.0, 1.0};
    prior::PairingMatrix e_free{
        prior::kg_commutator(prior::KgModel::massless, times[0], times[1], kgp),
        prior::kg_commutator(prior::KgModel::massless, times[0], times[2], kgp),
        prior::kg_commutator(prior::KgModel::massless, times[1], times[2], kgp)};
    double p_kg_free =
        prior::kg_prior_probability(e_free, sets[0], sets[1], sets[2], opt);
    c.note("free " + fmt(p_free) + " vs pairing " + fmt(p_kg_free));
    c.require(std::abs(p_kg_free - p_free) <= 0.02 * std::abs(p_free),
              "massless pairing prior deviates from the free value");

    std::vector<double> osc_times{0.0, M_PI / 3, 2 * M_PI / 3};
    IntervalUnion s(-0.5, 0.5);
    propagators::OscParams osc_params{1.0, 1.0, 1.0};
    std::vector<propagators::SpacetimeWindow> ow;
    for (double t : osc_times) ow.push_back({t, s});
    double p_osc = propagators::osc_Q(ow, osc_params, opt) /
                   propagators::osc_Q({ow[0], ow[1]}, osc_params, opt);
    prior::PairingMatrix e_osc{
        prior::kg_commutator(prior::KgModel::oscillator, osc_times[0], osc_times[1], kgp),
        prior::kg_commutator(prior::KgModel::oscillator, osc_times[0], osc_times[2], kgp),
        prior::kg_commutator(prior::KgModel::oscillator, osc_times[1], osc_times[2],
                             kgp)};
    double p_kg_osc = prior::kg_prior_probability(e_osc, s, s, s, opt);
    c.note("osc " + fmt(p_osc) + " vs pairing " + fmt(p_kg_osc));
    c.require(std::abs(p_kg_osc - p_osc) <= 0.02 * std::abs(p_osc),
              "oscillator pairing prior deviates from the harmonic value");

    for (const auto& e : {e_free, e_osc}) {
        double a = prior::kg_Q3(e, sets[0], sets[1], sets[2], opt,
                                prior::KgIntegrand::complex_phase);
        double b = prior::kg_Q3(e, sets[0], sets[1], sets[2], opt,
                                prior::KgIntegrand::cosine);
        c.require(std::abs(a - b) <= 1e-3 * std::abs(a),
                  "integrand variants differ by " + fmt(std::abs(a - b) / std::abs(a)));
    }
    return c;
}

// 9. Range, exact unit normalization and outcome-shrinkage monotonicity.
Check criterion9() {
    Check c;
    quad::Options opt;
    opt.rel_tol = 1e-4;
    std::vector<double> collected;

    prior::ChainSpec full_out{{IntervalUnion(0, 1), IntervalUnion(0, 1),
                               IntervalUnion::full_line(), IntervalUnion::full_line()},
                              1, 1.0};
    c.require(prior::prior_probability_box(full_out, opt) == 1.0,
              "full-range outcome is not exactly 1");

    prior::ChainSpec boxes{{IntervalUnion(0, 1), IntervalUnion(0, 1),
                            IntervalUnion(-1, 1), IntervalUnion(-1, 1)},
                           1, 1.0};
    collected.push_back(prior::prior_probability_box(boxes, opt));

    propagators::OscParams free_params{1.0, 0.0, 1.0};
    std::vector<double> times{0.0, 1.0, 2.0};
    std::vector<propagators::SpacetimeWindow> base{
        {times[0], IntervalUnion(0, 1)}, {times[1], IntervalUnion(-0.5, 0.5)}};
    double den = propagators::galilei_Q(base, free_params, opt);
    std::vector<double> ladder;
    for (double h : {3.0, 2.0, 1.0, 0.5}) {
        auto w = base;
        w.push_back({times[2], IntervalUnion(-h, h)});
        double p = propagators::galilei_Q(w, free_params, opt) / den;
        ladder.push_back(p);
        collected.push_back(p);
    }
    for (std::size_t i = 1; i < ladder.size(); ++i)
        c.require(ladder[i] <= ladder[i - 1] + 2e-3,
                  "ladder step " + std::to_string(i) + " increased");

    prior::PairingMatrix e{1.0, 2.0, 1.0};
    collected.push_back(prior::kg_prior_probability(e, IntervalUnion(-1, 1),
                                                    IntervalUnion(-1, 1),
                                                    IntervalUnion(-1, 1), opt));
    for (double p : collected)
        c.require(p >= -1e-3 && p <= 1.0 + 1e-3, "probability " + fmt(p) + " out of range");
    return c;
}

// 10. Spread of state-conditioned probabilities shrinks with the first set.
Check criterion10() {
    Check c;
    oracle::GridSpec grid{1024, 40.0, 1.0};
    oracle::Oracle o(grid);
    std::vector<oracle::DensityOperator> rhos{
        oracle::DensityOperator::ground_state(grid),
        oracle::DensityOperator::thermal_like(grid, 4, 1.0),
        oracle::DensityOperator::displaced_gaussian(grid, 1.0, 0.5)};
    std::vector<double> spreads;
    for (double width : {1.0, 0.5, 0.25}) {
        oracle::ProjectionChainSpec chain{
            {{oracle::ObservableDescriptor::position(),
              IntervalUnion(-width / 2, width / 2)},
             {oracle::ObservableDescriptor::momentum(), IntervalUnion(0, 1)},
             {oracle::ObservableDescriptor::position(), IntervalUnion(-1, 1)},
             {oracle::ObservableDescriptor::momentum(), IntervalUnion(-1, 1)}},
            2};
        double lo = 2.0, hi = -1.0;
        for (const auto& rho : rhos) {
            double p = oracle::conditional_probability(o, rho, chain);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
        spreads.push_back(hi - lo);
    }
    c.note("spreads " + fmt(spreads[0]) + " " + fmt(spreads[1]) + " " + fmt(spreads[2]));
    c.require(spreads[1] < spreads[0], "spread did not shrink at width 0.5");
    c.require(spreads[2] < spreads[1], "spread did not shrink at width 0.25");
    return c;
}

struct Criterion {
    const char* title;
    std::function<Check()> run;
};

const std::vector<Criterion> kCriteria = {
    {"grid trace of two spectral projections matches the measure product", criterion1},
    {"box-chain formula agrees with the grid oracle (5 two-round, 2 three-round)",
     criterion2},
    {"covariant strip form equals the box chain and survives shears", criterion3},
    {"four-kernel factorization and modulus decomposition", criterion4},
    {"boost invariance of the triangle action and three-window trace", criterion5},
    {"oscillator probability vs rotated-quadrature oracle at N=2048", criterion6},
    {"finite-dimensional invariance, oracle match and normal form", criterion7},
    {"pairing-form probabilities match both dynamics; integrand variants agree",
     criterion8},
    {"probability range, exact normalization and shrinkage monotonicity", criterion9},
    {"state dependence vanishes as the first set shrinks", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    bool all_ok = true;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        int idx = static_cast<int>(i) + 1;
        if (only != 0 && only != idx) continue;
        Check c;
        try {
            c = kCriteria[i].run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.note(std::string("exception: ") + e.what());
        }
        std::printf("[%s] criterion %d: %s%s%s\n", c.ok ? "PASS" : "FAIL", idx,
                    kCriteria[i].title, c.detail.empty() ? "" : " -- ",
                    c.detail.c_str());
        all_ok = all_ok && c.ok;
    }
    return all_ok ? 0 : 1;
}
