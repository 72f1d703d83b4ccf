#include "qcond/grid_oracle.hpp"

#include <fftw3.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

#include "qcond/errors.hpp"

namespace qcond::oracle {

namespace {

constexpr double kDenominatorCutoff = 1e-12;

double cell_overlap(const IntervalUnion& s, double lo, double hi) {
    return s.intersect(IntervalUnion(lo, hi)).measure() / (hi - lo);
}

}  // namespace

void GridSpec::validate() const {
    if (n_points < 64 || (n_points & (n_points - 1)) != 0)
        throw InvalidGrid("n_points must be a power of two >= 64");
    if (extent <= 0.0 || hbar <= 0.0)
        throw InvalidGrid("extent and hbar must be positive");
}

struct Oracle::Workspace {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    int n = 0;

    explicit Workspace(int n_points) : n(n_points) {
        buf = fftw_alloc_complex(n);
        fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Workspace() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }

    void run(VectorXcd& psi, bool forward) {
        auto* data = reinterpret_cast<std::complex<double>*>(buf);
        for (int i = 0; i < n; ++i) data[i] = psi[i];
        fftw_execute(forward ? fwd : bwd);
        for (int i = 0; i < n; ++i) psi[i] = data[i];
    }
};

Oracle::Oracle(GridSpec grid, EdgeRule edge) : grid_(grid), edge_(edge) {
    grid_.validate();
    ws_ = std::make_unique<Workspace>(grid_.n_points);
}

Oracle::~Oracle() = default;

std::vector<double> Oracle::event_weights(const ChainEvent& ev) const {
    const int n = grid_.n_points;
    std::vector<double> w(n, 0.0);
    if (ev.obs.is_position()) {
        // Observable a Q: eigenvalue a x_j, cell width |a| dx.
        double half = 0.5 * grid_.dx() * std::abs(ev.obs.a);
        for (int j = 0; j < n; ++j) {
            double lambda = ev.obs.a * grid_.x(j);
            w[j] = edge_ == EdgeRule::sharp
                       ? (ev.set.contains(lambda) ? 1.0 : 0.0)
                       : cell_overlap(ev.set, lambda - half, lambda + half);
        }
    } else if (ev.obs.is_momentum()) {
        double half = 0.5 * grid_.dp() * std::abs(ev.obs.b);
        for (int k = 0; k < n; ++k) {
            double lambda = ev.obs.b * grid_.p(k);
            w[k] = edge_ == EdgeRule::sharp
                       ? (ev.set.contains(lambda) ? 1.0 : 0.0)
                       : cell_overlap(ev.set, lambda - half, lambda + half);
        }
    } else {
        const auto& [vals, vecs] = linear_eig(ev.obs.a, ev.obs.b);
        for (int i = 0; i < n; ++i) {
            if (edge_ == EdgeRule::sharp) {
                w[i] = ev.set.contains(vals[i]) ? 1.0 : 0.0;
                continue;
            }
            // Cell between midpoints of neighboring (sorted) eigenvalues.
            double lo = i == 0 ? vals[0] - 0.5 * (vals[1] - vals[0])
                               : 0.5 * (vals[i - 1] + vals[i]);
            double hi = i == n - 1 ? vals[n - 1] + 0.5 * (vals[n - 1] - vals[n - 2])
                                   : 0.5 * (vals[i] + vals[i + 1]);
            w[i] = hi > lo ? cell_overlap(ev.set, lo, hi) : 0.0;
        }
    }
    return w;
}

const std::pair<VectorXd, MatrixXcd>& Oracle::linear_eig(double a, double b) const {
    auto key = std::make_pair(a, b);
    auto it = eig_cache_.find(key);
    if (it != eig_cache_.end()) return it->second;

    const int n = grid_.n_points;
    // P is circulant in the position basis: P_{jk} = c_{(j-k) mod n} with
    // c = inverse DFT of the signed momentum grid.
    VectorXcd c(n);
    for (int i = 0; i < n; ++i) c[i] = grid_.p(i);
    ws_->run(c, false);
    c /= static_cast<double>(n);

    MatrixXcd h(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) h(j, k) = b * c[(j - k + n) % n];
    for (int j = 0; j < n; ++j) h(j, j) += a * grid_.x(j);

    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw InvalidGrid("eigendecomposition of the quadrature observable failed");
    auto [pos, ok] =
        eig_cache_.emplace(key, std::make_pair(es.eigenvalues(), es.eigenvectors()));
    return pos->second;
}

void Oracle::apply(const ChainEvent& ev, VectorXcd& psi) const {
    const int n = grid_.n_points;
    if (psi.size() != n) throw InvalidGrid("state length does not match grid");
    std::vector<double> w = event_weights(ev);
    if (ev.obs.is_position()) {
        for (int j = 0; j < n; ++j) psi[j] *= w[j];
    } else if (ev.obs.is_momentum()) {
        ws_->run(psi, true);
        for (int k = 0; k < n; ++k) psi[k] *= w[k];
        ws_->run(psi, false);
        psi /= static_cast<double>(n);
    } else {
        const auto& [vals, vecs] = linear_eig(ev.obs.a, ev.obs.b);
        VectorXcd coeffs = vecs.adjoint() * psi;
        for (int i = 0; i < n; ++i) coeffs[i] *= w[i];
        psi = vecs * coeffs;
    }
}

Oracle::RangeBasis Oracle::range_basis(const ChainEvent& ev) const {
    const int n = grid_.n_points;
    std::vector<double> w = event_weights(ev);
    RangeBasis basis;
    for (int i = 0; i < n; ++i) {
        if (w[i] <= 0.0) continue;
        VectorXcd v = VectorXcd::Zero(n);
        if (ev.obs.is_position()) {
            v[i] = 1.0;
        } else if (ev.obs.is_momentum()) {
            v[i] = 1.0;
            ws_->run(v, false);
            v /= std::sqrt(static_cast<double>(n));
        } else {
            v = linear_eig(ev.obs.a, ev.obs.b).second.col(i);
        }
        basis.vectors.push_back(std::move(v));
        basis.weights.push_back(w[i]);
    }
    return basis;
}

MatrixXcd Oracle::projection_matrix(const ChainEvent& ev) const {
    const int n = grid_.n_points;
    MatrixXcd m(n, n);
    for (int j = 0; j < n; ++j) {
        VectorXcd e = VectorXcd::Zero(n);
        e[j] = 1.0;
        apply(ev, e);
        m.col(j) = e;
    }
    return m;
}

MatrixXcd Oracle::position_matrix() const {
    const int n = grid_.n_points;
    MatrixXcd q = MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) q(j, j) = grid_.x(j);
    return q;
}

MatrixXcd Oracle::momentum_matrix() const {
    const int n = grid_.n_points;
    VectorXcd c(n);
    for (int i = 0; i < n; ++i) c[i] = grid_.p(i);
    ws_->run(c, false);
    c /= static_cast<double>(n);
    MatrixXcd p(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) p(j, k) = c[(j - k + n) % n];
    return p;
}

double Oracle::pair_trace(const ChainEvent& e1, const ChainEvent& e2) const {
    RangeBasis basis = range_basis(e1);
    double trace = 0.0;
    for (std::size_t i = 0; i < basis.vectors.size(); ++i) {
        VectorXcd v = basis.vectors[i];
        apply(e2, v);
        trace += basis.weights[i] * basis.vectors[i].dot(v).real();
    }
    return trace;
}

double Oracle::chain_trace(const std::vector<ChainEvent>& events) const {
    if (events.empty()) throw InvalidDimension("chain needs at least one event");
    if (!events[0].set.bounded() || events[0].set.is_empty())
        throw UnboundedFirstSet("first event's set must be bounded and non-null");
    // Tr A^dagger A for A = E_n ... E_1 reduces by idempotency of the
    // continuum projections to Tr E_1 E_2 ... E_n ... E_2: first and last
    // events enter once, middle events twice. Honoring that reduction keeps
    // fractional boundary weights consistent (weight f, never f^2).
    // Full-line events are the identity and would defeat the adjacent-square
    // reduction below; drop them first.
    std::vector<ChainEvent> kept;
    for (const auto& ev : events)
        if (!ev.set.is_full_line()) kept.push_back(ev);
    RangeBasis basis = range_basis(kept[0]);  // never empty: events[0] is bounded
    double trace = 0.0;
    for (std::size_t i = 0; i < basis.vectors.size(); ++i) {
        VectorXcd v = basis.vectors[i];
        for (std::size_t e = 1; e + 1 < kept.size(); ++e) apply(kept[e], v);
        if (kept.size() == 1) {
            trace += basis.weights[i];
        } else {
            VectorXcd w = v;
            apply(kept.back(), w);
            trace += basis.weights[i] * v.dot(w).real();
        }
    }
    return trace;
}

namespace {

VectorXcd normalized_gaussian(const GridSpec& grid, double x0, double p0, double m,
                              double omega) {
    VectorXcd psi(grid.n_points);
    double alpha = m * omega / (2.0 * grid.hbar);
    for (int j = 0; j < grid.n_points; ++j) {
        double x = grid.x(j);
        double phase = p0 * x / grid.hbar;
        psi[j] = std::exp(-alpha * (x - x0) * (x - x0)) *
                 std::complex<double>(std::cos(phase), std::sin(phase));
    }
    psi.normalize();
    return psi;
}

}  // namespace

DensityOperator DensityOperator::ground_state(const GridSpec& grid, double m,
                                              double omega) {
    DensityOperator rho;
    rho.weights = {1.0};
    rho.states = {normalized_gaussian(grid, 0.0, 0.0, m, omega)};
    return rho;
}

DensityOperator DensityOperator::thermal_like(const GridSpec& grid, int levels,
                                              double beta, double m, double omega) {
    if (levels < 1) throw InvalidDimension("thermal mixture needs at least one level");
    DensityOperator rho;
    double scale = std::sqrt(m * omega / grid.hbar);
    std::vector<VectorXd> hermite(levels, VectorXd(grid.n_points));
    for (int j = 0; j < grid.n_points; ++j) {
        double xi = scale * grid.x(j);
        double h0 = 1.0, h1 = 2.0 * xi;
        for (int n = 0; n < levels; ++n) {
            double value = n == 0 ? h0 : h1;
            hermite[n][j] = value * std::exp(-0.5 * xi * xi);
            if (n >= 1) {
                double h2 = 2.0 * xi * h1 - 2.0 * n * h0;
                h0 = h1;
                h1 = h2;
            }
        }
    }
    double norm = 0.0;
    for (int n = 0; n < levels; ++n) {
        VectorXcd state = hermite[n].cast<std::complex<double>>();
        // Grid-level re-orthogonalization against the lower levels.
        for (const auto& prev : rho.states) state -= prev * prev.dot(state);
        state.normalize();
        rho.states.push_back(state);
        rho.weights.push_back(std::exp(-beta * n));
        norm += rho.weights.back();
    }
    for (double& w : rho.weights) w /= norm;
    return rho;
}

DensityOperator DensityOperator::displaced_gaussian(const GridSpec& grid, double x0,
                                                    double p0, double m, double omega) {
    DensityOperator rho;
    rho.weights = {1.0};
    rho.states = {normalized_gaussian(grid, x0, p0, m, omega)};
    return rho;
}

namespace {

void check_split(const ProjectionChainSpec& chain) {
    int n = static_cast<int>(chain.events.size());
    if (n < 2 || chain.split < 1 || chain.split >= n)
        throw InvalidDimension("chain split must satisfy 1 <= split < n_events");
}

}  // namespace

double conditional_probability(const Oracle& oracle, const DensityOperator& rho,
                               const ProjectionChainSpec& chain) {
    check_split(chain);
    double num = 0.0, den = 0.0;
    for (std::size_t s = 0; s < rho.states.size(); ++s) {
        VectorXcd psi = rho.states[s];
        for (int e = 0; e < chain.split; ++e) oracle.apply(chain.events[e], psi);
        den += rho.weights[s] * psi.squaredNorm();
        for (std::size_t e = chain.split; e < chain.events.size(); ++e)
            oracle.apply(chain.events[e], psi);
        num += rho.weights[s] * psi.squaredNorm();
    }
    if (den < kDenominatorCutoff)
        throw ZeroDenominator("condition chain has vanishing probability under rho");
    return num / den;
}

double prior_conditional_probability_oracle(const Oracle& oracle,
                                            const ProjectionChainSpec& chain) {
    check_split(chain);
    std::vector<ChainEvent> condition(chain.events.begin(),
                                      chain.events.begin() + chain.split);
    double den = oracle.chain_trace(condition);
    if (den < kDenominatorCutoff)
        throw ZeroDenominator("condition chain has vanishing trace on the grid");
    double num = oracle.chain_trace(chain.events);
    return num / den;
}

std::pair<MatrixXcd, MatrixXcd> build_weyl_pair(const GridSpec& grid) {
    grid.validate();
    Oracle oracle(grid);
    return {oracle.position_matrix(), oracle.momentum_matrix()};
}

}  // namespace qcond::oracle
