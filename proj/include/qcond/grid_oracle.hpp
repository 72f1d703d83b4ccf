#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "qcond/interval.hpp"

namespace qcond::oracle {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Periodic N-point discretization of the line; momentum grid in signed FFT
/// order with spacing 2 pi hbar / L.
struct GridSpec {
    int n_points = 256;
    double extent = 40.0;
    double hbar = 1.0;

    void validate() const;  // throws InvalidGrid
    double dx() const { return extent / n_points; }
    double dp() const { return 2.0 * M_PI * hbar / extent; }
    double x(int j) const { return -0.5 * extent + j * dx(); }
    double p(int k) const {
        int signed_k = k < n_points / 2 ? k : k - n_points;
        return signed_k * dp();
    }
};

/// Observable a Q + b P; covers position, momentum, rotated quadratures and
/// Heisenberg-evolved positions (every observable the engine measures).
struct ObservableDescriptor {
    double a = 1.0;
    double b = 0.0;

    static ObservableDescriptor position() { return {1.0, 0.0}; }
    static ObservableDescriptor momentum() { return {0.0, 1.0}; }
    static ObservableDescriptor rotated(double theta) {
        return {std::cos(theta), std::sin(theta)};
    }
    static ObservableDescriptor free_evolved(double t, double m) {
        return {1.0, t / m};
    }
    static ObservableDescriptor osc_evolved(double t, double m, double omega) {
        return {std::cos(omega * t), std::sin(omega * t) / (m * omega)};
    }

    bool is_position() const { return b == 0.0; }
    bool is_momentum() const { return a == 0.0; }
};

struct ChainEvent {
    ObservableDescriptor obs;
    IntervalUnion set;
};

/// Ordered event list; events[0..split-1] condition the chain, the rest are
/// outcomes. Chronological composition: earlier events act first.
struct ProjectionChainSpec {
    std::vector<ChainEvent> events;
    int split = 1;
};

/// Boundary handling for spectral sets that cut through an eigenvalue cell:
/// `sharp` keeps exact 0/1 projections, `fractional` weights boundary cells
/// by their overlap fraction, which reproduces continuum traces without the
/// O(cell) set-quantization bias.
enum class EdgeRule { sharp, fractional };

class Oracle {
public:
    explicit Oracle(GridSpec grid, EdgeRule edge = EdgeRule::fractional);
    ~Oracle();
    Oracle(const Oracle&) = delete;
    Oracle& operator=(const Oracle&) = delete;

    const GridSpec& grid() const { return grid_; }
    EdgeRule edge_rule() const { return edge_; }

    /// psi <- E psi for the event's spectral operator. Not thread-safe per
    /// instance (shared FFT workspace).
    void apply(const ChainEvent& ev, VectorXcd& psi) const;

    /// Orthonormal family spanning the range of E with per-vector weights
    /// (1 in the interior, overlap fraction on boundary cells).
    struct RangeBasis {
        std::vector<VectorXcd> vectors;
        std::vector<double> weights;
    };
    RangeBasis range_basis(const ChainEvent& ev) const;

    /// Dense operators, intended for verification at small N.
    MatrixXcd projection_matrix(const ChainEvent& ev) const;
    MatrixXcd position_matrix() const;
    MatrixXcd momentum_matrix() const;

    /// Tr E1 E2.
    double pair_trace(const ChainEvent& e1, const ChainEvent& e2) const;

    /// Tr C^dagger C for the chronological chain C = E_n ... E_1; the first
    /// event's set must be bounded.
    double chain_trace(const std::vector<ChainEvent>& events) const;

private:
    struct Workspace;
    const std::pair<VectorXd, MatrixXcd>& linear_eig(double a, double b) const;
    std::vector<double> event_weights(const ChainEvent& ev) const;

    GridSpec grid_;
    EdgeRule edge_;
    mutable std::unique_ptr<Workspace> ws_;
    mutable std::map<std::pair<double, double>, std::pair<VectorXd, MatrixXcd>> eig_cache_;
};

/// Weighted pure-state mixture standing in for a density operator.
struct DensityOperator {
    std::vector<double> weights;       // positive, sum 1
    std::vector<VectorXcd> states;     // unit vectors

    static DensityOperator ground_state(const GridSpec& grid, double m = 1.0,
                                        double omega = 1.0);
    static DensityOperator thermal_like(const GridSpec& grid, int levels, double beta,
                                        double m = 1.0, double omega = 1.0);
    static DensityOperator displaced_gaussian(const GridSpec& grid, double x0, double p0,
                                              double m = 1.0, double omega = 1.0);
};

/// Tr (AB)^dagger rho (AB) / Tr A^dagger rho A with A, B the condition and
/// outcome sub-chains.
double conditional_probability(const Oracle& oracle, const DensityOperator& rho,
                               const ProjectionChainSpec& chain);

/// rho = identity variant: Tr (AB)^dagger AB / Tr A^dagger A.
double prior_conditional_probability_oracle(const Oracle& oracle,
                                            const ProjectionChainSpec& chain);

/// Dense (Q, P) pair for direct inspection.
std::pair<MatrixXcd, MatrixXcd> build_weyl_pair(const GridSpec& grid);

}  // namespace qcond::oracle
