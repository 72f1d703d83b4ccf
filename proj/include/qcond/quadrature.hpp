#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qcond/interval.hpp"

namespace qcond::quad {

struct Options {
    double rel_tol = 1e-3;
    double abs_tol = 1e-12;  // accepts near-zero integrals whose change stalls below this
    long long max_evals = 100'000'000;
};

struct Result {
    std::complex<double> value{0.0, 0.0};
    double est_rel_err = 0.0;
    long long evals = 0;
    bool converged = false;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Nodes/weights covering an interval union, each component split into
/// `panels` equal panels with a GL rule of the given order per panel.
void gl_nodes_on(const IntervalUnion& domain, int order, int panels,
                 std::vector<double>& nodes, std::vector<double>& weights);

/// Tensor-product quadrature of f over a product of bounded interval unions,
/// refined (dyadic panels for dim <= 4, order escalation above) until two
/// successive estimates agree to rel_tol or the evaluation budget runs out.
Result integrate(const std::vector<IntervalUnion>& domain,
                 const std::function<std::complex<double>(const double*)>& f,
                 const Options& opt = {});

}  // namespace qcond::quad
