#include "qcond/quadrature.hpp"

#include <cmath>
#include <cstddef>

#include "qcond/errors.hpp"

namespace qcond::quad {

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(order, 0.0);
    weights.assign(order, 0.0);
    // Newton iteration from the Chebyshev-like initial guess.
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
}

void gl_nodes_on(const IntervalUnion& domain, int order, int panels,
                 std::vector<double>& nodes, std::vector<double>& weights) {
    std::vector<double> ref_nodes, ref_weights;
    gauss_legendre(order, ref_nodes, ref_weights);
    nodes.clear();
    weights.clear();
    for (const auto& part : domain.parts()) {
        double width = (part.hi - part.lo) / panels;
        for (int p = 0; p < panels; ++p) {
            double lo = part.lo + p * width;
            double mid = lo + 0.5 * width;
            double half = 0.5 * width;
            for (int i = 0; i < order; ++i) {
                nodes.push_back(mid + half * ref_nodes[i]);
                weights.push_back(half * ref_weights[i]);
            }
        }
    }
}

namespace {

std::complex<double> tensor_pass(const std::vector<IntervalUnion>& domain,
                                 const std::function<std::complex<double>(const double*)>& f,
                                 int order, int panels, long long& evals) {
    const std::size_t dim = domain.size();
    std::vector<std::vector<double>> nodes(dim), weights(dim);
    long long total = 1;
    for (std::size_t d = 0; d < dim; ++d) {
        gl_nodes_on(domain[d], order, panels, nodes[d], weights[d]);
        if (nodes[d].empty()) return {0.0, 0.0};
        total *= static_cast<long long>(nodes[d].size());
    }
    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> point(dim);
    std::vector<double> wprod(dim + 1);
    wprod[0] = 1.0;
    auto refresh_from = [&](std::size_t d0) {
        for (std::size_t d = d0; d < dim; ++d) {
            point[d] = nodes[d][idx[d]];
            wprod[d + 1] = wprod[d] * weights[d][idx[d]];
        }
    };
    refresh_from(0);
    // Kahan-compensated accumulation in a fixed odometer order.
    std::complex<double> sum{0.0, 0.0}, comp{0.0, 0.0};
    for (long long it = 0; it < total; ++it) {
        std::complex<double> term = wprod[dim] * f(point.data());
        std::complex<double> y = term - comp;
        std::complex<double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        // Advance the odometer (last index fastest).
        std::size_t d = dim;
        while (d > 0) {
            --d;
            if (++idx[d] < nodes[d].size()) {
                refresh_from(d);
                break;
            }
            idx[d] = 0;
        }
    }
    evals += total;
    return sum;
}

}  // namespace

Result integrate(const std::vector<IntervalUnion>& domain,
                 const std::function<std::complex<double>(const double*)>& f,
                 const Options& opt) {
    for (const auto& d : domain)
        if (!d.bounded())
            throw UnboundedRegion("quadrature domain must be bounded");
    const std::size_t dim = domain.size();
    Result res;
    if (dim == 0) {
        res.value = f(nullptr);
        res.converged = true;
        res.evals = 1;
        return res;
    }

    struct Level {
        int order;
        int panels;
    };
    std::vector<Level> levels;
    if (dim <= 4)
        levels = {{16, 1}, {16, 2}, {16, 4}, {16, 8}};
    else
        levels = {{8, 1}, {12, 1}, {16, 1}, {16, 2}};

    std::complex<double> prev{0.0, 0.0};
    bool have_prev = false;
    for (const Level& lvl : levels) {
        long long predicted = 1;
        for (const auto& d : domain)
            predicted *= static_cast<long long>(d.parts().size()) * lvl.order * lvl.panels;
        if (res.evals + predicted > opt.max_evals) break;
        std::complex<double> value = tensor_pass(domain, f, lvl.order, lvl.panels, res.evals);
        res.value = value;
        if (have_prev) {
            double diff = std::abs(value - prev);
            res.est_rel_err = diff / std::max(std::abs(value), 1e-300);
            if (diff <= opt.rel_tol * std::abs(value) + opt.abs_tol) {
                res.converged = true;
                return res;
            }
        }
        prev = value;
        have_prev = true;
    }
    return res;
}

}  // namespace qcond::quad
