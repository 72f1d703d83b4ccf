#include "qcond/regions.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <cmath>

namespace qcond::regions {

using symplectic::classify_subspace;
using symplectic::complement;
using symplectic::kRankTol;
using symplectic::SubspaceClass;

namespace {

void check_shape(const SymplecticSpace& space, const MatrixXd& generators,
                 const std::vector<IntervalUnion>& box) {
    if (generators.cols() == 0)
        throw InvalidDimension("region needs at least one generator");
    if (generators.rows() != space.dim())
        throw InvalidDimension("generator length does not match space dimension");
    if (static_cast<std::size_t>(generators.cols()) != box.size())
        throw InvalidDimension("one coordinate set per generator required");
    Eigen::ColPivHouseholderQR<MatrixXd> qr(generators);
    qr.setThreshold(kRankTol);
    if (static_cast<int>(qr.rank()) < generators.cols())
        throw DegenerateDirections("region generators are linearly dependent");
}

}  // namespace

GeneratedRegion::GeneratedRegion(const SymplecticSpace& space, MatrixXd generators,
                                 std::vector<IntervalUnion> box,
                                 std::vector<std::optional<std::string>> support_tags)
    : space_(&space),
      generators_(std::move(generators)),
      box_(std::move(box)),
      support_tags_(std::move(support_tags)) {
    check_shape(space, generators_, box_);
    // Commuting family: generators must be pairwise sigma-orthogonal.
    MatrixXd gram = generators_.transpose() * space.form() * generators_;
    double scale = std::max(1.0, generators_.cwiseAbs().maxCoeff());
    if (gram.cwiseAbs().maxCoeff() > kRankTol * scale * scale)
        throw DegenerateDirections(
            "observable region generators must be pairwise sigma-orthogonal");
    if (support_tags_.empty())
        support_tags_.assign(box_.size(), std::nullopt);
    if (support_tags_.size() != box_.size())
        throw InvalidDimension("one support tag slot per generator required");
}

GeneratedRegion GeneratedRegion::box_set(const SymplecticSpace& space,
                                         MatrixXd generators,
                                         std::vector<IntervalUnion> box) {
    check_shape(space, generators, box);
    GeneratedRegion out;
    out.space_ = &space;
    out.generators_ = std::move(generators);
    out.box_ = std::move(box);
    out.support_tags_.assign(out.box_.size(), std::nullopt);
    out.observable_semantics_ = false;
    return out;
}

GeneratedRegion GeneratedRegion::transformed(const MatrixXd& m, const VectorXd& t) const {
    const MatrixXd& sigma = space_->form();
    if (m.rows() != space_->dim() || m.cols() != space_->dim() || t.size() != space_->dim())
        throw InvalidDimension("transform shape does not match space dimension");
    if ((m.transpose() * sigma * m - sigma).cwiseAbs().maxCoeff() > 1e-9)
        throw HypothesisViolation("transform matrix is not symplectic");
    GeneratedRegion out = *this;
    out.generators_ = m * generators_;
    for (int i = 0; i < out.n_generators(); ++i) {
        double shift = out.generators_.col(i).dot(sigma * t);
        out.box_[i] = out.box_[i].scaled(1.0, shift);
    }
    return out;
}

Subspace invariant_subspace(const GeneratedRegion& b) {
    std::vector<int> constraining;
    for (int i = 0; i < b.n_generators(); ++i)
        if (!b.box()[i].is_full_line()) constraining.push_back(i);
    MatrixXd gens(b.space().dim(), constraining.size());
    for (std::size_t j = 0; j < constraining.size(); ++j)
        gens.col(j) = b.generators().col(constraining[j]);
    return complement(b.space(), Subspace(b.space(), gens));
}

bool is_observable(const GeneratedRegion& b) {
    if (!b.observable_semantics()) return false;
    SubspaceClass c = classify_subspace(b.space(), invariant_subspace(b));
    return c == SubspaceClass::coisotropic || c == SubspaceClass::lagrangian;
}

namespace {

// Measure of {g : sigma(f_i, g) in box_i} for 2n independent functionals,
// under the volume form (2pi)^-n sigma^n / n!. The coordinate map is
// g -> F^T sigma g, so the standard measure picks up |det(F^T sigma)|^-1
// and the form contributes sqrt(det sigma).
double full_dimensional_measure(const SymplecticSpace& space, const MatrixXd& generators,
                                const std::vector<IntervalUnion>& box) {
    double product = 1.0;
    for (const auto& s : box) {
        if (s.is_empty()) return 0.0;
        product *= s.measure();
    }
    if (std::isinf(product)) return kInfMeasure;
    MatrixXd coord_map = generators.transpose() * space.form();
    double det = std::abs(coord_map.determinant());
    double pf = std::sqrt(std::abs(space.form().determinant()));
    int n = space.n_modes();
    return std::pow(2.0 * M_PI, -n) * pf * product / det;
}

}  // namespace

double lebesgue_measure(const GeneratedRegion& b) {
    for (const auto& s : b.box())
        if (s.is_empty()) return 0.0;
    if (b.n_generators() < b.space().dim()) {
        // Cylinder over a positive-measure base.
        return kInfMeasure;
    }
    return full_dimensional_measure(b.space(), b.generators(), b.box());
}

double lagrangian_overlap_trace(const GeneratedRegion& b1, const GeneratedRegion& b2) {
    const SymplecticSpace& space = b1.space();
    if (&space != &b2.space() || b1.space().dim() != b2.space().dim())
        throw InvalidDimension("regions live in different spaces");
    int n = space.n_modes();
    auto require_lagrangian_region = [&](const GeneratedRegion& b, const char* which) {
        if (!b.observable_semantics() || b.n_generators() != n ||
            classify_subspace(space, Subspace(space, b.generators())) !=
                SubspaceClass::lagrangian)
            throw NotLagrangian(std::string(which) + " region is not Lagrangian");
    };
    require_lagrangian_region(b1, "first");
    require_lagrangian_region(b2, "second");

    MatrixXd joint(space.dim(), 2 * n);
    joint << b1.generators(), b2.generators();
    Eigen::ColPivHouseholderQR<MatrixXd> qr(joint);
    qr.setThreshold(kRankTol);
    if (static_cast<int>(qr.rank()) == 2 * n) {
        // Transverse spans: the intersection is a full-dimensional box.
        std::vector<IntervalUnion> box = b1.box();
        box.insert(box.end(), b2.box().begin(), b2.box().end());
        return full_dimensional_measure(space, joint, box);
    }

    Subspace span1(space, b1.generators());
    Subspace span2(space, b2.generators());
    // Finiteness needs transverse spans; any residual overlap leaves
    // uncontracted directions.
    if (!span1.same_as(span2)) return kInfMeasure;

    // Equal spans: projections commute, so the trace is 0 when the joint
    // constraints are incompatible and +infinity otherwise. Requires each
    // generator of b2 to be proportional to one of b1.
    MatrixXd coeffs = b1.generators().colPivHouseholderQr().solve(b2.generators());
    if ((b1.generators() * coeffs - b2.generators()).cwiseAbs().maxCoeff() >
        1e-8 * std::max(1.0, b2.generators().cwiseAbs().maxCoeff()))
        return kInfMeasure;
    std::vector<int> match(n, -1);
    for (int j = 0; j < n; ++j) {
        int hits = 0, row = -1;
        for (int i = 0; i < n; ++i)
            if (std::abs(coeffs(i, j)) > 1e-9) {
                ++hits;
                row = i;
            }
        // Mixed generators leave box comparison ambiguous; report the
        // non-finite sentinel rather than guessing.
        if (hits != 1 || match[row] != -1) return kInfMeasure;
        match[row] = j;
    }
    for (int i = 0; i < n; ++i) {
        int j = match[i];
        double c = coeffs(i, j);
        IntervalUnion meet = b1.box()[i].intersect(b2.box()[j].scaled(1.0 / c));
        if (meet.is_empty()) return 0.0;
    }
    return kInfMeasure;
}

std::set<std::string> domain_of(const GeneratedRegion& b) {
    std::set<std::string> out;
    for (int i = 0; i < b.n_generators(); ++i) {
        if (b.box()[i].is_full_line()) continue;
        const auto& tag = b.support_tags()[i];
        if (!tag)
            throw MissingSupportTags("constraining generator carries no support tag");
        out.insert(*tag);
    }
    return out;
}

}  // namespace qcond::regions
