#include "qcond/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <cmath>

namespace qcond::symplectic {

namespace {

// Orthonormal basis of the column span, rank decided at absolute tolerance.
MatrixXd orthonormal_span(const MatrixXd& cols, double tol) {
    if (cols.cols() == 0) return MatrixXd(cols.rows(), 0);
    Eigen::ColPivHouseholderQR<MatrixXd> qr(cols);
    qr.setThreshold(tol);
    int rank = static_cast<int>(qr.rank());
    MatrixXd q = qr.householderQ() * MatrixXd::Identity(cols.rows(), rank);
    return q;
}

MatrixXd projector(const MatrixXd& orthonormal_basis) {
    return orthonormal_basis * orthonormal_basis.transpose();
}

}  // namespace

SymplecticSpace::SymplecticSpace(MatrixXd form, std::vector<std::string> frame_labels)
    : form_(std::move(form)), frame_labels_(std::move(frame_labels)) {
    if (form_.rows() != form_.cols() || form_.rows() == 0 || form_.rows() % 2 != 0)
        throw InvalidDimension("symplectic form must be square with even dimension");
    if ((form_ + form_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidDimension("symplectic form must be antisymmetric");
    // Nondegeneracy check on row-scaled copy.
    MatrixXd scaled = form_;
    for (int i = 0; i < scaled.rows(); ++i) {
        double m = scaled.row(i).cwiseAbs().maxCoeff();
        if (m == 0.0) throw InvalidDimension("symplectic form has a zero row");
        scaled.row(i) /= m;
    }
    if (std::abs(scaled.determinant()) < 1e-10)
        throw InvalidDimension("symplectic form is degenerate");
}

SymplecticSpace SymplecticSpace::canonical(int n) {
    MatrixXd form = MatrixXd::Zero(2 * n, 2 * n);
    form.topRightCorner(n, n) = MatrixXd::Identity(n, n);
    form.bottomLeftCorner(n, n) = -MatrixXd::Identity(n, n);
    return SymplecticSpace(std::move(form));
}

double SymplecticSpace::form_eval(const VectorXd& u, const VectorXd& v) const {
    if (u.size() != dim() || v.size() != dim())
        throw InvalidDimension("vector length does not match space dimension");
    return u.dot(form_ * v);
}

Subspace::Subspace(const SymplecticSpace& ambient, MatrixXd generators)
    : ambient_(&ambient) {
    if (generators.cols() > 0 && generators.rows() != ambient.dim())
        throw InvalidDimension("generator length does not match space dimension");
    if (generators.cols() == 0) {
        basis_ = MatrixXd(ambient.dim(), 0);
        return;
    }
    basis_ = orthonormal_span(generators, kRankTol);
}

bool Subspace::contains(const VectorXd& v, double tol) const {
    if (v.size() != ambient_->dim())
        throw InvalidDimension("vector length does not match space dimension");
    VectorXd residual = v - basis_ * (basis_.transpose() * v);
    return residual.cwiseAbs().maxCoeff() <= tol * std::max(1.0, v.cwiseAbs().maxCoeff());
}

bool Subspace::same_as(const Subspace& other, double tol) const {
    if (dim() != other.dim()) return false;
    if (dim() == 0) return true;
    return (projector(basis_) - projector(other.basis_)).cwiseAbs().maxCoeff() <= tol;
}

std::string to_string(SubspaceClass c) {
    switch (c) {
        case SubspaceClass::isotropic: return "isotropic";
        case SubspaceClass::coisotropic: return "coisotropic";
        case SubspaceClass::lagrangian: return "lagrangian";
        case SubspaceClass::symplectic: return "symplectic";
        case SubspaceClass::none: return "none";
    }
    return "none";
}

Subspace complement(const SymplecticSpace& space, const Subspace& w) {
    if (w.dim() == 0)
        return Subspace(space, MatrixXd::Identity(space.dim(), space.dim()));
    // Kernel of the pairing map f -> (sigma(g_i, f))_i.
    MatrixXd pairing = w.basis().transpose() * space.form();
    Eigen::FullPivLU<MatrixXd> lu(pairing);
    lu.setThreshold(kRankTol);
    MatrixXd kernel = lu.kernel();
    // FullPivLU::kernel returns a single zero column when the kernel is trivial.
    if (kernel.cols() == 1 && kernel.col(0).isZero(kRankTol))
        return Subspace(space, MatrixXd(space.dim(), 0));
    return Subspace(space, kernel);
}

SubspaceClass classify_subspace(const SymplecticSpace& space, const Subspace& w) {
    Subspace comp = complement(space, w);
    bool isotropic = true;
    if (w.dim() > 0) {
        MatrixXd gram = w.basis().transpose() * space.form() * w.basis();
        isotropic = gram.cwiseAbs().maxCoeff() <= kRankTol;
    }
    bool w_in_comp = true;
    for (int i = 0; i < w.dim(); ++i)
        if (!comp.contains(w.basis().col(i))) w_in_comp = false;
    bool comp_in_w = true;
    for (int i = 0; i < comp.dim(); ++i)
        if (!w.contains(comp.basis().col(i))) comp_in_w = false;
    if (w_in_comp && comp_in_w) return SubspaceClass::lagrangian;
    if (w_in_comp) return SubspaceClass::isotropic;
    if (comp_in_w) return SubspaceClass::coisotropic;
    // Symplectic iff W and W^angle intersect trivially.
    MatrixXd joint(space.dim(), w.dim() + comp.dim());
    joint << w.basis(), comp.basis();
    Eigen::ColPivHouseholderQR<MatrixXd> qr(joint);
    qr.setThreshold(kRankTol);
    if (static_cast<int>(qr.rank()) == w.dim() + comp.dim())
        return SubspaceClass::symplectic;
    return SubspaceClass::none;
}

namespace {

void require_lagrangian(const SymplecticSpace& space, const Subspace& w,
                        const char* which) {
    if (classify_subspace(space, w) != SubspaceClass::lagrangian)
        throw NotLagrangian(std::string(which) + " is not Lagrangian");
}

}  // namespace

SymplecticFrame transverse_symplectic_frame(const Subspace& l1, const Subspace& l2) {
    const SymplecticSpace& space = l1.ambient();
    require_lagrangian(space, l1, "first subspace");
    require_lagrangian(space, l2, "second subspace");
    int n = space.n_modes();
    MatrixXd e = l1.basis();
    MatrixXd f0 = l2.basis();
    MatrixXd gram = e.transpose() * space.form() * f0;  // n x n
    Eigen::FullPivLU<MatrixXd> lu(gram);
    lu.setThreshold(kRankTol);
    if (static_cast<int>(lu.rank()) < n)
        throw NotTransverse("Lagrangian pair is not transverse");
    MatrixXd f = f0 * lu.inverse();
    return {e, f};
}

TripleNormalForm triple_lagrangian_normal_form(const Subspace& w1,
                                               const Subspace& w2,
                                               const Subspace& w3) {
    const SymplecticSpace& space = w1.ambient();
    int n = space.n_modes();
    require_lagrangian(space, w3, "third subspace");
    SymplecticFrame frame = transverse_symplectic_frame(w1, w2);

    // Coordinates of v in the frame: x_k = sigma(v, f_k), p_k = sigma(e_k, v).
    MatrixXd g3 = w3.basis();
    MatrixXd x_coords(n, n), p_coords(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            x_coords(k, j) = space.form_eval(g3.col(j), frame.f.col(k));
            p_coords(k, j) = space.form_eval(frame.e.col(k), g3.col(j));
        }
    }
    Eigen::FullPivLU<MatrixXd> lux(x_coords);
    lux.setThreshold(kRankTol);
    if (static_cast<int>(lux.rank()) < n)
        throw NotTransverse("third Lagrangian is not transverse to the second");
    MatrixXd a = p_coords * lux.inverse();
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > kRankTol)
        throw NotLagrangian("graph matrix of the third subspace is not symmetric");
    Eigen::FullPivLU<MatrixXd> lua(a);
    lua.setThreshold(kRankTol);
    if (static_cast<int>(lua.rank()) < n)
        throw SingularGraph("graph matrix singular: third Lagrangian not transverse to the first");

    MatrixXd a_sym = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(a_sym);
    MatrixXd r = es.eigenvectors().transpose();  // D = R A R^T
    VectorXd d = es.eigenvalues();

    // Induced symplectic change x -> Rx, p -> Rp rotates the basis columns.
    TripleNormalForm out;
    out.frame.e = frame.e * r.transpose();
    out.frame.f = frame.f * r.transpose();
    out.graph_matrix = a_sym;
    out.diagonal = d;
    out.rotation = r;
    return out;
}

double signed_polygon_area(const SymplecticSpace& space2d,
                           const std::vector<Vector2d>& points) {
    if (space2d.dim() != 2)
        throw InvalidDimension("signed_polygon_area requires a 2-dimensional space");
    if (points.size() < 3)
        throw FewerThanThreePoints("polygon needs at least 3 vertices");
    // Shoelace with sigma as the area form, anchored at the first vertex
    // so the sum is translation-invariant.
    double area = 0.0;
    Vector2d origin = points.front();
    for (std::size_t i = 1; i + 1 < points.size(); ++i) {
        VectorXd u = points[i] - origin;
        VectorXd v = points[i + 1] - origin;
        area += 0.5 * space2d.form_eval(u, v);
    }
    return area;
}

Line2d quadrature_line(double x0, double t) {
    return {Vector2d(x0 * std::cos(t), x0 * std::sin(t)),
            Vector2d(-std::sin(t), std::cos(t))};
}

Vector2d line_intersection_2d(const SymplecticSpace& space2d, const Line2d& l1,
                              const Line2d& l2) {
    if (space2d.dim() != 2)
        throw InvalidDimension("line_intersection_2d requires a 2-dimensional space");
    double denom = space2d.form_eval(l1.direction, l2.direction);
    double scale = l1.direction.norm() * l2.direction.norm();
    if (std::abs(denom) <= 1e-12 * scale)
        throw ParallelLines("line directions are parallel");
    VectorXd diff = l2.point - l1.point;
    double s = space2d.form_eval(diff, l2.direction) / denom;
    return l1.point + s * l1.direction;
}

}  // namespace qcond::symplectic
