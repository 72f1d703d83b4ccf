#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "qcond/errors.hpp"

namespace qcond::symplectic {

using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;

inline constexpr double kRankTol = 1e-10;

/// 2n-dimensional real vector space with a nondegenerate antisymmetric form.
class SymplecticSpace {
public:
    explicit SymplecticSpace(MatrixXd form,
                             std::vector<std::string> frame_labels = {});

    /// Canonical form [[0, I], [-I, 0]] in block layout (e_1..e_n, f_1..f_n).
    static SymplecticSpace canonical(int n);

    int dim() const { return static_cast<int>(form_.rows()); }
    int n_modes() const { return dim() / 2; }
    const MatrixXd& form() const { return form_; }
    const std::vector<std::string>& frame_labels() const { return frame_labels_; }

    double form_eval(const VectorXd& u, const VectorXd& v) const;

private:
    MatrixXd form_;
    std::vector<std::string> frame_labels_;
};

/// Linear subspace given by a generator list, canonicalized by
/// column-pivoted elimination at tolerance 1e-10.
class Subspace {
public:
    Subspace(const SymplecticSpace& ambient, MatrixXd generators);

    const SymplecticSpace& ambient() const { return *ambient_; }
    /// Orthonormal basis columns after canonicalization.
    const MatrixXd& basis() const { return basis_; }
    int dim() const { return static_cast<int>(basis_.cols()); }

    bool contains(const VectorXd& v, double tol = kRankTol) const;
    bool same_as(const Subspace& other, double tol = kRankTol) const;

private:
    const SymplecticSpace* ambient_;
    MatrixXd basis_;
};

enum class SubspaceClass { isotropic, coisotropic, lagrangian, symplectic, none };

std::string to_string(SubspaceClass c);

/// W^angle = {f : sigma(f,g) = 0 for all g in W}.
Subspace complement(const SymplecticSpace& space, const Subspace& w);

SubspaceClass classify_subspace(const SymplecticSpace& space, const Subspace& w);

/// Basis pair (e_1..e_n from l1, f_1..f_n from l2) with sigma(e_k,f_l) = delta_kl.
struct SymplecticFrame {
    MatrixXd e;  // 2n x n
    MatrixXd f;  // 2n x n
};

SymplecticFrame transverse_symplectic_frame(const Subspace& l1, const Subspace& l2);

/// Normal form of a pairwise-transverse Lagrangian triple: a frame in which
/// w1 = {(x,0)}, w2 = {(0,p)} and w3 is the graph {(x,Ax)} of an invertible
/// symmetric matrix, plus an orthogonal congruence D = R A R^T with D
/// diagonal (the induced frame change (x,p) -> (Rx,Rp) is symplectic).
struct TripleNormalForm {
    SymplecticFrame frame;      // the rotated frame, in which w3's graph matrix is D
    MatrixXd graph_matrix;      // A, in the pre-rotation frame
    VectorXd diagonal;          // diag of D
    MatrixXd rotation;          // R with D = R A R^T
};

TripleNormalForm triple_lagrangian_normal_form(const Subspace& w1,
                                               const Subspace& w2,
                                               const Subspace& w3);

/// Shoelace area of a closed polygon measured with sigma as the area form
/// (2D spaces only). Translation-invariant; sign flips with orientation.
double signed_polygon_area(const SymplecticSpace& space2d,
                           const std::vector<Vector2d>& points);

struct Line2d {
    Vector2d point;
    Vector2d direction;
};

/// Phase-space line of the oscillator quadrature x cos t + p sin t = x0
/// (omega = m = hbar = 1 scaling).
Line2d quadrature_line(double x0, double t);

Vector2d line_intersection_2d(const SymplecticSpace& space2d, const Line2d& l1,
                              const Line2d& l2);

}  // namespace qcond::symplectic
