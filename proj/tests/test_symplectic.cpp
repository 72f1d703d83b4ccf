#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "qcond/errors.hpp"
#include "qcond/symplectic.hpp"

using namespace qcond;
using namespace qcond::symplectic;

TEST_SUITE("symplectic") {

TEST_CASE("canonical form pairs conjugate coordinates") {
    auto space = SymplecticSpace::canonical(2);
    CHECK(space.dim() == 4);
    Eigen::VectorXd e1 = Eigen::VectorXd::Unit(4, 0);
    Eigen::VectorXd f1 = Eigen::VectorXd::Unit(4, 2);
    Eigen::VectorXd f2 = Eigen::VectorXd::Unit(4, 3);
    CHECK(space.form_eval(e1, f1) == doctest::Approx(1.0));
    CHECK(space.form_eval(f1, e1) == doctest::Approx(-1.0));
    CHECK(space.form_eval(e1, f2) == doctest::Approx(0.0));
    CHECK((space.form() + space.form().transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("subspace classification") {
    auto space = SymplecticSpace::canonical(2);
    Eigen::MatrixXd e1(4, 1);
    e1 << 1, 0, 0, 0;
    CHECK(classify_subspace(space, Subspace(space, e1)) == SubspaceClass::isotropic);

    Eigen::MatrixXd lag(4, 2);
    lag << 1, 0, 0, 1, 0, 0, 0, 0;
    CHECK(classify_subspace(space, Subspace(space, lag)) == SubspaceClass::lagrangian);

    Eigen::MatrixXd sym(4, 2);
    sym << 1, 0, 0, 0, 0, 1, 0, 0;
    CHECK(classify_subspace(space, Subspace(space, sym)) == SubspaceClass::symplectic);

    Eigen::MatrixXd coiso(4, 3);
    coiso << 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0;
    CHECK(classify_subspace(space, Subspace(space, coiso)) == SubspaceClass::coisotropic);
}

TEST_CASE("lagrangian subspaces equal their complement") {
    auto space = SymplecticSpace::canonical(2);
    Eigen::MatrixXd lag(4, 2);
    lag << 1, 0, 0, 1, 0, 0, 0, 0;
    Subspace w(space, lag);
    CHECK(complement(space, w).same_as(w));
}

TEST_CASE("transverse frame satisfies the delta pairing") {
    auto space = SymplecticSpace::canonical(2);
    Eigen::MatrixXd g1(4, 2), g2(4, 2);
    g1 << 1, 0, 0, 1, 0, 0, 0, 0;       // x-plane
    g2 << 0, 0, 0, 0, 1, 1, 0, 1;       // a p-plane
    auto frame = transverse_symplectic_frame(Subspace(space, g1), Subspace(space, g2));
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
            double want = k == l ? 1.0 : 0.0;
            CHECK(space.form_eval(frame.e.col(k), frame.f.col(l)) ==
                  doctest::Approx(want).epsilon(1e-10));
        }
}

TEST_CASE("triple normal form of a simple one-mode triple") {
    auto space = SymplecticSpace::canonical(1);
    Eigen::MatrixXd g1(2, 1), g2(2, 1), g3(2, 1);
    g1 << 1, 0;
    g2 << 0, 1;
    g3 << 1, 1;
    auto nf = triple_lagrangian_normal_form(Subspace(space, g1), Subspace(space, g2),
                                            Subspace(space, g3));
    CHECK(nf.diagonal.size() == 1);
    CHECK(nf.graph_matrix(0, 0) == doctest::Approx(nf.diagonal[0]).epsilon(1e-12));
    Eigen::VectorXd v = nf.frame.e.col(0) + nf.diagonal[0] * nf.frame.f.col(0);
    CHECK(Subspace(space, g3).contains(v));
}

TEST_CASE("normal form rejects a non-transverse triple") {
    auto space = SymplecticSpace::canonical(1);
    Eigen::MatrixXd g1(2, 1), g2(2, 1);
    g1 << 1, 0;
    g2 << 2, 0;
    CHECK_THROWS_AS(triple_lagrangian_normal_form(Subspace(space, g1),
                                                  Subspace(space, g2),
                                                  Subspace(space, g1)),
                    Error);
}

TEST_CASE("polygon area with the form as area element") {
    auto space = SymplecticSpace::canonical(1);
    std::vector<Eigen::Vector2d> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(signed_polygon_area(space, square) == doctest::Approx(1.0));
    std::reverse(square.begin(), square.end());
    CHECK(signed_polygon_area(space, square) == doctest::Approx(-1.0));
}

TEST_CASE("quadrature lines and intersections") {
    auto space = SymplecticSpace::canonical(1);
    Line2d vertical = quadrature_line(2.0, 0.0);          // x = 2
    Line2d horizontal = quadrature_line(3.0, M_PI / 2);   // p = 3
    Eigen::Vector2d xi = line_intersection_2d(space, vertical, horizontal);
    CHECK(xi[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(xi[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(line_intersection_2d(space, vertical, vertical), ParallelLines);
}

TEST_CASE("random normal forms reproduce the graph relation") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + trial % 3;
        auto space = SymplecticSpace::canonical(n);
        auto random_graph = [&](Eigen::MatrixXd& a) {
            a = Eigen::MatrixXd::NullaryExpr(n, n, [&]() { return u(rng); });
            a = ((a + a.transpose()) / 2).eval();
        };
        Eigen::MatrixXd a1, a2, a3;
        random_graph(a1);
        random_graph(a2);
        random_graph(a3);
        auto graph_basis = [&](const Eigen::MatrixXd& a) {
            Eigen::MatrixXd g(2 * n, n);
            g.topRows(n) = Eigen::MatrixXd::Identity(n, n);
            g.bottomRows(n) = a;
            return g;
        };
        if (std::abs((a1 - a2).determinant()) < 0.1 ||
            std::abs((a1 - a3).determinant()) < 0.1 ||
            std::abs((a2 - a3).determinant()) < 0.1)
            continue;
        Subspace w1(space, graph_basis(a1)), w2(space, graph_basis(a2)),
            w3(space, graph_basis(a3));
        auto nf = triple_lagrangian_normal_form(w1, w2, w3);
        CHECK((nf.graph_matrix - nf.graph_matrix.transpose()).cwiseAbs().maxCoeff() <
              1e-10);
        Eigen::MatrixXd d = nf.rotation * nf.graph_matrix * nf.rotation.transpose();
        Eigen::MatrixXd off = d - d.diagonal().asDiagonal().toDenseMatrix();
        CHECK(off.cwiseAbs().maxCoeff() < 1e-9);
        for (int k = 0; k < n; ++k) {
            Eigen::VectorXd v = nf.frame.e.col(k) + nf.diagonal[k] * nf.frame.f.col(k);
            CHECK(w3.contains(v, 1e-8));
        }
    }
}

}  // TEST_SUITE
