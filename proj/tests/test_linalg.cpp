#include <doctest.h>

#include <cmath>

#include "enet/error.hpp"
#include "enet/laplacian.hpp"
#include "enet/linalg.hpp"
#include "enet/random.hpp"
#include "support.hpp"

using namespace enet;

TEST_SUITE("linalg") {

TEST_CASE("dense and CG paths agree") {
    const Network n = random_connected(60, 0.1, 3);
    const SparseMatrix theta = build_l2_laplacian(n);
    SolverOptions dense;
    dense.kind = SolverKind::Dense;
    SolverOptions cg;
    cg.kind = SolverKind::ConjugateGradient;
    const SpdSolver a(theta, dense);
    const SpdSolver b(theta, cg);
    CHECK(a.is_dense());
    CHECK_FALSE(b.is_dense());
    Rng rng(5);
    Vector rhs(theta.rows());
    for (Eigen::Index i = 0; i < rhs.size(); ++i) {
        rhs(i) = rng.normal();
    }
    const Vector x = a.solve(rhs);
    CHECK((theta * x - rhs).norm() <= 1e-10 * rhs.norm());
    CHECK((b.solve(rhs) - x).norm() <= 1e-8 * x.norm());
}

TEST_CASE("CG reports non-convergence") {
    const Network n = random_connected(60, 0.1, 3);
    SolverOptions cg;
    cg.kind = SolverKind::ConjugateGradient;
    cg.max_iterations = 2;
    const SpdSolver s(build_l2_laplacian(n), cg);
    CHECK_THROWS_AS(s.solve(Vector(Vector::Ones(59))), NumericalError);
}

TEST_CASE("grounded elimination keeps small conductances next to large ones") {
    // Chain 0-1-2 grounded at 0 with conductances 1 and 2^40. Θ' = [[1+2^40, -2^40], [-2^40, 2^40]].
    const double big = std::ldexp(1.0, 40);
    const Network n = Network::build(3, {{0, 1, 1.0}, {1, 2, big}}, 0);
    SparseMatrix theta = build_l2_laplacian(n);
    Vector g(2);
    g << 1.0, 0.0;
    SolverOptions dense;
    dense.kind = SolverKind::Dense;
    const SpdSolver s(theta, dense, &g);
    // Potential of a unit current injected at 2: 1 at vertex 1, 1 + 2^-40 at vertex 2.
    const Vector x = s.solve(Vector(Vector::Unit(2, 1)));
    CHECK(x(0) == 1.0);
    CHECK(x(1) - x(0) == doctest::Approx(1.0 / big).epsilon(1e-12));
    const Matrix f = s.factor();
    CHECK((f.transpose() * f - Matrix(theta)).norm() <= 1e-15 * big);
}

TEST_CASE("factor of plain Cholesky path") {
    const SparseMatrix theta = build_l2_laplacian(testing::weighted4());
    SolverOptions dense;
    dense.kind = SolverKind::Dense;
    const SpdSolver s(theta, dense);
    const Matrix f = s.factor();
    CHECK((f.transpose() * f - Matrix(theta)).norm() <= 1e-13);
}

TEST_CASE("matrix functions") {
    Matrix a(2, 2);
    a << 4, 1, 1, 3;
    const Matrix r = spd_sqrt(a);
    CHECK((r * r - a).norm() <= 1e-13);
    const Matrix ri = spd_inv_sqrt(a);
    CHECK((ri * a * ri - Matrix::Identity(2, 2)).norm() <= 1e-13);
    CHECK(spectral_norm(a) == doctest::Approx((7 + std::sqrt(5.0)) / 2).epsilon(1e-14));
    CHECK_THROWS_AS(spd_inv_sqrt(Matrix::Zero(2, 2)), NumericalError);
}

TEST_CASE("Lanczos matches the dense eigensolver at both ends") {
    const Network n = random_connected(120, 0.05, 11);
    const SparseMatrix theta = build_l2_laplacian(n);
    Eigen::SelfAdjointEigenSolver<Matrix> es{Matrix(theta)};
    const auto apply = [&](const Vector& v) { return Vector(theta * v); };
    const auto dot = [](const Vector& a, const Vector& b) { return a.dot(b); };
    for (bool smallest : {true, false}) {
        LanczosOptions opt;
        opt.num_pairs = 6;
        opt.smallest = smallest;
        const LanczosResult r = lanczos(apply, dot, 119, opt);
        REQUIRE(r.values.size() == 6);
        for (Eigen::Index i = 0; i < 6; ++i) {
            const double ref = smallest ? es.eigenvalues()(i) : es.eigenvalues()(113 + i);
            CHECK(std::abs(r.values(i) - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
            CHECK(r.residuals(i) <= 1e-8 * std::max(1.0, std::abs(ref)));
        }
        CHECK((r.vectors.transpose() * r.vectors - Matrix::Identity(6, 6)).norm() <= 1e-9);
    }
}

TEST_CASE("seeded RNG is reproducible") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.normal() == b.normal());
    }
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

}  // TEST_SUITE
