#include <doctest.h>

#include <cmath>

#include "enet/energy.hpp"
#include "enet/error.hpp"
#include "support.hpp"

using namespace enet;
using testing::from_values;

TEST_SUITE("energy-space") {

TEST_CASE("energy inner product examples") {
    const Network p = testing::unit_path3();
    CHECK(energy_norm_squared(p, from_values(p, {0, 1, 2})) == 2.0);
    CHECK(energy_norm_squared(p, from_values(p, {5, 5, 5})) == 0.0);
    CHECK(energy_inner(p, from_values(p, {0, 1, 1}), from_values(p, {0, 1, 2})) == 1.0);
    // Constants are invisible: shifting u leaves the form unchanged.
    const Network w = testing::weighted4();
    CHECK(energy_norm_squared(w, from_values(w, {1, 2, 3, 4})) ==
          doctest::Approx(energy_norm_squared(w, from_values(w, {11, 12, 13, 14}))).epsilon(1e-15));
}

TEST_CASE("dipoles") {
    SUBCASE("unit path") {
        const EnergySpace s(testing::unit_path3());
        const EnergyVector v = s.dipole(2, 0);
        CHECK(v[0] == doctest::Approx(0.0));
        CHECK(v[1] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(v[2] == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(s.resistance(0, 2) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(s.resistance(1, 1) == 0.0);
    }
    SUBCASE("geometric increments halve") {
        const Network n = generate_chain(4, ChainProfile::geometric(2.0));
        const EnergyVector v = solve_dipole(n, 3, 0);
        CHECK(v[1] - v[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(v[2] - v[1] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(v[3] - v[2] == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(resistance_distance(n, 2, 3) == doctest::Approx(0.25).epsilon(1e-14));
    }
    SUBCASE("Δ v_xy = δ_x - δ_y") {
        const Network n = random_connected(20, 0.2, 9);
        const EnergySpace s(n);
        const EnergyVector v = s.dipole(4, 13);
        Vector want = Vector::Zero(20);
        want(4) = 1;
        want(13) = -1;
        Vector lap = Vector::Zero(20);
        for (const auto& e : n.edges()) {
            const double d = e.c * (v[e.x] - v[e.y]);
            lap(static_cast<Eigen::Index>(e.x)) += d;
            lap(static_cast<Eigen::Index>(e.y)) -= d;
        }
        CHECK((lap - want).norm() <= 1e-11);
    }
    SUBCASE("invalid vertex") { CHECK_THROWS_AS(EnergySpace(testing::unit_path3()).dipole(0, 9), PreconditionError); }
}

TEST_CASE("gramian matches 50-digit oracle") {
    const EnergySpace s(testing::weighted4());
    const Matrix g = s.gramian();
    Matrix want(3, 3);
    want << 0.43, 0.19, 0.37, 0.19, 0.27, 0.21, 0.37, 0.21, 0.83;
    CHECK((g - want).norm() <= 1e-14);
    CHECK(gramian(testing::weighted4(), 1, 3) == doctest::Approx(0.37).epsilon(1e-14));
    const double r[4][4] = {{0, 0.43, 0.27, 0.83}, {0.43, 0, 0.32, 0.52}, {0.27, 0.32, 0, 0.68}, {0.83, 0.52, 0.68, 0}};
    for (VertexId x = 0; x < 4; ++x) {
        for (VertexId y = 0; y < 4; ++y) {
            CHECK(std::abs(s.resistance(x, y) - r[x][y]) <= 1e-14);
        }
    }
}

TEST_CASE("unit path gramian") {
    const Matrix g = EnergySpace(testing::unit_path3()).gramian();
    Matrix want(2, 2);
    want << 1, 1, 1, 2;
    CHECK((g - want).norm() <= 1e-14);
}

TEST_CASE("reproducing property and column property") {
    Rng rng(17);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Network n = random_connected(25, 0.15, seed);
        const EnergySpace s(n);
        const Matrix g = s.gramian();
        for (int t = 0; t < 5; ++t) {
            const EnergyVector u = testing::random_energy(n, rng);
            const auto x = static_cast<VertexId>(rng.index(25));
            const auto y = static_cast<VertexId>(rng.index(25));
            CHECK(std::abs(s.inner(s.dipole(x, y), u) - (u[x] - u[y])) <= 1e-10);
        }
        // G(x, y) = v_y(x).
        for (VertexId y = 1; y < 25; ++y) {
            const EnergyVector vy = s.based_dipole(y);
            for (VertexId x = 1; x < 25; ++x) {
                CHECK(std::abs(g(n.reduced_index(x), n.reduced_index(y)) - vy[x]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("resistance is a metric") {
    const Network n = random_connected(15, 0.25, 4);
    const EnergySpace s(n);
    for (VertexId x = 0; x < 15; ++x) {
        CHECK(s.resistance(x, x) == 0.0);
        for (VertexId y = 0; y < 15; ++y) {
            CHECK(s.resistance(x, y) == doctest::Approx(s.resistance(y, x)).epsilon(1e-13));
            if (x != y) {
                CHECK(s.resistance(x, y) > 0.0);
            }
            for (VertexId z = 0; z < 15; ++z) {
                CHECK(s.resistance(x, z) <= s.resistance(x, y) + s.resistance(y, z) + 1e-12);
            }
        }
    }
}

TEST_CASE("Parseval frame") {
    Rng rng(23);
    SUBCASE("3-cycle and random graphs") {
        std::vector<Network> nets{testing::triangle(), testing::weighted4()};
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            nets.push_back(random_connected(20, 0.2, seed));
        }
        for (const auto& n : nets) {
            const FrameSystem fs = build_frame(n);
            CHECK(fs.size() == n.num_edges());
            const EnergyVector u = testing::random_energy(n, rng);
            const auto coeffs = frame_analyze(fs, u);
            double s = 0;
            for (double c : coeffs) {
                s += c * c;
            }
            const double nu = energy_norm_squared(n, u);
            CHECK(std::abs(s - nu) <= 1e-9 * std::max(1.0, nu));
            const EnergyVector back = frame_synthesize(fs, coeffs);
            CHECK(energy_norm_squared(n, back - u) <= 1e-18 * std::max(1.0, nu));
        }
    }
    SUBCASE("on a tree the frame is an orthonormal basis") {
        const Network n = generate_chain(8, ChainProfile::geometric(3.0));
        const FrameSystem fs = build_frame(n);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            for (std::size_t j = 0; j < fs.size(); ++j) {
                const double ip = energy_inner(n, fs.frame_vector(i), fs.frame_vector(j));
                CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) <= 1e-12);
            }
        }
    }
    SUBCASE("triangle frame is overcomplete with rank 2") {
        const Network n = testing::triangle();
        const FrameSystem fs = build_frame(n);
        Matrix gram(3, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                gram(i, j) = energy_inner(n, fs.frame_vector(i), fs.frame_vector(j));
            }
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
        CHECK(std::abs(es.eigenvalues()(0)) <= 1e-12);
        CHECK(es.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(es.eigenvalues()(2) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("coefficient formula") {
        const Network n = generate_chain(3, ChainProfile::geometric(4.0));
        const auto coeffs = frame_analyze(build_frame(n), from_values(n, {0, 1, 3}));
        CHECK(coeffs[0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(coeffs[1] == doctest::Approx(-4.0).epsilon(1e-14));
    }
}

}  // TEST_SUITE
