#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "enet/energy.hpp"
#include "enet/error.hpp"
#include "enet/laplacian.hpp"
#include "enet/spectral.hpp"
#include "support.hpp"

using namespace enet;

TEST_SUITE("spectral") {

TEST_CASE("eigenvalue examples") {
    SUBCASE("unit path of 3") {
        const EigenSystem e = eig_l2(testing::unit_path3());
        REQUIRE(e.eigenvalues.size() == 2);
        CHECK(e.eigenvalues(0) == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-14));
        CHECK(e.eigenvalues(1) == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-14));
    }
    SUBCASE("single edge") {
        const EigenSystem e = eig_energy(testing::single_edge());
        REQUIRE(e.eigenvalues.size() == 1);
        CHECK(e.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("triangle") {
        const EigenSystem e = eig_energy(testing::triangle());
        CHECK(e.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(e.eigenvalues(1) == doctest::Approx(3.0).epsilon(1e-14));
    }
    SUBCASE("weighted4 oracle, both realizations") {
        const double want[3] = {0.87750100080080089708, 4.0, 7.1224989991991991029};
        for (const EigenSystem& e : {eig_l2(testing::weighted4()), eig_energy(testing::weighted4())}) {
            for (Eigen::Index i = 0; i < 3; ++i) {
                CHECK(std::abs(e.eigenvalues(i) - want[i]) <= 1e-13);
                CHECK(e.residuals(i) <= 1e-12);
            }
        }
    }
}

TEST_CASE("energy eigenvectors are orthonormal in the energy inner product") {
    const Network n = random_connected(15, 0.3, 21);
    const EigenSystem e = eig_energy(n);
    const Matrix theta = Matrix(build_l2_laplacian(n));
    const Matrix g = e.eigenvectors.transpose() * theta * e.eigenvectors;
    CHECK((g - Matrix::Identity(g.rows(), g.cols())).norm() <= 1e-10);
}

TEST_CASE("spectra of the two realizations coincide") {
    for (auto [size, seed] : {std::pair{12, 7}, std::pair{15, 3}, std::pair{30, 99}}) {
        const SpectrumComparison c = compare_spectra(random_connected(size, 0.2, seed));
        CHECK(c.matched);
        CHECK(c.matched_pairs == static_cast<std::size_t>(size - 1));
        CHECK(c.max_dev <= 1e-8);
        CHECK_FALSE(c.zero_l2);
        CHECK_FALSE(c.zero_energy);
    }
    const SpectrumComparison g = compare_spectra(generate_chain(30, ChainProfile::geometric(2.0)));
    CHECK(g.matched);
}

TEST_CASE("polar isometry") {
    for (const Network& n : {testing::weighted4(), random_connected(20, 0.2, 4)}) {
        const PolarIsometry p = polar_isometry(n);
        CHECK(p.isometry_defect <= 1e-10);
        CHECK(p.projection_defect <= 1e-10);
        CHECK(p.left_residual <= 1e-10);
        CHECK(p.right_residual <= 1e-10);
    }
}

TEST_CASE("Krein contraction") {
    SUBCASE("single edge gives 1/2") {
        const KreinContraction k = krein_contraction(testing::single_edge());
        CHECK(k.spectrum(0) == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("weighted4 oracle") {
        const KreinContraction k = krein_contraction(testing::weighted4());
        const double want[3] = {0.12311481972464268178, 0.2, 0.53262288519339010511};
        for (Eigen::Index i = 0; i < 3; ++i) {
            CHECK(std::abs(k.spectrum(i) - want[i]) <= 1e-14);
        }
    }
    SUBCASE("spectrum is 1/(1+λ) and the identity holds") {
        Rng rng(2);
        const Network n = random_connected(20, 0.2, 8);
        const KreinContraction k = krein_contraction(n);
        Vector lam = eig_l2(n).eigenvalues;
        Vector want = (1.0 + lam.array()).inverse().matrix();
        std::sort(want.begin(), want.end());
        CHECK((k.spectrum - want).norm() <= 1e-12);
        CHECK(k.selfadjoint_defect <= 1e-12);
        CHECK(k.spectrum.minCoeff() >= 0.0);
        CHECK(k.spectrum.maxCoeff() <= 1.0);
        for (int t = 0; t < 5; ++t) {
            CHECK(krein_identity_residual(n, k, testing::random_energy(n, rng)) <= 1e-9);
        }
    }
}

TEST_CASE("spectral measures") {
    Rng rng(4);
    const Network n = random_connected(20, 0.2, 15);
    const EnergyVector u = testing::random_energy(n, rng);
    for (const SpectralMeasure& m : {spectral_measure(n, u), spectral_measure(n, L2Vector{u.reduced()})}) {
        CHECK(m.mass() == doctest::Approx(m.norm_squared).epsilon(1e-11));
        CHECK(m.moment(1) == doctest::Approx(m.form_value).epsilon(1e-10));
        CHECK(m.moment(2) == doctest::Approx(m.form_norm_squared).epsilon(1e-10));
        CHECK(m.mass_in(0.0, 1e300) == doctest::Approx(m.mass()).epsilon(1e-14));
        CHECK(m.mass_in(-1.0, 0.0) == 0.0);
    }
    const SpectralMeasure e = spectral_measure(n, u);
    CHECK(e.norm_squared == doctest::Approx(energy_norm_squared(n, u)).epsilon(1e-13));
    const SpectralMeasure again = spectral_measure(n, eig_energy(n), u);
    CHECK(again.mass() == doctest::Approx(e.mass()).epsilon(1e-14));
}

TEST_CASE("defect probe") {
    const DefectProbe g = defect_probe_chain(ChainProfile::geometric(2.0), 200);
    CHECK(g.plateau);
    CHECK(g.partial_sums.size() == 200);
    CHECK(g.relative_increment <= 1e-6);
    const DefectProbe u = defect_probe_chain(ChainProfile::unit(), 200);
    CHECK_FALSE(u.plateau);
    for (std::size_t i = 1; i < u.partial_sums.size(); ++i) {
        CHECK(u.partial_sums[i] >= u.partial_sums[i - 1]);
    }
    CHECK_THROWS_AS(defect_probe_chain(ChainProfile::unit(), 5), PreconditionError);
}

}  // TEST_SUITE
