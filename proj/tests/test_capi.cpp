#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "enet/enet.h"

namespace {

enet_network* chain(const char* profile, size_t n) {
    enet_network* net = nullptr;
    REQUIRE(enet_network_generate_chain(profile, n, &net) == ENET_OK);
    return net;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and lifecycle") {
    CHECK(std::string(enet_version()) == "0.1.0");
    enet_network* net = chain("unit", 3);
    CHECK(enet_network_num_vertices(net) == 3);
    CHECK(enet_network_num_edges(net) == 2);
    CHECK(enet_network_base_point(net) == 0);
    size_t x = 9, y = 9;
    double c = 0;
    CHECK(enet_network_edge(net, 1, &x, &y, &c) == ENET_OK);
    CHECK(x == 1);
    CHECK(y == 2);
    CHECK(c == 1.0);
    enet_network_free(net);
    enet_network_free(nullptr);
    enet_pair_free(nullptr);
}

TEST_CASE("status codes and last error") {
    enet_network* net = nullptr;
    CHECK(enet_network_parse("0 0 1\n", 0, &net) == ENET_ERR_VALIDATION);
    CHECK(net == nullptr);
    CHECK(std::strlen(enet_last_error()) > 0);
    CHECK(enet_network_load("/nonexistent/enet.txt", &net) == ENET_ERR_IO);
    CHECK(std::string(enet_last_error()).find("/nonexistent/enet.txt") != std::string::npos);
    CHECK(enet_network_generate_chain("geometric:0.5", 5, &net) == ENET_ERR_PRECONDITION);
    CHECK(enet_network_generate_chain(nullptr, 5, &net) == ENET_ERR_PRECONDITION);

    enet_network* ok = chain("unit", 3);
    double r = 0;
    CHECK(enet_resistance(ok, 0, 7, &r) == ENET_ERR_PRECONDITION);
    CHECK(enet_resistance(ok, 0, 2, nullptr) == ENET_ERR_PRECONDITION);
    CHECK(enet_resistance(ok, 0, 2, &r) == ENET_OK);
    CHECK(std::strlen(enet_last_error()) == 0);

    enet_network* geo = chain("geometric:2", 3);
    enet_pair* pair = nullptr;
    CHECK(enet_pair_create(geo, ok, &pair) == ENET_ERR_VALIDATION);
    CHECK(pair == nullptr);
    enet_network_free(geo);
    enet_network_free(ok);
}

TEST_CASE("energy-space values") {
    enet_network* net = chain("geometric:2", 4);
    double v[4];
    REQUIRE(enet_dipole(net, 3, 0, v) == ENET_OK);
    CHECK(v[1] - v[0] == doctest::Approx(1.0));
    CHECK(v[2] - v[1] == doctest::Approx(0.5));
    CHECK(v[3] - v[2] == doctest::Approx(0.25));
    double r = 0;
    enet_resistance(net, 2, 3, &r);
    CHECK(r == doctest::Approx(0.25).epsilon(1e-14));

    double g[9];
    REQUIRE(enet_gramian(net, g) == ENET_OK);
    CHECK(g[0] == doctest::Approx(1.0));
    CHECK(g[8] == doctest::Approx(1.75));

    const double u[4] = {0, 1, 3, 3};
    double e = 0;
    REQUIRE(enet_energy_norm_squared(net, u, &e) == ENET_OK);
    CHECK(e == doctest::Approx(1.0 + 2.0 * 4.0));
    double lap[4];
    REQUIRE(enet_laplacian_apply(net, u, lap) == ENET_OK);
    CHECK(lap[0] == doctest::Approx(-1.0));
    CHECK(lap[1] == doctest::Approx(1.0 - 4.0));
    double coeffs[3];
    REQUIRE(enet_frame_analyze(net, u, coeffs) == ENET_OK);
    CHECK(coeffs[0] * coeffs[0] + coeffs[1] * coeffs[1] + coeffs[2] * coeffs[2] == doctest::Approx(e));
    enet_network_free(net);
}

TEST_CASE("text round trip with buffer sizing") {
    enet_network* net = nullptr;
    REQUIRE(enet_network_random(12, 0.3, 5, &net) == ENET_OK);
    size_t len = 0;
    REQUIRE(enet_network_to_text(net, 1, nullptr, 0, &len) == ENET_OK);
    std::string buf(len + 1, '\0');
    REQUIRE(enet_network_to_text(net, 1, buf.data(), buf.size(), &len) == ENET_OK);
    enet_network* back = nullptr;
    REQUIRE(enet_network_parse(buf.c_str(), 1, &back) == ENET_OK);
    REQUIRE(enet_network_num_edges(back) == enet_network_num_edges(net));
    for (size_t i = 0; i < enet_network_num_edges(net); ++i) {
        size_t a, b, p, q;
        double c1, c2;
        enet_network_edge(net, i, &a, &b, &c1);
        enet_network_edge(back, i, &p, &q, &c2);
        CHECK(c1 == c2);
    }
    enet_network_free(back);
    enet_network_free(net);
}

TEST_CASE("spectra") {
    enet_network* net = chain("unit", 3);
    double ev[2];
    size_t count = 0;
    REQUIRE(enet_spectrum(net, ENET_ENERGY, ev, 2, &count) == ENET_OK);
    CHECK(count == 2);
    CHECK(ev[0] == doctest::Approx((3 - std::sqrt(5.0)) / 2));
    enet_spectrum_comparison cmp{};
    REQUIRE(enet_compare_spectra(net, 1e-8, &cmp) == ENET_OK);
    CHECK(cmp.matched);
    CHECK(cmp.matched_pairs == 2);
    enet_network_free(net);

    enet_defect_report d{};
    std::vector<double> sums(200);
    REQUIRE(enet_defect_probe("geometric:2", 200, &d, sums.data()) == ENET_OK);
    CHECK(d.plateau);
    CHECK(sums.back() == d.final_sum);
    CHECK(enet_defect_probe("unit", 3, &d, nullptr) == ENET_ERR_PRECONDITION);
}

TEST_CASE("conductance pair") {
    enet_network* base = chain("unit", 30);
    enet_network* upper = chain("geometric:2", 30);
    enet_pair* pair = nullptr;
    REQUIRE(enet_pair_create(base, upper, &pair) == ENET_OK);
    // The pair keeps its own copies.
    enet_network_free(base);
    enet_network_free(upper);

    enet_trace_report t{};
    REQUIRE(enet_pair_trace(pair, &t) == ENET_OK);
    CHECK(std::abs(t.trace - (2.0 - std::ldexp(1.0, -28))) <= 1e-9);

    enet_isometry_report iso{};
    REQUIRE(enet_pair_isometry(pair, &iso) == ENET_OK);
    CHECK(iso.isometry_defect <= 1e-9);

    enet_pullback_delta_report pd{};
    REQUIRE(enet_pair_pullback_delta(pair, 5, &pd) == ENET_OK);
    CHECK(pd.ok);

    enet_intertwine_report it{};
    REQUIRE(enet_pair_intertwine(pair, 10, &it) == ENET_OK);
    CHECK(it.samples == 10);

    std::vector<double> u(30);
    REQUIRE(enet_random_vector(nullptr, 1, u.data()) == ENET_ERR_PRECONDITION);
    enet_pair_free(pair);
}

TEST_CASE("domination rows and harmonic entry points") {
    enet_network* base = nullptr;
    REQUIRE(enet_network_random(10, 0.3, 3, &base) == ENET_OK);
    size_t len = 0;
    enet_network_to_text(base, 0, nullptr, 0, &len);
    enet_network* same = nullptr;
    std::string text(len + 1, '\0');
    enet_network_to_text(base, 0, text.data(), text.size(), &len);
    REQUIRE(enet_network_parse(text.c_str(), 0, &same) == ENET_OK);
    enet_pair* pair = nullptr;
    REQUIRE(enet_pair_create(base, same, &pair) == ENET_OK);

    std::vector<double> u(10);
    REQUIRE(enet_random_vector(base, 4, u.data()) == ENET_OK);
    enet_domination_report rep{};
    std::vector<enet_domination_row> rows(7);
    REQUIRE(enet_pair_domination(pair, u.data(), 2, &rep, rows.data(), rows.size()) == ENET_OK);
    CHECK(rep.num_rows == 7);
    CHECK(rep.all_moments_dominated);
    for (const auto& row : rows) {
        CHECK(std::abs(row.mu_c - row.mu_a) <= 1e-9 * (1 + row.mu_c));
    }

    const size_t boundary[2] = {0, 9};
    const double values[2] = {0.0, 1.0};
    std::vector<double> h(10);
    REQUIRE(enet_harmonic_solve(base, boundary, values, 2, h.data()) == ENET_OK);
    std::vector<size_t> interior{1, 2, 3, 4, 5, 6, 7, 8};
    double residual = -1;
    REQUIRE(enet_pair_harmonic_check(pair, h.data(), interior.data(), interior.size(), &residual) == ENET_OK);
    CHECK(residual <= 1e-9);

    std::vector<double> fin(10), harm(10);
    enet_harmonic_split split{};
    REQUIRE(enet_harmonic_decompose(base, u.data(), interior.data(), interior.size(), fin.data(), harm.data(),
                                    &split) == ENET_OK);
    CHECK(split.reconstruction_defect <= 1e-9);
    CHECK(enet_harmonic_solve(base, boundary, values, 0, h.data()) == ENET_ERR_PRECONDITION);

    const auto path = std::filesystem::temp_directory_path() / "enet_capi_lap.mtx";
    REQUIRE(enet_laplacian_export(base, 1, path.c_str()) == ENET_OK);
    CHECK(std::filesystem::file_size(path) > 0);
    std::filesystem::remove(path);
    CHECK(enet_laplacian_export(base, 1, "/nonexistent/dir/x.mtx") == ENET_ERR_IO);

    enet_pair_free(pair);
    enet_network_free(same);
    enet_network_free(base);
}

}  // TEST_SUITE
