// Command-line front end. Talks to the library only through enet.h.

#include <enet/enet.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct Failure {
    enet_status status;
    std::string message;
};

void check(enet_status s) {
    if (s != ENET_OK) {
        throw Failure{s, enet_last_error()};
    }
}

struct NetDeleter {
    void operator()(enet_network* n) const { enet_network_free(n); }
};
struct PairDeleter {
    void operator()(enet_pair* p) const { enet_pair_free(p); }
};
using NetPtr = std::unique_ptr<enet_network, NetDeleter>;
using PairPtr = std::unique_ptr<enet_pair, PairDeleter>;

NetPtr load(const std::string& path) {
    enet_network* raw = nullptr;
    check(enet_network_load(path.c_str(), &raw));
    return NetPtr(raw);
}

std::size_t vertices(const NetPtr& n) { return enet_network_num_vertices(n.get()); }

std::int64_t label_of(const NetPtr& n, std::size_t v) {
    std::int64_t l = 0;
    check(enet_network_label(n.get(), v, &l));
    return l;
}

std::size_t index_of(const NetPtr& n, std::int64_t label) {
    std::size_t v = 0;
    check(enet_network_index_of(n.get(), label, &v));
    return v;
}

std::string num(double x) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

struct Options {
    double tol = 1e-8;
    std::size_t n = 0;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;
};

// Reports are JSON objects. Tabular payloads live under "columns"/"rows";
// CSV output prints the scalar fields as key,value lines, then the table.
std::string render_csv(const json& report) {
    std::ostringstream s;
    auto cell = [](const json& v) {
        if (v.is_number_float()) {
            return num(v.get<double>());
        }
        if (v.is_string()) {
            return v.get<std::string>();
        }
        return v.dump();
    };
    for (const auto& [key, value] : report.items()) {
        if (key == "columns" || key == "rows" || value.is_structured()) {
            continue;
        }
        s << key << "," << cell(value) << "\n";
    }
    if (report.contains("columns")) {
        const auto& cols = report["columns"];
        for (std::size_t i = 0; i < cols.size(); ++i) {
            s << (i ? "," : "") << cols[i].get<std::string>();
        }
        s << "\n";
        for (const auto& row : report["rows"]) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                s << (i ? "," : "") << cell(row[i]);
            }
            s << "\n";
        }
    }
    return s.str();
}

void emit(const json& report, const Options& opt) {
    const std::string text = opt.format == "csv" ? render_csv(report) : report.dump(2) + "\n";
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out);
    if (!f || !(f << text)) {
        throw Failure{ENET_ERR_IO, "cannot write " + opt.out};
    }
}

json cmd_validate(const std::string& path) {
    auto n = load(path);
    return {{"ok", true},
            {"vertices", vertices(n)},
            {"edges", enet_network_num_edges(n.get())},
            {"base", label_of(n, enet_network_base_point(n.get()))}};
}

json cmd_dipole(const std::string& path, std::int64_t x, std::int64_t y) {
    auto n = load(path);
    std::vector<double> v(vertices(n));
    check(enet_dipole(n.get(), index_of(n, x), index_of(n, y), v.data()));
    json rows = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) {
        rows.push_back({label_of(n, i), v[i]});
    }
    return {{"x", x}, {"y", y}, {"columns", {"vertex", "value"}}, {"rows", rows}};
}

json cmd_distance(const std::string& path, std::int64_t x, std::int64_t y) {
    auto n = load(path);
    double r = 0;
    check(enet_resistance(n.get(), index_of(n, x), index_of(n, y), &r));
    return {{"x", x}, {"y", y}, {"distance", r}};
}

json cmd_gramian(const std::string& path) {
    auto n = load(path);
    const std::size_t k = vertices(n) - 1;
    std::vector<double> g(k * k);
    check(enet_gramian(n.get(), g.data()));
    const std::size_t base = enet_network_base_point(n.get());
    std::vector<std::int64_t> labels;
    for (std::size_t v = 0; v < vertices(n); ++v) {
        if (v != base) {
            labels.push_back(label_of(n, v));
        }
    }
    json cols = json::array({"vertex"});
    for (auto l : labels) {
        cols.push_back(std::to_string(l));
    }
    json rows = json::array();
    for (std::size_t i = 0; i < k; ++i) {
        json row = json::array({labels[i]});
        for (std::size_t j = 0; j < k; ++j) {
            row.push_back(g[i * k + j]);
        }
        rows.push_back(row);
    }
    return {{"base", label_of(n, base)}, {"columns", cols}, {"rows", rows}};
}

json spectrum_of(const NetPtr& n, enet_realization which) {
    std::size_t count = 0;
    check(enet_spectrum(n.get(), which, nullptr, 0, &count));
    std::vector<double> ev(count);
    check(enet_spectrum(n.get(), which, ev.data(), ev.size(), &count));
    json rows = json::array();
    for (std::size_t i = 0; i < ev.size(); ++i) {
        rows.push_back({i, ev[i]});
    }
    return {{"realization", which == ENET_L2 ? "l2" : "energy"}, {"columns", {"index", "eigenvalue"}}, {"rows", rows}};
}

json cmd_spectrum(const std::string& path, const std::string& which, const Options& opt) {
    auto n = load(path);
    if (which == "l2") {
        return spectrum_of(n, ENET_L2);
    }
    if (which == "energy") {
        return spectrum_of(n, ENET_ENERGY);
    }
    enet_spectrum_comparison c{};
    check(enet_compare_spectra(n.get(), opt.tol, &c));
    return {{"matched", c.matched != 0},     {"matched_pairs", c.matched_pairs}, {"max_dev", c.max_dev},
            {"max_abs_dev", c.max_abs_dev},  {"tolerance", c.tolerance},         {"zero_l2", c.zero_l2 != 0},
            {"zero_energy", c.zero_energy != 0}};
}

// A/(A-1) when base is the unit chain and upper the geometric(A) chain.
std::optional<double> geometric_limit(const NetPtr& base, const NetPtr& upper) {
    const std::size_t m = enet_network_num_edges(upper.get());
    if (m < 2) {
        return std::nullopt;
    }
    std::vector<double> cu(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t x = 0, y = 0;
        double c = 0, cb = 0;
        check(enet_network_edge(upper.get(), i, &x, &y, &c));
        check(enet_network_edge(base.get(), i, nullptr, nullptr, &cb));
        if (y != x + 1 || cb != 1.0) {
            return std::nullopt;
        }
        cu[i] = c;
    }
    const double a = cu[1] / cu[0];
    if (cu[0] != 1.0 || !(a > 1.0)) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(cu[i] - std::pow(a, static_cast<double>(i))) > 1e-12 * cu[i]) {
            return std::nullopt;
        }
    }
    return a / (a - 1.0);
}

json cmd_compare(const std::string& base_path, const std::string& upper_path, const std::string& suite,
                 const Options& opt) {
    auto base = load(base_path);
    auto upper = load(upper_path);
    enet_pair* raw = nullptr;
    check(enet_pair_create(base.get(), upper.get(), &raw));
    PairPtr pair(raw);
    const std::size_t nv = vertices(base);
    json rep = {{"suite", suite}, {"vertices", nv}};

    if (suite == "dipole") {
        double worst_sum = 0, worst_diff = 0, tol = 0;
        bool ok = true;
        json rows = json::array();
        for (std::size_t x = 0; x < nv; ++x) {
            enet_pullback_delta_report r{};
            check(enet_pair_pullback_delta(pair.get(), x, &r));
            worst_sum = std::max(worst_sum, r.dipole_sum_residual);
            worst_diff = std::max(worst_diff, r.difference_residual);
            tol = r.tolerance;
            ok = ok && r.ok;
            rows.push_back({label_of(base, x), r.dipole_sum_residual, r.difference_residual});
        }
        rep.update({{"max_dipole_sum_residual", worst_sum},
                    {"max_difference_residual", worst_diff},
                    {"tolerance", tol},
                    {"ok", ok},
                    {"columns", {"vertex", "dipole_sum_residual", "difference_residual"}},
                    {"rows", rows}});
    } else if (suite == "intertwine") {
        enet_intertwine_report r{};
        const std::size_t samples = opt.n ? opt.n : enet_network_num_edges(base.get());
        check(enet_pair_intertwine(pair.get(), samples, &r));
        rep.update({{"samples", r.samples},
                    {"pointwise_residual", r.pointwise_residual},
                    {"krein_residual", r.krein_residual},
                    {"max_residual", r.max_residual},
                    {"tolerance", opt.tol},
                    {"ok", r.max_residual <= opt.tol}});
    } else if (suite == "trace") {
        enet_trace_report r{};
        check(enet_pair_trace(pair.get(), &r));
        rep.update({{"trace", r.trace}, {"trace_dipole_basis", r.trace_dipole_basis}, {"basis_gap", r.basis_gap}});
        const auto limit = geometric_limit(base, upper);
        rep["limit"] = limit ? json(*limit) : json(nullptr);
    } else if (suite == "isometry") {
        enet_isometry_report r{};
        check(enet_pair_isometry(pair.get(), &r));
        rep.update({{"isometry_defect", r.isometry_defect},
                    {"polar_residual", r.polar_residual},
                    {"condition", r.condition},
                    {"ill_conditioned", r.ill_conditioned != 0},
                    {"conjugation_residual", r.conjugation_residual},
                    {"commutation_residual", r.commutation_residual},
                    {"tolerance", opt.tol},
                    {"ok", r.isometry_defect <= opt.tol}});
    } else if (suite == "domination") {
        std::vector<double> u(nv);
        check(enet_random_vector(base.get(), opt.seed, u.data()));
        const int levels = opt.n ? static_cast<int>(opt.n) : 3;
        enet_domination_report r{};
        check(enet_pair_domination(pair.get(), u.data(), levels, &r, nullptr, 0));
        std::vector<enet_domination_row> rows(r.num_rows);
        check(enet_pair_domination(pair.get(), u.data(), levels, &r, rows.data(), rows.size()));
        json moments = json::array();
        for (int k = 0; k < 4; ++k) {
            moments.push_back({{"n", k + 1}, {"c", r.moment_c[k]}, {"a", r.moment_a[k]}, {"ok", r.moment_ok[k] != 0}});
        }
        json table = json::array();
        for (const auto& row : rows) {
            table.push_back({row.a, row.b, row.mu_c, row.mu_a, row.dominated != 0});
        }
        rep.update({{"seed", opt.seed},
                    {"tolerance", r.tolerance},
                    {"moments", moments},
                    {"all_moments_dominated", r.all_moments_dominated != 0},
                    {"all_intervals_dominated", r.all_intervals_dominated != 0},
                    {"interval_flags", "observational: interval-level domination is reported, not asserted"},
                    {"columns", {"a", "b", "mu_c", "mu_a", "dominated"}},
                    {"rows", table}});
    } else if (suite == "harmonic") {
        // Dirichlet data 0 and 1 at the first and last vertex; everything else is interior.
        if (nv < 3) {
            throw Failure{ENET_ERR_PRECONDITION, "harmonic suite needs at least 3 vertices"};
        }
        const std::size_t bnd[2] = {0, nv - 1};
        const double vals[2] = {0.0, 1.0};
        std::vector<double> h(nv);
        check(enet_harmonic_solve(base.get(), bnd, vals, 2, h.data()));
        std::vector<std::size_t> interior;
        for (std::size_t v = 1; v + 1 < nv; ++v) {
            interior.push_back(v);
        }
        double residual = 0;
        check(enet_pair_harmonic_check(pair.get(), h.data(), interior.data(), interior.size(), &residual));
        rep.update({{"interior_vertices", interior.size()},
                    {"pullback_interior_residual", residual},
                    {"tolerance", opt.tol},
                    {"ok", residual <= opt.tol}});
    } else {
        throw Failure{ENET_ERR_PRECONDITION, "unknown suite " + suite};
    }
    return rep;
}

json cmd_gen(const std::string& profile, std::size_t n, const std::string& out) {
    enet_network* raw = nullptr;
    check(enet_network_generate_chain(profile.c_str(), n, &raw));
    NetPtr net(raw);
    check(enet_network_save(net.get(), out.c_str()));
    return {{"profile", profile}, {"vertices", vertices(net)}, {"edges", enet_network_num_edges(net.get())},
            {"path", out}};
}

json cmd_defect(const std::string& profile, const Options& opt) {
    const std::size_t n_max = opt.n ? opt.n : 200;
    std::vector<double> sums(n_max);
    enet_defect_report r{};
    check(enet_defect_probe(profile.c_str(), n_max, &r, sums.data()));
    json rows = json::array();
    for (std::size_t i = 0; i < sums.size(); ++i) {
        rows.push_back({i + 1, sums[i]});
    }
    return {{"profile", profile},
            {"n_max", n_max},
            {"final_sum", r.final_sum},
            {"relative_increment", r.relative_increment},
            {"plateau", r.plateau != 0},
            {"columns", {"N", "S_N"}},
            {"rows", rows}};
}

json cmd_harmonic(const std::string& path, const std::string& boundary_path) {
    auto n = load(path);
    const std::size_t nv = vertices(n);
    std::vector<std::size_t> bnd;
    std::vector<double> vals;
    if (boundary_path.empty()) {
        bnd = {0, nv - 1};
        vals = {0.0, 1.0};
    } else {
        std::ifstream f(boundary_path);
        if (!f) {
            throw Failure{ENET_ERR_IO, "cannot open " + boundary_path};
        }
        json data;
        try {
            f >> data;
        } catch (const json::exception& e) {
            throw Failure{ENET_ERR_VALIDATION, std::string("boundary file: ") + e.what()};
        }
        if (!data.is_object()) {
            throw Failure{ENET_ERR_VALIDATION, "boundary file must be an object {label: value}"};
        }
        for (const auto& [key, value] : data.items()) {
            std::int64_t label = 0;
            const auto r = std::from_chars(key.data(), key.data() + key.size(), label);
            if (r.ec != std::errc() || r.ptr != key.data() + key.size() || !value.is_number()) {
                throw Failure{ENET_ERR_VALIDATION, "boundary file: bad entry " + key};
            }
            bnd.push_back(index_of(n, label));
            vals.push_back(value.get<double>());
        }
    }
    std::vector<double> h(nv);
    check(enet_harmonic_solve(n.get(), bnd.data(), vals.data(), bnd.size(), h.data()));
    double energy = 0;
    check(enet_energy_norm_squared(n.get(), h.data(), &energy));
    std::vector<double> lap(nv);
    check(enet_laplacian_apply(n.get(), h.data(), lap.data()));
    double residual = 0;
    json rows = json::array();
    for (std::size_t v = 0; v < nv; ++v) {
        const bool boundary = std::find(bnd.begin(), bnd.end(), v) != bnd.end();
        if (!boundary) {
            residual = std::max(residual, std::abs(lap[v]));
        }
        rows.push_back({label_of(n, v), h[v], boundary});
    }
    return {{"energy", energy},
            {"interior_residual", residual},
            {"columns", {"vertex", "value", "boundary"}},
            {"rows", rows}};
}

json cmd_laplacian(const std::string& path, bool reduced, const Options& opt) {
    if (opt.out.empty()) {
        throw Failure{ENET_ERR_PRECONDITION, "laplacian export needs --out"};
    }
    auto n = load(path);
    check(enet_laplacian_export(n.get(), reduced ? 1 : 0, opt.out.c_str()));
    return {{"path", opt.out}, {"reduced", reduced}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-space and Laplacian computations on weighted networks"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--tol", opt.tol, "Tolerance reported with residuals")->capture_default_str();
    app.add_option("--n", opt.n, "Sample count, level count or truncation size");
    app.add_option("--seed", opt.seed, "Seed for randomized test vectors")->capture_default_str();
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--out", opt.out, "Write the report (or export) to this file");

    std::string path, path2, which = "compare", suite = "trace", profile, boundary;
    std::int64_t x = 0, y = 0;
    std::size_t count = 0;
    bool reduced = false;

    auto* validate = app.add_subcommand("validate", "Check a network file against the axioms");
    validate->add_option("path", path)->required();

    auto* dipole = app.add_subcommand("dipole", "Dipole v_xy as a vertex function");
    dipole->add_option("path", path)->required();
    dipole->add_option("x", x)->required();
    dipole->add_option("y", y)->required();

    auto* distance = app.add_subcommand("distance", "Effective resistance between two vertices");
    distance->add_option("path", path)->required();
    distance->add_option("x", x)->required();
    distance->add_option("y", y)->required();

    auto* gram = app.add_subcommand("gramian", "Gramian of the based dipoles");
    gram->add_option("path", path)->required();

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the l2 or energy realization");
    spectrum->add_option("path", path)->required();
    spectrum->add_option("--which", which)->check(CLI::IsMember({"l2", "energy", "compare"}))->capture_default_str();

    auto* compare = app.add_subcommand("compare", "Conductance-pair checks for c <= c_A");
    compare->add_option("base", path)->required();
    compare->add_option("upper", path2)->required();
    compare->add_option("--suite", suite)
        ->check(CLI::IsMember({"dipole", "intertwine", "trace", "isometry", "domination", "harmonic"}))
        ->capture_default_str();

    auto* gen = app.add_subcommand("gen", "Write a chain network");
    gen->add_option("profile", profile)->required();
    gen->add_option("n", count)->required();
    gen->add_option("out", path)->required();

    auto* defect = app.add_subcommand("defect", "Finite-energy probe for (Δ - i)u = 0 on a half-line chain");
    defect->add_option("profile", profile)->required();

    auto* harmonic = app.add_subcommand("harmonic", "Dirichlet harmonic extension");
    harmonic->add_option("path", path)->required();
    harmonic->add_option("--boundary", boundary, "JSON object {label: value}; default 0 and 1 at the end vertices");

    auto* lap = app.add_subcommand("laplacian", "Export the Laplacian in Matrix Market format");
    lap->add_option("path", path)->required();
    lap->add_flag("--reduced", reduced, "Drop the base-point row and column");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : static_cast<int>(ENET_ERR_PRECONDITION);
    }

    try {
        json report;
        if (*validate) {
            report = cmd_validate(path);
        } else if (*dipole) {
            report = cmd_dipole(path, x, y);
        } else if (*distance) {
            report = cmd_distance(path, x, y);
        } else if (*gram) {
            report = cmd_gramian(path);
        } else if (*spectrum) {
            report = cmd_spectrum(path, which, opt);
        } else if (*compare) {
            report = cmd_compare(path, path2, suite, opt);
        } else if (*gen) {
            report = cmd_gen(profile, count, path);
        } else if (*defect) {
            report = cmd_defect(profile, opt);
        } else if (*harmonic) {
            report = cmd_harmonic(path, boundary);
        } else if (*lap) {
            report = cmd_laplacian(path, reduced, opt);
            opt.out.clear();
        }
        emit(report, opt);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return static_cast<int>(f.status);
    }
    return 0;
}
