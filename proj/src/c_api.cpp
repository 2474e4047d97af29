#include "enet/enet.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <map>
#include <new>
#include <string>
#include <vector>

#include "enet/energy.hpp"
#include "enet/error.hpp"
#include "enet/harmonics.hpp"
#include "enet/io.hpp"
#include "enet/laplacian.hpp"
#include "enet/random.hpp"
#include "enet/spectral.hpp"
#include "enet/variation.hpp"

struct enet_network {
    enet::Network net;
};

struct enet_pair {
    enet::ConductancePair pair;
};

namespace {

thread_local std::string last_error;

enet_status fail(enet_status s, const char* what) {
    last_error = what;
    return s;
}

template <typename F>
enet_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return ENET_OK;
    } catch (const enet::Error& e) {
        return fail(static_cast<enet_status>(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(ENET_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ENET_ERR_INTERNAL, e.what());
    }
}

void require(bool cond, const char* what) {
    if (!cond) {
        throw enet::PreconditionError(what);
    }
}

const enet::Network& network_of(const enet_network* h) {
    require(h != nullptr, "null network handle");
    return h->net;
}

const enet::ConductancePair& pair_of(const enet_pair* h) {
    require(h != nullptr, "null pair handle");
    return h->pair;
}

enet::Vector read_vector(const double* data, std::size_t n) {
    require(data != nullptr, "null input array");
    enet::Vector v(static_cast<Eigen::Index>(n));
    std::copy(data, data + n, v.data());
    return v;
}

enet::EnergyVector read_energy(const enet::Network& net, const double* data) {
    return enet::EnergyVector::gauge_fixed(net, read_vector(data, net.num_vertices()));
}

void write_vector(const enet::Vector& v, double* out) {
    require(out != nullptr, "null output array");
    std::copy(v.data(), v.data() + v.size(), out);
}

std::vector<enet::VertexId> read_vertices(const enet::Network& net, const std::size_t* data, std::size_t n) {
    require(n == 0 || data != nullptr, "null vertex array");
    std::vector<enet::VertexId> out(data, data + n);
    for (auto v : out) {
        require(net.contains(v), "vertex out of range");
    }
    return out;
}

template <typename T>
void set_handle(T** out, T* value) {
    require(out != nullptr, "null output handle");
    *out = value;
}

}  // namespace

extern "C" {

const char* enet_last_error(void) { return last_error.c_str(); }

const char* enet_version(void) { return "0.1.0"; }

enet_status enet_network_load(const char* path, enet_network** out) {
    return guarded([&] {
        require(path != nullptr, "null path");
        require(out != nullptr, "null output handle");
        set_handle(out, new enet_network{enet::load_network(path)});
    });
}

enet_status enet_network_parse(const char* text, int is_json, enet_network** out) {
    return guarded([&] {
        require(text != nullptr, "null text");
        require(out != nullptr, "null output handle");
        set_handle(out, new enet_network{is_json ? enet::parse_network_json(text) : enet::parse_edge_list(text)});
    });
}

enet_status enet_network_from_edges(size_t num_vertices, size_t num_edges, const size_t* x, const size_t* y,
                                    const double* c, size_t base_point, enet_network** out) {
    return guarded([&] {
        require(num_edges == 0 || (x && y && c), "null edge arrays");
        require(out != nullptr, "null output handle");
        std::vector<enet::Edge> edges;
        edges.reserve(num_edges);
        for (std::size_t i = 0; i < num_edges; ++i) {
            edges.push_back({x[i], y[i], c[i]});
        }
        set_handle(out, new enet_network{enet::Network::build(num_vertices, std::move(edges), base_point)});
    });
}

enet_status enet_network_generate_chain(const char* profile, size_t n, enet_network** out) {
    return guarded([&] {
        require(profile != nullptr, "null profile");
        require(out != nullptr, "null output handle");
        set_handle(out, new enet_network{enet::generate_chain(n, enet::ChainProfile::parse(profile))});
    });
}

enet_status enet_network_random(size_t n, double extra_edge_probability, uint64_t seed, enet_network** out) {
    return guarded([&] {
        require(out != nullptr, "null output handle");
        set_handle(out, new enet_network{enet::random_connected(n, extra_edge_probability, seed)});
    });
}

enet_status enet_network_save(const enet_network* net, const char* path) {
    return guarded([&] {
        require(path != nullptr, "null path");
        enet::save_network(network_of(net), path, enet::format_for_path(path));
    });
}

enet_status enet_network_to_text(const enet_network* net, int is_json, char* buf, size_t cap, size_t* len) {
    return guarded([&] {
        const auto& n = network_of(net);
        const std::string text = is_json ? enet::format_network_json(n) : enet::format_edge_list(n);
        if (len) {
            *len = text.size();
        }
        if (buf && cap > 0) {
            const std::size_t k = std::min(cap - 1, text.size());
            std::memcpy(buf, text.data(), k);
            buf[k] = '\0';
        }
    });
}

void enet_network_free(enet_network* net) { delete net; }

size_t enet_network_num_vertices(const enet_network* net) { return net ? net->net.num_vertices() : 0; }
size_t enet_network_num_edges(const enet_network* net) { return net ? net->net.num_edges() : 0; }
size_t enet_network_base_point(const enet_network* net) { return net ? net->net.base_point() : 0; }

enet_status enet_network_edge(const enet_network* net, size_t i, size_t* x, size_t* y, double* c) {
    return guarded([&] {
        const auto& n = network_of(net);
        require(i < n.num_edges(), "edge index out of range");
        const auto& e = n.edge(i);
        if (x) *x = e.x;
        if (y) *y = e.y;
        if (c) *c = e.c;
    });
}

enet_status enet_network_label(const enet_network* net, size_t v, int64_t* label) {
    return guarded([&] {
        const auto& n = network_of(net);
        require(n.contains(v), "vertex out of range");
        require(label != nullptr, "null output");
        *label = n.label(v);
    });
}

enet_status enet_network_index_of(const enet_network* net, int64_t label, size_t* v) {
    return guarded([&] {
        const auto& n = network_of(net);
        require(v != nullptr, "null output");
        const auto idx = n.index_of(label);
        if (!idx) {
            throw enet::PreconditionError("no vertex with label " + std::to_string(label));
        }
        *v = *idx;
    });
}

enet_status enet_dipole(const enet_network* net, size_t x, size_t y, double* values) {
    return guarded([&] { write_vector(enet::solve_dipole(network_of(net), x, y).values(), values); });
}

enet_status enet_resistance(const enet_network* net, size_t x, size_t y, double* out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        *out = enet::resistance_distance(network_of(net), x, y);
    });
}

enet_status enet_gramian(const enet_network* net, double* out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        const enet::Matrix g = enet::EnergySpace(network_of(net)).gramian();
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            for (Eigen::Index j = 0; j < g.cols(); ++j) {
                out[i * g.cols() + j] = g(i, j);
            }
        }
    });
}

enet_status enet_energy_norm_squared(const enet_network* net, const double* u, double* out) {
    return guarded([&] {
        const auto& n = network_of(net);
        require(out != nullptr, "null output");
        *out = enet::energy_norm_squared(n, read_energy(n, u));
    });
}

enet_status enet_laplacian_apply(const enet_network* net, const double* u, double* out) {
    return guarded([&] {
        const auto& n = network_of(net);
        write_vector(enet::apply_laplacian(n, read_vector(u, n.num_vertices())), out);
    });
}

enet_status enet_frame_analyze(const enet_network* net, const double* u, double* coeffs) {
    return guarded([&] {
        const auto& n = network_of(net);
        require(coeffs != nullptr, "null output");
        const auto fs = enet::build_frame(n);
        const auto c = enet::frame_analyze(fs, read_energy(n, u));
        std::copy(c.begin(), c.end(), coeffs);
    });
}

enet_status enet_laplacian_export(const enet_network* net, int reduced, const char* path) {
    return guarded([&] {
        const auto& n = network_of(net);
        require(path != nullptr, "null path");
        std::ofstream f(path);
        if (!f) {
            throw enet::IoError(std::string("cannot open ") + path + " for writing");
        }
        enet::write_matrix_market(f, reduced ? enet::build_l2_laplacian(n) : enet::build_laplacian(n));
        if (!f) {
            throw enet::IoError(std::string("write failed: ") + path);
        }
    });
}

enet_status enet_random_vector(const enet_network* net, uint64_t seed, double* out) {
    return guarded([&] {
        const auto& n = network_of(net);
        enet::Rng rng(seed);
        enet::Vector v(static_cast<Eigen::Index>(n.num_vertices()));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v(i) = rng.normal();
        }
        write_vector(enet::EnergyVector::gauge_fixed(n, std::move(v)).values(), out);
    });
}

enet_status enet_spectrum(const enet_network* net, enet_realization which, double* out, size_t cap, size_t* count) {
    return guarded([&] {
        const auto& n = network_of(net);
        require(which == ENET_L2 || which == ENET_ENERGY, "unknown realization");
        const auto es = which == ENET_L2 ? enet::eig_l2(n) : enet::eig_energy(n);
        const auto k = std::min<std::size_t>(cap, static_cast<std::size_t>(es.eigenvalues.size()));
        require(k == 0 || out != nullptr, "null output");
        std::copy(es.eigenvalues.data(), es.eigenvalues.data() + k, out);
        if (count) {
            *count = static_cast<std::size_t>(es.eigenvalues.size());
        }
    });
}

enet_status enet_compare_spectra(const enet_network* net, double tol, enet_spectrum_comparison* out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        const auto r = enet::compare_spectra(network_of(net), tol);
        *out = {r.matched_pairs, r.matched, r.max_dev, r.max_abs_dev, r.tolerance, r.zero_l2, r.zero_energy};
    });
}

enet_status enet_defect_probe(const char* profile, size_t n_max, enet_defect_report* out, double* partial_sums) {
    return guarded([&] {
        require(profile != nullptr, "null profile");
        require(out != nullptr, "null output");
        const auto p = enet::defect_probe_chain(enet::ChainProfile::parse(profile), n_max);
        *out = {p.partial_sums.empty() ? 0.0 : p.partial_sums.back(), p.relative_increment, p.plateau};
        if (partial_sums) {
            std::copy(p.partial_sums.begin(), p.partial_sums.end(), partial_sums);
        }
    });
}

enet_status enet_pair_create(const enet_network* base, const enet_network* upper, enet_pair** out) {
    return guarded([&] {
        require(out != nullptr, "null output handle");
        set_handle(out, new enet_pair{enet::make_pair(network_of(base), network_of(upper))});
    });
}

void enet_pair_free(enet_pair* pair) { delete pair; }

enet_status enet_pair_pullback(const enet_pair* pair, const double* w, double* out) {
    return guarded([&] {
        const auto& p = pair_of(pair);
        write_vector(enet::pullback(p, read_energy(p.base(), w)).values(), out);
    });
}

enet_status enet_pair_pullback_delta(const enet_pair* pair, size_t x, enet_pullback_delta_report* out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        const auto r = enet::pullback_delta(pair_of(pair), x);
        *out = {r.dipole_sum_residual, r.difference_residual, r.tolerance, r.ok};
    });
}

enet_status enet_pair_intertwine(const enet_pair* pair, size_t samples, enet_intertwine_report* out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        const auto r = enet::intertwine_check(pair_of(pair), samples);
        *out = {r.samples, r.pointwise_residual, r.krein_residual, r.max_residual};
    });
}

enet_status enet_pair_trace(const enet_pair* pair, enet_trace_report* out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        const auto r = enet::trace_gram(pair_of(pair));
        *out = {r.trace, r.trace_dipole_basis, r.basis_gap};
    });
}

enet_status enet_pair_isometry(const enet_pair* pair, enet_isometry_report* out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        const auto r = enet::isometric_factor(pair_of(pair));
        *out = {r.isometry_defect, r.polar_residual, r.condition, r.ill_conditioned, r.conjugation_residual, r.commutation_residual};
    });
}

enet_status enet_pair_domination(const enet_pair* pair, const double* u, int levels, enet_domination_report* out,
                                 enet_domination_row* rows, size_t rows_cap) {
    return guarded([&] {
        const auto& p = pair_of(pair);
        require(out != nullptr, "null output");
        const auto lc = enet::eig_l2(p.base()).eigenvalues;
        const auto la = enet::eig_l2(p.upper()).eigenvalues;
        double top = 0.0;
        if (lc.size() > 0) {
            top = std::max(lc.maxCoeff(), la.maxCoeff());
        }
        // Keep the top atom inside the last closed endpoint despite rounding.
        const auto intervals = enet::dyadic_intervals(top * (1.0 + 1e-12), levels);
        const auto r = enet::spectral_domination(p, read_energy(p.base(), u), intervals);
        enet_domination_report rep{};
        for (int k = 0; k < 4; ++k) {
            rep.moment_c[k] = r.moment_c[k];
            rep.moment_a[k] = r.moment_a[k];
            rep.moment_ok[k] = r.moment_ok[k];
        }
        rep.tolerance = r.tolerance;
        rep.all_intervals_dominated = r.all_intervals_dominated;
        rep.all_moments_dominated = r.all_moments_dominated;
        rep.num_rows = r.rows.size();
        *out = rep;
        require(rows_cap == 0 || rows != nullptr, "null rows array");
        for (std::size_t i = 0; i < std::min(rows_cap, r.rows.size()); ++i) {
            const auto& row = r.rows[i];
            rows[i] = {row.interval.a, row.interval.b, row.mu_c, row.mu_a, row.dominated};
        }
    });
}

enet_status enet_pair_harmonic_check(const enet_pair* pair, const double* h, const size_t* interior,
                                     size_t num_interior, double* out) {
    return guarded([&] {
        const auto& p = pair_of(pair);
        require(out != nullptr, "null output");
        const auto in = read_vertices(p.base(), interior, num_interior);
        *out = enet::harmonic_pullback_check(p, read_energy(p.base(), h), in);
    });
}

enet_status enet_harmonic_solve(const enet_network* net, const size_t* boundary, const double* values,
                                size_t num_boundary, double* out) {
    return guarded([&] {
        const auto& n = network_of(net);
        const auto b = read_vertices(n, boundary, num_boundary);
        require(num_boundary == 0 || values != nullptr, "null boundary values");
        std::map<enet::VertexId, double> data;
        for (std::size_t i = 0; i < num_boundary; ++i) {
            require(data.emplace(b[i], values[i]).second, "duplicate boundary vertex");
        }
        write_vector(enet::solve_harmonic_truncation(n, data).values(), out);
    });
}

enet_status enet_harmonic_decompose(const enet_network* net, const double* u, const size_t* interior,
                                    size_t num_interior, double* fin_part, double* harm_part,
                                    enet_harmonic_split* out) {
    return guarded([&] {
        const auto& n = network_of(net);
        const auto in = read_vertices(n, interior, num_interior);
        const auto split = enet::decompose(n, read_energy(n, u), in);
        if (fin_part) {
            write_vector(split.fin_part.values(), fin_part);
        }
        if (harm_part) {
            write_vector(split.harm_part.values(), harm_part);
        }
        if (out) {
            *out = {split.orthogonality_defect, split.reconstruction_defect};
        }
    });
}

}  // extern "C"
