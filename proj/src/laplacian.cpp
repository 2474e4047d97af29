#include "enet/laplacian.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "enet/error.hpp"

namespace enet {

namespace {

void require_vertex_function(const Network& net, const Vector& u) {
    if (static_cast<std::size_t>(u.size()) != net.num_vertices()) {
        throw PreconditionError("vertex function has " + std::to_string(u.size()) + " entries, network has " +
                                std::to_string(net.num_vertices()) + " vertices");
    }
}

}  // namespace

Vector apply_laplacian(const Network& net, const Vector& u) {
    require_vertex_function(net, u);
    Vector out = Vector::Zero(u.size());
    for (const auto& e : net.edges()) {
        const auto x = static_cast<Eigen::Index>(e.x);
        const auto y = static_cast<Eigen::Index>(e.y);
        const double flow = e.c * (u(x) - u(y));
        out(x) += flow;
        out(y) -= flow;
    }
    return out;
}

Vector apply_laplacian_markov(const Network& net, const Vector& u) {
    require_vertex_function(net, u);
    Vector out(u.size());
    for (VertexId x = 0; x < net.num_vertices(); ++x) {
        double pu = 0.0;
        for (const auto& [y, p] : transition_weights(net, x)) {
            pu += p * u(static_cast<Eigen::Index>(y));
        }
        const auto xi = static_cast<Eigen::Index>(x);
        out(xi) = net.total_conductance(x) * (u(xi) - pu);
    }
    return out;
}

SparseMatrix build_laplacian(const Network& net) {
    const auto n = static_cast<Eigen::Index>(net.num_vertices());
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(4 * net.num_edges());
    for (const auto& e : net.edges()) {
        const auto x = static_cast<Eigen::Index>(e.x);
        const auto y = static_cast<Eigen::Index>(e.y);
        t.emplace_back(x, x, e.c);
        t.emplace_back(y, y, e.c);
        t.emplace_back(x, y, -e.c);
        t.emplace_back(y, x, -e.c);
    }
    SparseMatrix m(n, n);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

SparseMatrix build_l2_laplacian(const Network& net) {
    const auto n = static_cast<Eigen::Index>(net.reduced_size());
    const VertexId o = net.base_point();
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(4 * net.num_edges());
    for (const auto& e : net.edges()) {
        const bool x_in = e.x != o;
        const bool y_in = e.y != o;
        const auto x = x_in ? static_cast<Eigen::Index>(net.reduced_index(e.x)) : 0;
        const auto y = y_in ? static_cast<Eigen::Index>(net.reduced_index(e.y)) : 0;
        if (x_in) {
            t.emplace_back(x, x, e.c);
        }
        if (y_in) {
            t.emplace_back(y, y, e.c);
        }
        if (x_in && y_in) {
            t.emplace_back(x, y, -e.c);
            t.emplace_back(y, x, -e.c);
        }
    }
    SparseMatrix m(n, n);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

double delta_inner(const Network& net, VertexId x, VertexId y) {
    if (!net.contains(x) || !net.contains(y)) {
        throw PreconditionError("delta_inner: vertex out of range");
    }
    if (x == y) {
        return net.total_conductance(x);
    }
    return -net.conductance(x, y);
}

EnergyVector delta_vector(const Network& net, VertexId x) {
    if (!net.contains(x)) {
        throw PreconditionError("delta_vector: vertex out of range");
    }
    Vector values = Vector::Zero(static_cast<Eigen::Index>(net.num_vertices()));
    values(static_cast<Eigen::Index>(x)) = 1.0;
    return EnergyVector::gauge_fixed(net, std::move(values));
}

EnergyVector delta_in_dipole_basis(const EnergySpace& space, VertexId x) {
    const Network& net = space.network();
    if (!net.contains(x) || x == net.base_point()) {
        throw PreconditionError("delta_in_dipole_basis needs x in V' = V \\ {o}");
    }
    EnergyVector out = net.total_conductance(x) * space.based_dipole(x);
    for (const auto& nb : net.neighbors(x)) {
        if (nb.vertex != net.base_point()) {
            out -= nb.c * space.based_dipole(nb.vertex);
        }
    }
    return out;
}

EnergyVector delta_in_dipole_basis(const Network& net, VertexId x) {
    return delta_in_dipole_basis(EnergySpace(net), x);
}

EnergyVector op_L_apply(const Network& net, const L2Vector& xi) {
    if (static_cast<std::size_t>(xi.values.size()) != net.reduced_size()) {
        throw PreconditionError("op_L_apply: l2(V') vector has wrong dimension");
    }
    return EnergyVector::from_reduced(net, xi.values);
}

EnergyVector op_L_apply_dipole_form(const EnergySpace& space, const L2Vector& xi) {
    const Network& net = space.network();
    if (static_cast<std::size_t>(xi.values.size()) != net.reduced_size()) {
        throw PreconditionError("op_L_apply_dipole_form: l2(V') vector has wrong dimension");
    }
    auto coeff = [&](VertexId v) {
        return v == net.base_point() ? 0.0 : xi.values(static_cast<Eigen::Index>(net.reduced_index(v)));
    };
    EnergyVector out = EnergyVector::zero(net);
    for (VertexId x = 0; x < net.num_vertices(); ++x) {
        if (x == net.base_point()) {
            continue;
        }
        // Weight of v_x: ξ_x c(x) - Σ_{y~x} ξ_y c_xy.
        double w = coeff(x) * net.total_conductance(x);
        for (const auto& nb : net.neighbors(x)) {
            w -= coeff(nb.vertex) * nb.c;
        }
        if (w != 0.0) {
            out += w * space.based_dipole(x);
        }
    }
    return out;
}

L2Vector op_Lstar_apply(const Network& net, const EnergyVector& u) {
    if (u.size() != net.num_vertices()) {
        throw PreconditionError("op_Lstar_apply: energy vector has wrong dimension");
    }
    const Vector lap = apply_laplacian(net, u.values());
    Vector out(static_cast<Eigen::Index>(net.reduced_size()));
    for (Eigen::Index r = 0; r < out.size(); ++r) {
        out(r) = lap(static_cast<Eigen::Index>(net.vertex_at(static_cast<std::size_t>(r))));
    }
    return {out};
}

EnergyVector krein_apply(const Network& net, const EnergyVector& u) { return op_L_apply(net, op_Lstar_apply(net, u)); }

EnergyVector energy_laplacian(const Network& net, const EnergyVector& u) {
    if (u.size() != net.num_vertices()) {
        throw PreconditionError("energy_laplacian: energy vector has wrong dimension");
    }
    return EnergyVector::gauge_fixed(net, apply_laplacian(net, u.values()));
}

QuadraticForm quadratic_form(const EnergySpace& space, const EnergyVector& phi) {
    const Network& net = space.network();
    QuadraticForm q;
    q.direct = space.inner(phi, energy_laplacian(net, phi));
    for (const auto& e : net.edges()) {
        const double coefficient = space.inner(space.dipole(e.x, e.y), phi);
        q.frame_sum += e.c * e.c * coefficient * coefficient;
    }
    q.discrepancy = std::abs(q.direct - q.frame_sum);
    return q;
}

double quadratic_form_checked(const EnergySpace& space, const EnergyVector& phi, double tol) {
    const QuadraticForm q = quadratic_form(space, phi);
    if (q.discrepancy > tol * std::max(1.0, std::abs(q.direct))) {
        throw NumericalError("quadratic form evaluations disagree: direct " + std::to_string(q.direct) +
                             ", frame sum " + std::to_string(q.frame_sum));
    }
    return q.direct;
}

}  // namespace enet
