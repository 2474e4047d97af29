#include "enet/energy.hpp"

#include <cmath>
#include <string>

#include "enet/error.hpp"
#include "enet/laplacian.hpp"

namespace enet {

namespace {

void require_size(const Network& net, const EnergyVector& u, const char* what) {
    if (u.size() != net.num_vertices()) {
        throw PreconditionError(std::string(what) + ": vector has " + std::to_string(u.size()) +
                                " entries, network has " + std::to_string(net.num_vertices()) + " vertices");
    }
}

}  // namespace

EnergyVector EnergyVector::gauge_fixed(const Network& net, Vector values) {
    if (static_cast<std::size_t>(values.size()) != net.num_vertices()) {
        throw PreconditionError("vertex function size does not match the network");
    }
    EnergyVector out;
    out.base_ = net.base_point();
    const double shift = values(static_cast<Eigen::Index>(out.base_));
    values.array() -= shift;
    values(static_cast<Eigen::Index>(out.base_)) = 0.0;
    out.values_ = std::move(values);
    return out;
}

EnergyVector EnergyVector::from_reduced(const Network& net, const Vector& coords) {
    if (static_cast<std::size_t>(coords.size()) != net.reduced_size()) {
        throw PreconditionError("reduced coordinate size does not match the network");
    }
    EnergyVector out;
    out.base_ = net.base_point();
    out.values_ = Vector::Zero(static_cast<Eigen::Index>(net.num_vertices()));
    const auto b = static_cast<Eigen::Index>(out.base_);
    const auto n = coords.size();
    out.values_.head(b) = coords.head(b);
    out.values_.tail(n - b) = coords.tail(n - b);
    return out;
}

EnergyVector EnergyVector::zero(const Network& net) {
    return gauge_fixed(net, Vector::Zero(static_cast<Eigen::Index>(net.num_vertices())));
}

Vector EnergyVector::reduced() const {
    const auto n = values_.size();
    if (n == 0) {
        return {};
    }
    const auto b = static_cast<Eigen::Index>(base_);
    Vector out(n - 1);
    out.head(b) = values_.head(b);
    out.tail(n - 1 - b) = values_.tail(n - 1 - b);
    return out;
}

EnergyVector& EnergyVector::operator+=(const EnergyVector& other) {
    if (other.values_.size() != values_.size() || other.base_ != base_) {
        throw PreconditionError("energy vectors live on different networks");
    }
    values_ += other.values_;
    return *this;
}

EnergyVector& EnergyVector::operator-=(const EnergyVector& other) {
    if (other.values_.size() != values_.size() || other.base_ != base_) {
        throw PreconditionError("energy vectors live on different networks");
    }
    values_ -= other.values_;
    return *this;
}

EnergyVector& EnergyVector::operator*=(double s) {
    values_ *= s;
    return *this;
}

double energy_inner(const Network& net, const EnergyVector& u, const EnergyVector& v) {
    require_size(net, u, "energy_inner");
    require_size(net, v, "energy_inner");
    // Each unordered edge appears twice in the double sum; the 1/2 cancels.
    double sum = 0.0;
    for (const auto& e : net.edges()) {
        sum += e.c * (u[e.x] - u[e.y]) * (v[e.x] - v[e.y]);
    }
    return sum;
}

double energy_norm_squared(const Network& net, const EnergyVector& u) { return energy_inner(net, u, u); }

namespace {

Vector grounding(const Network& net) {
    Vector g = Vector::Zero(static_cast<Eigen::Index>(net.reduced_size()));
    for (const auto& nb : net.neighbors(net.base_point())) {
        g(static_cast<Eigen::Index>(net.reduced_index(nb.vertex))) += nb.c;
    }
    return g;
}

}  // namespace

EnergySpace::EnergySpace(Network net, const SolverOptions& options) : net_(std::move(net)) {
    const Vector g = grounding(net_);
    solver_ = SpdSolver(build_l2_laplacian(net_), options, &g);
}

EnergyVector EnergySpace::solve(const Vector& rhs) const {
    return EnergyVector::from_reduced(net_, solver_.solve(rhs));
}

EnergyVector EnergySpace::dipole(VertexId x, VertexId y) const {
    if (!net_.contains(x) || !net_.contains(y)) {
        throw PreconditionError("dipole endpoint out of range");
    }
    if (x == y) {
        return EnergyVector::zero(net_);
    }
    Vector rhs = Vector::Zero(static_cast<Eigen::Index>(dimension()));
    if (x != net_.base_point()) {
        rhs(static_cast<Eigen::Index>(net_.reduced_index(x))) += 1.0;
    }
    if (y != net_.base_point()) {
        rhs(static_cast<Eigen::Index>(net_.reduced_index(y))) -= 1.0;
    }
    return solve(rhs);
}

double EnergySpace::resistance(VertexId x, VertexId y) const {
    if (x == y) {
        if (!net_.contains(x)) {
            throw PreconditionError("vertex out of range");
        }
        return 0.0;
    }
    const EnergyVector v = dipole(x, y);
    return v[x] - v[y];
}

Matrix EnergySpace::gramian() const {
    const auto n = static_cast<Eigen::Index>(dimension());
    return solver_.solve(Matrix(Matrix::Identity(n, n)));
}

EnergyVector solve_dipole(const Network& net, VertexId x, VertexId y, double tol) {
    SolverOptions options;
    options.tolerance = tol;
    return EnergySpace(net, options).dipole(x, y);
}

double resistance_distance(const Network& net, VertexId x, VertexId y) { return EnergySpace(net).resistance(x, y); }

double gramian(const Network& net, VertexId x, VertexId y) {
    if (x == net.base_point() || y == net.base_point()) {
        throw PreconditionError("Gramian is defined on V' = V \\ {o}; base point given");
    }
    const EnergySpace space(net);
    return space.inner(space.based_dipole(x), space.based_dipole(y));
}

FrameSystem build_frame(const Network& net, double tol) {
    SolverOptions options;
    options.tolerance = tol;
    const EnergySpace space(net, options);
    FrameSystem fs{net, {}, {}, {}};
    fs.oriented.reserve(net.num_edges());
    for (const auto& e : net.edges()) {
        // Edges are canonical, so x < y gives the lexicographic orientation.
        fs.oriented.push_back({e.x, e.y});
        fs.dipoles.push_back(space.dipole(e.x, e.y));
        fs.scales.push_back(std::sqrt(e.c));
    }
    return fs;
}

std::vector<double> frame_analyze(const FrameSystem& fs, const EnergyVector& u) {
    require_size(fs.network, u, "frame_analyze");
    std::vector<double> out(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const auto [x, y] = fs.oriented[i];
        out[i] = fs.scales[i] * (u[x] - u[y]);
    }
    return out;
}

EnergyVector frame_synthesize(const FrameSystem& fs, std::span<const double> coeffs) {
    if (coeffs.size() != fs.size()) {
        throw PreconditionError("frame_synthesize: " + std::to_string(coeffs.size()) + " coefficients for " +
                                std::to_string(fs.size()) + " frame vectors");
    }
    EnergyVector out = EnergyVector::zero(fs.network);
    for (std::size_t i = 0; i < fs.size(); ++i) {
        out += (coeffs[i] * fs.scales[i]) * fs.dipoles[i];
    }
    return out;
}

}  // namespace enet
