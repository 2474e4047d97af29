#include "enet/harmonics.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <vector>

#include "enet/error.hpp"
#include "enet/laplacian.hpp"

namespace enet {

HarmonicSplit decompose(const Network& net, const EnergyVector& u, std::span<const VertexId> interior) {
    if (u.size() != net.num_vertices()) {
        throw PreconditionError("decompose: energy vector has wrong dimension");
    }
    std::vector<char> in(net.num_vertices(), 0);
    for (VertexId x : interior) {
        if (!net.contains(x)) {
            throw PreconditionError("decompose: interior vertex out of range");
        }
        in[x] = 1;
    }
    if (std::all_of(in.begin(), in.end(), [](char f) { return f != 0; })) {
        in[net.base_point()] = 0;
    }
    std::vector<VertexId> s;
    std::vector<Eigen::Index> pos(net.num_vertices(), -1);
    for (VertexId x = 0; x < net.num_vertices(); ++x) {
        if (in[x]) {
            pos[x] = static_cast<Eigen::Index>(s.size());
            s.push_back(x);
        }
    }

    HarmonicSplit out;
    out.fin_part = EnergyVector::zero(net);
    if (!s.empty()) {
        const auto k = static_cast<Eigen::Index>(s.size());
        // ⟨δ_x, δ_y⟩_E is the Laplacian entry; ⟨δ_x, u⟩_E = (Δu)(x).
        Matrix gram = Matrix::Zero(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            const VertexId x = s[static_cast<std::size_t>(i)];
            gram(i, i) = net.total_conductance(x);
            for (const auto& nb : net.neighbors(x)) {
                if (pos[nb.vertex] >= 0) {
                    gram(i, pos[nb.vertex]) = -nb.c;
                }
            }
        }
        const Vector lap = apply_laplacian(net, u.values());
        Vector rhs(k);
        for (Eigen::Index i = 0; i < k; ++i) {
            rhs(i) = lap(static_cast<Eigen::Index>(s[static_cast<std::size_t>(i)]));
        }

        Eigen::LLT<Matrix> llt(gram);
        if (llt.info() != Eigen::Success || llt.rcond() < 1e-12) {
            throw NumericalError("decompose: δ-Gram matrix on the interior is ill-conditioned");
        }
        const Vector a = llt.solve(rhs);
        Vector values = Vector::Zero(static_cast<Eigen::Index>(net.num_vertices()));
        for (Eigen::Index i = 0; i < k; ++i) {
            values(static_cast<Eigen::Index>(s[static_cast<std::size_t>(i)])) = a(i);
        }
        out.fin_part = EnergyVector::gauge_fixed(net, std::move(values));
    }
    out.harm_part = u - out.fin_part;
    out.orthogonality_defect = std::abs(energy_inner(net, out.fin_part, out.harm_part));
    out.reconstruction_defect = std::sqrt(energy_norm_squared(net, out.fin_part + out.harm_part - u));
    return out;
}

EnergyVector solve_harmonic_truncation(const Network& net, const std::map<VertexId, double>& boundary) {
    if (boundary.empty() || boundary.size() >= net.num_vertices()) {
        throw PreconditionError("solve_harmonic_truncation: boundary must be nonempty and a proper subset of V");
    }
    std::vector<Eigen::Index> pos(net.num_vertices(), -1);
    std::vector<VertexId> free;
    for (VertexId x = 0; x < net.num_vertices(); ++x) {
        if (boundary.count(x) == 0) {
            pos[x] = static_cast<Eigen::Index>(free.size());
            free.push_back(x);
        }
    }
    for (const auto& [x, v] : boundary) {
        if (!net.contains(x)) {
            throw PreconditionError("solve_harmonic_truncation: boundary vertex out of range");
        }
        if (!std::isfinite(v)) {
            throw PreconditionError("solve_harmonic_truncation: boundary value is not finite");
        }
    }

    // Θ_II h_I = -Θ_IB h_B.
    const auto k = static_cast<Eigen::Index>(free.size());
    std::vector<Eigen::Triplet<double>> t;
    Vector rhs = Vector::Zero(k);
    Vector grounding = Vector::Zero(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const VertexId x = free[static_cast<std::size_t>(i)];
        t.emplace_back(i, i, net.total_conductance(x));
        for (const auto& nb : net.neighbors(x)) {
            if (pos[nb.vertex] >= 0) {
                t.emplace_back(i, pos[nb.vertex], -nb.c);
            } else {
                rhs(i) += nb.c * boundary.at(nb.vertex);
                grounding(i) += nb.c;
            }
        }
    }
    SparseMatrix a(k, k);
    a.setFromTriplets(t.begin(), t.end());
    Vector hi;
    SolverOptions dense;
    dense.kind = SolverKind::Dense;
    if (static_cast<std::size_t>(k) <= dense.dense_threshold) {
        // Θ_II is a Laplacian grounded through the boundary edges, so the
        // subtraction-free elimination applies and keeps steep profiles exact.
        hi = SpdSolver(a, dense, &grounding).solve(rhs);
    } else {
        Eigen::SimplicialLDLT<SparseMatrix> ldlt(a);
        if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= 0.0).any()) {
            throw NumericalError("solve_harmonic_truncation: singular interior system");
        }
        hi = ldlt.solve(rhs);
    }

    Vector h(static_cast<Eigen::Index>(net.num_vertices()));
    for (VertexId x = 0; x < net.num_vertices(); ++x) {
        h(static_cast<Eigen::Index>(x)) = pos[x] >= 0 ? hi(pos[x]) : boundary.at(x);
    }
    return EnergyVector::gauge_fixed(net, std::move(h));
}

double harmonic_energy(const Network& net, const EnergyVector& h) { return energy_norm_squared(net, h); }

double max_interior_laplacian(const Network& net, const EnergyVector& h, std::span<const VertexId> interior) {
    const Vector lap = apply_laplacian(net, h.values());
    double worst = 0.0;
    for (VertexId x : interior) {
        if (!net.contains(x)) {
            throw PreconditionError("max_interior_laplacian: vertex out of range");
        }
        worst = std::max(worst, std::abs(lap(static_cast<Eigen::Index>(x))));
    }
    return worst;
}

}  // namespace enet
